"""Graph core module"""
