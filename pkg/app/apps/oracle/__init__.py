"""Oracle module"""
