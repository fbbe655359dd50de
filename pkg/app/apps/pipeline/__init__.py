"""Pipeline module"""
