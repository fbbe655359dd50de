"""
Test package for FastAPI migration project
"""

