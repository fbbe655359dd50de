"""Expander tools module"""
