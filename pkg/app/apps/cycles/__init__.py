"""Cycle engine module"""
