"""Gadget engine module"""
