"""Middleware"""