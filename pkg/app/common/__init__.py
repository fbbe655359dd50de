"""Common utilities"""