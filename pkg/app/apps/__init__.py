"""Apps module"""