"""Exploration/exploitation evaluation over partially observable grid worlds."""
__version__ = "0.1.0"
