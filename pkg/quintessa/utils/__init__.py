"""
Utility functions shared across quintessa.
"""
