"""
tlfree Utilities Module
Contains helper functions and common utilities.
"""

__version__ = '0.1.0'
