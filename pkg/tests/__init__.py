"""
tlfree test suite.
"""
