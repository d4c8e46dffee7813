"""
Utilities package for trdiff.

Contains helper functions for:
- File operations (file_utils.py)
- Logging (logger.py)
- Exception hierarchy (errors.py)
"""
