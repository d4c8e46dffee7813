"""
Pipeline package for trdiff.

- run.py: configuration -> benchmark/custom run -> artifacts, with CLI exit codes
"""
