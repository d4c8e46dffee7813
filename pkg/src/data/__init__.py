"""
Run configuration and artifact I/O for trdiff.

Contains modules for:
- schemas.py: Pydantic run-configuration models and problem presets
- config_parser.py: Sectioned key = value parsing and the effective-config echo
- exporters.py: Probe CSV, VTK volume, table and report writers
- loaders.py: Readers for the same artifacts
"""
