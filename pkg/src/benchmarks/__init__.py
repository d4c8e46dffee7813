"""
Benchmarks for trdiff.

- mms.py / accuracy.py: manufactured-solution convergence test
- model2d.py: two-material bound-preservation and large-step test
- icf.py: three-region ICF-like capsule
- custom.py: user-defined problem
- simulation.py: single-case runner shared by all of them
"""
