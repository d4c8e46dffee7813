"""
Source code package for trdiff.

This package contains:
- grid/: Structured grid, boundary ghost cells, field storage
- materials/: Coefficient laws and the built-in material models
- reconstruction/: GENO normal and tangential face reconstruction
- operators/: Face fluxes, exchange sources, semi-discrete operator
- time_integration/: RK2, dual time stepping, LU-SGS, Jacobian, time loop
- benchmarks/: Accuracy, model2d, ICF and custom runs with their reports
- data/: Run configuration and artifact I/O
- pipeline/: End-to-end orchestration
- utils/: Shared utilities
"""

__version__ = "1.0.0"
