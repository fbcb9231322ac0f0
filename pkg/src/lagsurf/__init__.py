"""Cyclic and ruled Lagrangian surfaces in C^2: construction, residual
checks and profile-curve integration."""

__version__ = "0.1.0"
