"""Nonabelian H^1 and H^2 of finite Gamma-groups by exhaustive enumeration."""

__version__ = "0.1.0"
