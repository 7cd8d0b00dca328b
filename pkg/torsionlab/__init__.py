"""
TorsionLab - Spectral Invariants Workbench
"""

__version__ = "1.0.0"
__author__ = "TorsionLab Team"
