"""Stationary amplitude-phase branches and their Fourier-Bessel reconstruction."""
__version__ = "0.1.0"
