"""Exact computations with twisted polynomial differential forms on projective
space and hypersurfaces: restriction kernels, extension of foliations and
distributions, and pointwise Morse data."""

__version__ = "0.1.0"
