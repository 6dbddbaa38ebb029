"""Exact F_p computations for THH of the Ravenel spectra and its C_p-Tate construction."""

__version__ = "0.1.0"
