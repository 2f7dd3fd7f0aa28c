"""Spin-boson qubit encodings and Trotterized cavity-lattice dynamics."""

__version__ = "0.1.0"
