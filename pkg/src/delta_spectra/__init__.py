"""Exactly solvable quantum models perturbed by attractive delta potentials."""

__version__ = "0.1.0"
