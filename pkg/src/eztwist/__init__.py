"""Eilenberg-Zilber maps, their homotopies and twisting cochains over the integers."""

__version__ = "0.1.0"
