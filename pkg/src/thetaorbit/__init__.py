"""Theta lifts of nilpotent orbits for stable-range dual pairs."""

__version__ = "0.1.0"
