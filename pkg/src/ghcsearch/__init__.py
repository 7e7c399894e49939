"""Cylinder-homomorphism criteria for Fano complete intersections."""
