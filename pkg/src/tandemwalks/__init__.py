"""Plane bipolar orientations and tandem walks in the quadrant."""

__version__ = "0.1.0"
