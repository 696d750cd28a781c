"""Exact triangulability analysis for generalized multiview varieties."""

__version__ = "0.1.0"
