"""Costs of distinguishing and edge-distinguishing for graphs and Cartesian products."""

__version__ = "0.1.0"
