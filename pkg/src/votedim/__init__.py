"""Dimension, codimension and weightedness of simple games."""

__version__ = "0.1.0"
