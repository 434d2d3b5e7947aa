"""Approximate CVP through an approximate SVP oracle, in exact arithmetic."""

__version__ = "0.1.0"
