"""Curve isotopy codes, exact polygon analysis and ETR emission."""

__version__ = "0.1.0"
