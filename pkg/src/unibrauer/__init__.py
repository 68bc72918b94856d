"""Unipotent Brauer character counts for finite reductive groups in bad characteristic."""

__version__ = "0.1.0"
