"""Exact positivity checks for representations into PSL2 and SL_d over a
non-Archimedean real closed field model."""

__version__ = "0.1.0"
