"""Exact toolkit for uncertainty relations and noncontextual predictability bounds."""

__version__ = "0.1.0"
