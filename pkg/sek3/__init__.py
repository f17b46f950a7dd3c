"""Lie-group toolkit for SE_K(3): one rotation with K translation-like vectors."""
from sek3.lie.group import GroupElement, Side, TangentVector

__version__ = "0.1.0"
