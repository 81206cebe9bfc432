"""Computational toolkit for completions of finite and countable T0 spaces."""
from __future__ import annotations

from .finspace import FinitePoset, FiniteTopology

__all__ = ["FinitePoset", "FiniteTopology"]
__version__ = "0.1.0"
