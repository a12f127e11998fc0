"""Exact computer algebra for the rational and trigonometric Calogero-Moser
operators: Dunkl and Polychronakos operators, quasi-invariants,
Baker-Akhiezer functions, m-Hermite polynomials and their higher and
two-species analogues."""
from .cherednik import CouplingParams
from .core import MultiPoly
from .errors import CMHermError
from .hermite1d import mhermite
from .hermitemulti import hermitise, jack
from .reports import Report

__version__ = "0.1.0"

__all__ = ["CMHermError", "CouplingParams", "MultiPoly", "Report", "hermitise", "jack", "mhermite"]
