"""
Semiring Lab - classification of finite commutative semirings

Decides, for a finite semiring given by tables or by a catalog family,
which content-ideal properties it has: subtractivity, the Dedekind-Mertens
lemma, (weak) Gaussian behaviour, the content-semialgebra axioms for S[X],
power-series analogues and zero-divisor structure.

Main components:
- algebra: semiring tables, ideal lattices, polynomials, sweeps and checks
- models: Pydantic schemas for inputs, verdicts and reports
- workflow: LangGraph classification nodes and the golden example suite
- utils: configuration, file I/O, tracing, validation and error handling
"""

__version__ = "1.0.0"
__author__ = "Semiring Lab"
