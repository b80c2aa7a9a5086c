"""Exact computation of differential Galois groups of first order linear
systems over the rational function field, at small sizes.

Subpackages follow the pipeline order: constant fields and rational
functions, truncated series solutions, polynomial relations among the
entries of a fundamental matrix, algebraic group utilities, the
hyperexponential/character step, the a-priori degree bounds, and the
driver that glues them together.
"""

__version__ = "0.1.0"
