"""Framing lattices of triangulated flow polytopes.

Build the lattice of maximal coherent route collections of a framed
directed acyclic flow graph, together with its joins and meets, cover
labels, irreducible elements, core label order, and contraction-move
quotients, plus grid models and classical lattices for cross-checking.
"""

__version__ = "0.1.0"
