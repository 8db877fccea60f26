"""Exact-arithmetic deformation theory engine.

Everything here computes with exact coefficients: rationals, prime fields,
and Artinian local rings presented by monomial bases.  The package builds
three models of a deformation problem (differential graded Lie algebras,
cosimplicial groups, quasi-comonoids), computes Maurer-Cartan loci, gauge
orbits, tangent cohomology and obstruction classes, and cross-checks the
models against brute-force oracles on small concrete moduli problems.
"""

__version__ = "0.1.0"
