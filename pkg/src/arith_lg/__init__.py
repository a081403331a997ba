"""Finite-field shadows of Landau-Ginzburg models.

Exponential sums and Frobenius eigenvalue data for deformed Laurent
polynomials over F_q, Newton polytope invariants, and exact symbolic
verification of flat-connection structures.
"""

__version__ = "0.1.0"
