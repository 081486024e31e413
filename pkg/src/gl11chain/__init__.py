"""Exact-arithmetic toolkit for gl(1|1) supersymmetric XXX spin chains.

Everything is computed over the rationals with no rounding: monodromy
pencils on tensor products of evaluation modules, the Bethe ansatz
(divisors, Bethe vectors, eigenvalues, completeness), the coefficient
algebra on weight subspaces, the contravariant form and norms, and the
higher transfer matrices with their Berezinian and difference-operator
identities.
"""

from .exactnum import Poly, RatFun, Scalar
from .monodromy import ModuleSpec, make_spec

__all__ = ["Poly", "RatFun", "Scalar", "ModuleSpec", "make_spec"]
