"""Hyperbolic and Lorentzian polynomial toolkit (Python front end).

Exact results come back as fractions.Fraction; polynomials are dicts
mapping exponent tuples to float coefficients.
"""

from fractions import Fraction

from . import _core
from ._core import InfeasibleError, NumericalError

__all__ = [
    "Fraction",
    "InfeasibleError",
    "NumericalError",
    "capacity",
    "cone_membership",
    "eigen_signature",
    "generating_polynomial",
    "gnk",
    "gnk_nested",
    "gnk_per",
    "hessian",
    "is_hyperbolic",
    "lorentzian_over_hyperbolicity_cone",
    "mixed_discriminant",
    "nls_positivity",
    "nuij_approx",
    "permanent",
]


def _exact_rows(rows):
    return [[str(Fraction(v)) for v in row] for row in rows]


def _terms(poly):
    if not poly:
        raise ValueError("polynomial needs at least one term")
    nvars = len(next(iter(poly)))
    return nvars, [(list(e), float(c)) for e, c in poly.items()]


def _to_dict(terms):
    return {tuple(e): c for e, c in terms}


def permanent(rows, method="ryser", exact=True):
    """per(A). Exact mode accepts ints, Fractions or "p/q" strings."""
    if exact:
        return Fraction(_core.permanent_exact(_exact_rows(rows), method))
    if method != "ryser":
        raise ValueError("float mode only supports the ryser method")
    return _core.permanent_float([[float(v) for v in row] for row in rows])


def gnk(n, k):
    return [[Fraction(v) for v in row] for row in _core.gnk(n, k)]


def gnk_per(n, k):
    return Fraction(_core.gnk_per(n, k))


def nls_positivity(n, k):
    return _core.nls_positivity(n, k)


def gnk_nested(n):
    out = _core.gnk_nested(n)
    out["values"] = [Fraction(v) for v in out["values"]]
    return out


def mixed_discriminant(matrices, multiplicities=None):
    return Fraction(_core.mixed_discriminant_exact([_exact_rows(m) for m in matrices], multiplicities))


def eigen_signature(rows, tol=None):
    return _core.eigen_signature([[float(v) for v in row] for row in rows], tol)


def hessian(poly, x):
    nvars, terms = _terms(poly)
    return _core.hessian(nvars, terms, list(map(float, x)))


def is_hyperbolic(poly, direction, samples=256, seed=0):
    nvars, terms = _terms(poly)
    return _core.is_hyperbolic(nvars, terms, list(map(float, direction)), samples, seed)


def cone_membership(poly, direction, x, closed=False):
    nvars, terms = _terms(poly)
    return _core.cone_membership(nvars, terms, list(map(float, direction)), list(map(float, x)), closed)


def nuij_approx(poly, direction, s):
    nvars, terms = _terms(poly)
    return _to_dict(_core.nuij_approx(nvars, terms, list(map(float, direction)), float(s)))


def lorentzian_over_hyperbolicity_cone(poly, direction, chains=64, seed=0):
    nvars, terms = _terms(poly)
    return _core.lorentzian_over_hyperbolicity_cone(nvars, terms, list(map(float, direction)), chains, seed)


def capacity(poly, alpha, orthant=False, starts=16, max_iter=500, tol=1e-10, seed=0):
    nvars, terms = _terms(poly)
    return _core.capacity(nvars, terms, list(map(float, alpha)), orthant, starts, max_iter, tol, seed)


def generating_polynomial(rows):
    return _to_dict(_core.generating_polynomial([[float(v) for v in row] for row in rows]))
