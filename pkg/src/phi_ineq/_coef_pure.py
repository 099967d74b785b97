"""Pure-Python fallback for the coefficient-family integrals.

Builds an explicit integrand closure per family and hands it to the
generic adaptive engine with the layout (kink splits, declared endpoint
exponents) computed by :mod:`phi_ineq.coefquad`.
"""

from __future__ import annotations

import math

from .convexity import KIND_CONSTANT, KIND_MT, KIND_POWER, phi_eval
from .quadrature import QuadratureSpec, integrate


def _phi_factory(kernel):
    if kernel is None or kernel.kind == KIND_CONSTANT:
        return lambda t: 1.0
    if kernel.kind == KIND_POWER:
        s = kernel.s
        return lambda t: t ** (s - 1.0)
    if kernel.kind == KIND_MT:
        return lambda t: 0.5 / (math.sqrt(t) * math.sqrt(1.0 - t))
    return lambda t: phi_eval(kernel, t)


def _integrand(family, alpha, lam, kernel, p):
    phi = _phi_factory(kernel)
    if family == "A1":
        return lambda t: abs(t * (lam - t ** alpha))
    if family == "A2":
        return lambda t: abs(t * (lam - t ** alpha)) * t * phi(t)
    if family == "A3":
        return lambda t: abs(t * (lam - t ** alpha)) * (1.0 - t) * phi(1.0 - t)
    if family == "B":
        return lambda t: abs(t * (lam - t ** alpha)) ** p
    return lambda t: t * phi(t)  # M


def integrate_family(family, alpha, lam, kernel, p, lo, hi,
                     splits, left_exponent, right_exponent,
                     abs_tol, rel_tol, max_subdivisions):
    spec = QuadratureSpec(
        abs_tol=abs_tol,
        rel_tol=rel_tol,
        max_subdivisions=max_subdivisions,
        split_points=splits,
        left_exponent=left_exponent,
        right_exponent=right_exponent,
    )
    return integrate(_integrand(family, alpha, lam, kernel, p), lo, hi, spec).value
