"""Adaptive one-dimensional quadrature with kink splitting and algebraic
endpoint singularities.

The engine is a classic globally-adaptive Gauss-Kronrod scheme: each panel
is integrated with the 15-point Kronrod rule, the embedded 7-point Gauss
rule supplies the error estimate, and the panel with the largest error is
bisected until the requested tolerance is met.

Two features matter for the integrands in this package:

* ``split_points`` let the caller place panel boundaries exactly at known
  derivative kinks (the integrand ``|t(lam - t**alpha)|`` has one at
  ``lam**(1/alpha)``), so the adaptive loop never has to discover
  non-smoothness on its own.

* declared algebraic endpoint behaviour ``(t - lo)**left_exponent`` (and
  symmetrically on the right) with exponent in (-1, 0) is removed by the
  power substitution ``t = lo + u**kappa`` with ``kappa = 1/(1+exponent)``,
  which makes the transformed integrand bounded. Exponents >= 0 are
  regular and need no transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonFiniteSample, ToleranceNotMet

# 15-point Kronrod abscissae (positive half; XGK[7] = 0 is the centre) and
# weights, with the embedded 7-point Gauss weights.  Values are the standard
# double-precision tables; test_quadrature.py checks polynomial exactness.
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances, subdivision budget and integrand structure hints."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    split_points: tuple[float, ...] = ()
    left_exponent: float = 0.0
    right_exponent: float = 0.0

    def __post_init__(self):
        if not (self.abs_tol > 0.0) or not (self.rel_tol > 0.0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be a positive integer")
        if self.left_exponent <= -1.0 or self.right_exponent <= -1.0:
            raise DomainError("endpoint exponents must exceed -1 (integrability)")
        object.__setattr__(self, "split_points", tuple(float(p) for p in self.split_points))


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    subdivisions_used: int


@dataclass(frozen=True)
class Segment:
    """One initial panel in transformed coordinates.

    mode 0: t = u                     (plain)
    mode 1: t = anchor + u**kappa     (left-singular end)
    mode 2: t = anchor - u**kappa     (right-singular end)
    """

    u_lo: float
    u_hi: float
    mode: int = 0
    kappa: float = 1.0
    anchor: float = 0.0


def build_segments(lo, hi, split_points, left_exponent, right_exponent):
    """Partition [lo, hi] at the split points and attach the power
    substitution to singular ends.  Shared by the Python engine and the
    compiled coefficient backend so both integrate the identical layout."""
    splits = sorted(set(float(p) for p in split_points))
    for p in splits:
        if not (lo < p < hi):
            raise DomainError(f"split point {p} not strictly inside ({lo}, {hi})")
    left_sing = left_exponent < 0.0
    right_sing = right_exponent < 0.0
    bounds = [lo] + splits + [hi]
    if left_sing and right_sing and len(bounds) == 2:
        bounds.insert(1, 0.5 * (lo + hi))
    segments = []
    last = len(bounds) - 2
    for i in range(len(bounds) - 1):
        p0, p1 = bounds[i], bounds[i + 1]
        if i == 0 and left_sing:
            kappa = 1.0 / (1.0 + left_exponent)
            segments.append(Segment(0.0, (p1 - lo) ** (1.0 / kappa), 1, kappa, lo))
        elif i == last and right_sing:
            kappa = 1.0 / (1.0 + right_exponent)
            segments.append(Segment(0.0, (hi - p0) ** (1.0 / kappa), 2, kappa, hi))
        else:
            segments.append(Segment(p0, p1))
    return segments


def _segment_integrand(f, seg):
    if seg.mode == 0:
        return f
    kappa, anchor = seg.kappa, seg.anchor
    if seg.mode == 1:
        def g(u):
            return f(anchor + u ** kappa) * kappa * u ** (kappa - 1.0)
    else:
        def g(u):
            return f(anchor - u ** kappa) * kappa * u ** (kappa - 1.0)
    return g


def _gk15(g, a, b):
    """Kronrod / Gauss pair on one panel with a QUADPACK-style error
    estimate.  Returns (value, err)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = g(c)
    if not math.isfinite(fc):
        raise NonFiniteSample(f"integrand returned {fc!r} at {c!r}")
    resk = WGK[7] * fc
    resg = WG[3] * fc
    resabs = WGK[7] * abs(fc)
    values = [fc]
    offsets = [0.0]
    for j in range(7):
        dx = h * XGK[j]
        f1 = g(c - dx)
        f2 = g(c + dx)
        if not (math.isfinite(f1) and math.isfinite(f2)):
            bad = c - dx if not math.isfinite(f1) else c + dx
            raise NonFiniteSample(f"integrand returned a non-finite value at {bad!r}")
        resk += WGK[j] * (f1 + f2)
        resabs += WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += WG[j // 2] * (f1 + f2)
        values.extend((f1, f2))
    reskh = 0.5 * resk
    resasc = WGK[7] * abs(fc - reskh)
    k = 1
    for j in range(7):
        resasc += WGK[j] * (abs(values[k] - reskh) + abs(values[k + 1] - reskh))
        k += 2
    value = resk * h
    resabs *= abs(h)
    resasc *= abs(h)
    err = abs((resk - resg) * h)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    err = max(err, 50.0 * _EPS * resabs)
    return value, err


def integrate(f, lo, hi, spec=None):
    """Integrate ``f`` over ``[lo, hi]`` under the given spec.

    Raises ToleranceNotMet when the subdivision budget runs out and
    NonFiniteSample when ``f`` produces nan/inf at a sample point.
    """
    if spec is None:
        spec = QuadratureSpec()
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise DomainError(f"invalid integration interval [{lo}, {hi}]")

    segments = build_segments(lo, hi, spec.split_points, spec.left_exponent, spec.right_exponent)
    # panels: list of (err, seq, g, a, b, value); worst panel by err, ties by seq
    panels = []
    seq = 0
    for seg in segments:
        g = _segment_integrand(f, seg)
        value, err = _gk15(g, seg.u_lo, seg.u_hi)
        panels.append([err, seq, g, seg.u_lo, seg.u_hi, value])
        seq += 1

    n_bisect = 0
    while True:
        total = math.fsum(p[5] for p in panels)
        total_err = math.fsum(p[0] for p in panels)
        if total_err <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            return QuadResult(total, total_err, n_bisect)
        if n_bisect >= spec.max_subdivisions:
            raise ToleranceNotMet(
                f"needed more than {spec.max_subdivisions} subdivisions "
                f"(error estimate {total_err:.3e}, value {total:.6e})",
                value=total,
                err_estimate=total_err,
            )
        worst = max(panels, key=lambda p: (p[0], -p[1]))
        panels.remove(worst)
        _, _, g, a, b, _ = worst
        mid = 0.5 * (a + b)
        v1, e1 = _gk15(g, a, mid)
        v2, e2 = _gk15(g, mid, b)
        panels.append([e1, seq, g, a, mid, v1])
        seq += 1
        panels.append([e2, seq, g, mid, b, v2])
        seq += 1
        n_bisect += 1


def integrate_kinked_abs(base, kink, spec=None):
    """Integrate ``|base(t)|`` over [0, 1], splitting at the sign-change
    point ``kink``.  A kink at (or clamped to) an endpoint degenerates to
    an unsplit integral."""
    if spec is None:
        spec = QuadratureSpec()
    kink = float(kink)
    if not 0.0 <= kink <= 1.0:
        raise DomainError(f"kink {kink} outside [0, 1]")
    splits = set(spec.split_points)
    if 0.0 < kink < 1.0:
        splits.add(kink)
    eff = QuadratureSpec(
        abs_tol=spec.abs_tol,
        rel_tol=spec.rel_tol,
        max_subdivisions=spec.max_subdivisions,
        split_points=tuple(sorted(splits)),
        left_exponent=spec.left_exponent,
        right_exponent=spec.right_exponent,
    )
    return integrate(lambda t: abs(base(t)), 0.0, 1.0, eff)
