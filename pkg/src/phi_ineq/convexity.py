"""Weight kernels phi on (0, 1) and the generalized-convexity grid checker.

A function g is phi-convex when

    g(t*x + (1-t)*y) <= t*phi(t)*g(x) + (1-t)*phi(1-t)*g(y)

for all x, y in the interval and t in (0, 1).  The built-in kernels are
phi = 1 (classical convexity), phi = t**(s-1) with s in (0, 1]
(s-convexity in the second sense) and phi = 1/(2*sqrt(t)*sqrt(1-t))
(the MT class, which additionally requires g >= 0).  A custom kernel can
be supplied as a positive sample table, interpolated monotone-cubic.

The checker is empirical: it scans a dense grid of (x, y, t) triples and
reports the worst violation with a witness.  It never proves convexity;
it gates theorem hypotheses so that a failed bound can be attributed to a
non-member function instead of a formula defect.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fracint import Interval

KIND_CONSTANT = "constant"
KIND_POWER = "power"
KIND_MT = "mt"
KIND_TABLE = "table"


@dataclass(frozen=True)
class PhiKernel:
    kind: str
    s: float | None = None
    samples: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.kind not in (KIND_CONSTANT, KIND_POWER, KIND_MT, KIND_TABLE):
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if self.kind == KIND_POWER:
            if self.s is None or not 0.0 < float(self.s) <= 1.0:
                raise DomainError(f"power kernel requires s in (0, 1], got {self.s}")
            object.__setattr__(self, "s", float(self.s))
        elif self.s is not None:
            raise DomainError(f"kernel {self.kind!r} takes no exponent s")
        if self.kind == KIND_TABLE:
            if not self.samples or len(self.samples) < 2:
                raise DomainError("table kernel needs at least two samples")
            pts = tuple((float(t), float(v)) for t, v in self.samples)
            ts = [t for t, _ in pts]
            if any(not 0.0 < t < 1.0 for t in ts) or sorted(set(ts)) != ts:
                raise DomainError("table abscissae must be distinct, sorted, strictly inside (0, 1)")
            if any(v <= 0.0 for _, v in pts):
                raise DomainError("table kernel values must be strictly positive")
            object.__setattr__(self, "samples", pts)
        elif self.samples is not None:
            raise DomainError(f"kernel {self.kind!r} takes no sample table")

    @classmethod
    def constant(cls):
        return cls(KIND_CONSTANT)

    @classmethod
    def power(cls, s):
        return cls(KIND_POWER, s=s)

    @classmethod
    def mt(cls):
        return cls(KIND_MT)

    @classmethod
    def table(cls, samples):
        return cls(KIND_TABLE, samples=tuple(samples))

    @property
    def label(self):
        if self.kind == KIND_POWER:
            return f"power({self.s:g})"
        return self.kind


@dataclass(frozen=True)
class ConvexityWitness:
    holds: bool
    worst_violation: float
    witness_point: tuple[float, float, float]


def _pchip_slopes(ts, vs):
    # Fritsch-Carlson monotone slopes
    n = len(ts)
    h = [ts[i + 1] - ts[i] for i in range(n - 1)]
    delta = [(vs[i + 1] - vs[i]) / h[i] for i in range(n - 1)]
    d = [0.0] * n
    d[0] = delta[0]
    d[-1] = delta[-1]
    for i in range(1, n - 1):
        if delta[i - 1] * delta[i] <= 0.0:
            d[i] = 0.0
        else:
            w1 = 2.0 * h[i] + h[i - 1]
            w2 = h[i] + 2.0 * h[i - 1]
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i])
    return h, delta, d


def _pchip_eval(kernel, t):
    pts = kernel.samples
    ts = [p[0] for p in pts]
    vs = [p[1] for p in pts]
    if t <= ts[0]:
        return vs[0]
    if t >= ts[-1]:
        return vs[-1]
    h, _, d = _pchip_slopes(ts, vs)
    i = 0
    while ts[i + 1] < t:
        i += 1
    u = (t - ts[i]) / h[i]
    h00 = (1.0 + 2.0 * u) * (1.0 - u) ** 2
    h10 = u * (1.0 - u) ** 2
    h01 = u * u * (3.0 - 2.0 * u)
    h11 = u * u * (u - 1.0)
    return h00 * vs[i] + h10 * h[i] * d[i] + h01 * vs[i + 1] + h11 * h[i] * d[i + 1]


def phi_eval(kernel, t):
    """Evaluate the weight kernel at t strictly inside (0, 1)."""
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"phi is defined on (0, 1) only, got t={t}")
    if kernel.kind == KIND_CONSTANT:
        return 1.0
    if kernel.kind == KIND_POWER:
        return t ** (kernel.s - 1.0)
    if kernel.kind == KIND_MT:
        return 0.5 / (math.sqrt(t) * math.sqrt(1.0 - t))
    return _pchip_eval(kernel, t)


def _eval_on(g, pts):
    """Evaluate g over a float array, vectorized when g supports it."""
    try:
        out = np.asarray(g(pts), dtype=float)
        if out.shape == pts.shape:
            return out
    except Exception:
        pass
    flat = pts.ravel()
    out = np.empty(flat.shape, dtype=float)
    for i, v in enumerate(flat):
        out[i] = float(g(float(v)))
    return out.reshape(pts.shape)


def check_phi_convex(g, kernel, interval, grid_n=33, tol=1e-9):
    """Scan the phi-convexity inequality for g over interval.

    x and y run over a uniform ``grid_n``-point grid on [a, b]; t runs
    over ``grid_n - 1`` half-step points (j + 1/2)/(grid_n - 1), which
    stay strictly inside (0, 1) and are symmetric under t -> 1-t.  The
    witness is the lexicographically smallest (x, y, t) attaining the
    worst violation.  Violations within ``tol`` count as noise and are
    reported as <= 0.
    """
    if not isinstance(interval, Interval):
        interval = Interval(*interval)
    if grid_n < 3:
        raise DomainError(f"grid_n must be at least 3, got {grid_n}")
    a, b = interval.a, interval.b
    xs = np.linspace(a, b, grid_n)
    m = grid_n - 1
    ts = (np.arange(m) + 0.5) / m
    gx = _eval_on(g, xs)
    if not np.all(np.isfinite(gx)):
        raise DomainError("function not finite on the sample grid")
    if kernel.kind == KIND_MT:
        if gx.min() < 0.0:
            raise DomainError(
                "MT kernel requires a nonnegative function; "
                f"sampled minimum {gx.min():g}"
            )
    elif gx.min() < 0.0:
        warnings.warn(
            "function takes negative values; phi-convexity is formally "
            "defined for nonnegative functions",
            stacklevel=2,
        )
    tphi = np.array([t * phi_eval(kernel, t) for t in ts])
    # mixture points P[i, j, k] = t_k*x_i + (1-t_k)*y_j
    P = ts[None, None, :] * xs[:, None, None] + (1.0 - ts[None, None, :]) * xs[None, :, None]
    gp = _eval_on(g, P)
    rhs = tphi[None, None, :] * gx[:, None, None] + tphi[::-1][None, None, :] * gx[None, :, None]
    viol = gp - rhs
    flat_idx = int(np.argmax(viol))  # first occurrence = lexicographically smallest (x, y, t)
    i, j, k = np.unravel_index(flat_idx, viol.shape)
    worst = float(viol[i, j, k])
    witness = (float(xs[i]), float(xs[j]), float(ts[k]))
    if worst > tol:
        return ConvexityWitness(False, worst, witness)
    return ConvexityWitness(True, min(worst, 0.0), witness)
