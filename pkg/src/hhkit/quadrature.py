"""Composite trapezoid sums with a-priori error bounds, and a guaranteed-error integrator.

Two error-bound variants are provided for the composite trapezoid rule on a
partition D = {x_0 < ... < x_n}, both of the shape

    |integral - trapezoid_sum|  <=  constant(s, p) * sum_k (dx_k^2 / 2) * (|f'(x_k)| + |f'(x_{k+1})|)

valid when |f'| belongs to the s-convex class certified by
``convexity.certify`` with parameters (s, 1, 1, first).  The reference
integrator is an adaptive-Simpson panel refiner, independent of the trapezoid
code path, and doubles as the ground-truth oracle elsewhere in the package.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import convexity
from .expr import FunctionSpec, Interval

BOUND_VARIANTS = ("P4", "P5")

N_CAP = 2**24


class NonConvergenceError(RuntimeError):
    """Numeric refinement failed to reach the requested tolerance."""


@dataclass(frozen=True, eq=False)
class Partition:
    """Strictly increasing float points, at least one panel."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a partition needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("partition points must be finite")
        if not np.all(np.diff(pts) > 0.0):
            raise ValueError("partition points must be strictly increasing")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, interval: Interval, n: int) -> "Partition":
        if n < 1:
            raise ValueError("n must be at least 1")
        return cls(np.linspace(interval.a, interval.b, n + 1))

    @property
    def n(self) -> int:
        return self.points.size - 1

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    bound_p4: float
    bound_p5: float
    n: int
    certified_tolerance: float


def trapezoid_sum(f, partition: Partition) -> float:
    """Composite trapezoid value of f over the partition."""
    pts = partition.points
    vals = np.asarray(f(pts), dtype=float)
    return float(np.sum(np.diff(pts) * (vals[:-1] + vals[1:]) / 2.0))


def _p4_base(s: float) -> float:
    return (s * 2.0**s + 1.0) / (2.0**s * (s + 1.0) * (s + 2.0))


def _p5_base(s: float) -> float:
    return (s * s + 3.0 * s + 4.0) / ((s + 1.0) * (s + 2.0) * (s + 3.0))


def bound_constant(variant: str, s: float, p: float) -> float:
    """Partition-independent constant in front of the panel sum."""
    variant = str(variant).upper()
    if variant not in BOUND_VARIANTS:
        raise ValueError(f"variant must be one of {BOUND_VARIANTS}, got {variant!r}")
    if not (0.0 < s <= 1.0):
        raise ValueError(f"s must lie in (0, 1], got {s}")
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")
    q = p / (p - 1.0)
    if variant == "P4":
        return (1.0 / 2.0 ** (1.0 / p)) * _p4_base(s) ** (1.0 / q)
    return (2.0 / 3.0) ** (1.0 / p) * _p5_base(s) ** (1.0 / q)


def _panel_sum(f, pts: np.ndarray) -> float:
    d = np.abs(np.asarray(f.derivative(pts), dtype=float))
    return float(np.sum(np.diff(pts) ** 2 / 2.0 * (d[:-1] + d[1:])))


def trapezoid_error_bound(
    variant: str, f, partition: Partition, s: float = 1.0, p: float = 2.0
) -> float:
    """A-priori bound on |integral - trapezoid_sum| for the given variant."""
    return bound_constant(variant, s, p) * _panel_sum(f, partition.points)


# ---------------------------------------------------------------------------
# adaptive reference integrator

_MIN_DEPTH = 3  # guard against symmetric cancellation fooling the first estimate


def _simpson(a: float, fa: float, m: float, fm: float, b: float, fb: float) -> float:
    return (b - a) * (fa + 4.0 * fm + fb) / 6.0


def _adaptive_simpson(fn, a, fa, m, fm, b, fb, whole, tol, depth, max_depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = fn(lm)
    frm = fn(rm)
    left = _simpson(a, fa, lm, flm, m, fm)
    right = _simpson(m, fm, rm, frm, b, fb)
    err = left + right - whole
    if depth >= _MIN_DEPTH and abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    if depth >= max_depth:
        raise NonConvergenceError(
            f"adaptive refinement exceeded depth {max_depth} on [{a}, {b}]"
        )
    half = tol / 2.0
    return _adaptive_simpson(
        fn, a, fa, lm, flm, m, fm, left, half, depth + 1, max_depth
    ) + _adaptive_simpson(fn, m, fm, rm, frm, b, fb, right, half, depth + 1, max_depth)


def reference_integrate(
    f: Union[FunctionSpec, Callable[[float], float]],
    interval: Interval,
    tol: float = 1e-10,
    max_depth: int = 60,
) -> float:
    """Adaptive panel-refinement estimate of the integral of f over the interval.

    Error control targets tol; raises NonConvergenceError if refinement stalls.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    fn = f  # FunctionSpec is callable; plain callables work unchanged
    a, b = interval.a, interval.b
    fa, fb = float(fn(a)), float(fn(b))
    m = 0.5 * (a + b)
    fm = float(fn(m))
    whole = _simpson(a, fa, m, fm, b, fb)
    return float(
        _adaptive_simpson(fn, a, fa, m, fm, b, fb, whole, tol, 0, max_depth)
    )


# ---------------------------------------------------------------------------
# guaranteed-error integration


def _uniform_bound(f, interval: Interval, n: int, s: float, p: float) -> tuple[float, float]:
    pts = np.linspace(interval.a, interval.b, n + 1)
    panel = _panel_sum(f, pts)
    return bound_constant("P4", s, p) * panel, bound_constant("P5", s, p) * panel


def integrate_with_guarantee(
    f: FunctionSpec,
    interval: Interval,
    tol: float,
    s: float = 1.0,
    p: float = 2.0,
    *,
    allow_uncertified: bool = False,
    certify_grid_n: int = 30,
    n_cap: int = N_CAP,
) -> QuadratureResult:
    """Uniform trapezoid integration with min(bound_p4, bound_p5) <= tol.

    Doubles the panel count until a bound certifies tol, then bisects down to
    the smallest such n.  The |f'| hypothesis behind the bounds is checked by
    convexity.certify with parameters (s, 1, 1, first); a falsified hypothesis
    raises unless allow_uncertified is set, in which case a warning is issued
    and the bounds are reported as computed.
    """
    if not tol > 0.0:
        raise ValueError("tol must be positive")

    hyp = lambda x: np.abs(f.derivative(x))  # noqa: E731
    cert = convexity.certify(
        hyp, interval, convexity.ConvexityParams(s, 1.0, 1.0, "first"), certify_grid_n
    )
    if cert.falsified:
        msg = (
            f"|({f.text})'| falsified for the s={s} class on "
            f"[{interval.a}, {interval.b}]; error bounds are not guaranteed"
        )
        if not allow_uncertified:
            raise ValueError(msg + " (pass allow_uncertified=True to proceed)")
        warnings.warn(msg)

    n = 1
    while True:
        b4, b5 = _uniform_bound(f, interval, n, s, p)
        if min(b4, b5) <= tol:
            break
        if n >= n_cap:
            raise NonConvergenceError(
                f"bound still {min(b4, b5):.3e} > tol {tol:.3e} at n = {n}"
            )
        n *= 2

    lo, hi = n // 2, n  # bound(lo) failed (or lo == 0), bound(hi) passed
    while hi - lo > 1:
        mid = (lo + hi) // 2
        b4, b5 = _uniform_bound(f, interval, mid, s, p)
        if min(b4, b5) <= tol:
            hi = mid
        else:
            lo = mid

    part = Partition.uniform(interval, hi)
    b4, b5 = _uniform_bound(f, interval, hi, s, p)
    return QuadratureResult(
        value=trapezoid_sum(f, part),
        bound_p4=b4,
        bound_p5=b5,
        n=hi,
        certified_tolerance=tol,
    )
