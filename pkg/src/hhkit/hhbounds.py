"""Midpoint/endpoint-average bounds on the trapezoid-vs-integral gap.

For f on [a, b] the object of interest is the gap

    (f(a) + f(b)) / 2  -  (1 / (b - a)) * integral of f over [a, b],

nonnegative for convex f.  Six named bounds T1 .. T6 dominate |gap| under a
convexity-class hypothesis on |f'| (T1, T4) or |f'|^q (the Holder variants
T2, T3, T5, T6), always in the first combination sense.  Each bound is a
closed form in |f'(a)|, |f'(b/m)|, the kernel moments, and the conjugate
exponent pair.  ``verify_theorem`` evaluates bound and gap side by side and
also reports whether the hypothesis survives a certification sweep.

The gap itself has two exact integral representations (one over a single
kernel weight, one over the pair kernel); ``lemma_identity_residuals``
recomputes both numerically so they can be checked against the direct value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from . import convexity, kernels
from .convexity import ConvexityParams
from .expr import DerivedFunction, FunctionSpec, Interval
from .kernels import HolderExponents
from .quadrature import reference_integrate

THEOREM_IDS = ("T1", "T2", "T3", "T4", "T5", "T6")

_PLAIN_IDS = ("T1", "T4")  # hypothesis on |f'| itself, no exponent p involved

_GAP_TOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    lhs_gap: float
    rhs_bound: float
    margin: float  # rhs_bound - lhs_gap
    holds: bool
    hypothesis_certified: bool
    inputs: dict


@lru_cache(maxsize=256)
def _signed_gap(f: FunctionSpec, interval: Interval) -> float:
    integral = reference_integrate(f, interval, tol=_GAP_TOL)
    endpoint_avg = (f(interval.a) + f(interval.b)) / 2.0
    return endpoint_avg - integral / interval.width


def hh_gap(f: FunctionSpec, interval: Interval) -> float:
    """|endpoint average minus integral average| of f over the interval."""
    return abs(_signed_gap(f, interval))


def classical_hh_check(
    f: FunctionSpec, interval: Interval, tol: float = 1e-9
) -> tuple[bool, bool]:
    """Check the two halves of the classical midpoint/average/endpoint chain.

    Returns (midpoint_ok, endpoint_ok): midpoint value below the integral
    average, and integral average below the endpoint average, each up to tol.
    """
    integral_avg = reference_integrate(f, interval, tol=_GAP_TOL) / interval.width
    midpoint = f((interval.a + interval.b) / 2.0)
    endpoint_avg = (f(interval.a) + f(interval.b)) / 2.0
    return midpoint <= integral_avg + tol, integral_avg <= endpoint_avg + tol


def _require_hp(theorem_id: str, hp: Optional[HolderExponents]) -> HolderExponents:
    if hp is None:
        raise ValueError(f"{theorem_id} needs a HolderExponents pair")
    return hp


def _endpoint_derivatives(
    f: FunctionSpec, interval: Interval, params: ConvexityParams
) -> tuple[float, float]:
    if params.m == 0.0:
        raise ValueError("the bound formulas need m > 0 (they evaluate f' at b/m)")
    d1 = abs(f.derivative(interval.a))
    d2 = abs(f.derivative(interval.b / params.m))
    return d1, d2


def theorem_bound(
    theorem_id: str,
    f: FunctionSpec,
    interval: Interval,
    params: ConvexityParams,
    hp: Optional[HolderExponents] = None,
) -> float:
    """Closed-form value of the named bound; hp is required for T2/T3/T5/T6."""
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"theorem_id must be one of {THEOREM_IDS}, got {theorem_id!r}")
    d1, d2 = _endpoint_derivatives(f, interval, params)
    w = interval.width
    c = params.alpha_s
    m = params.m
    kc = kernels.kernel_constants(c, m)

    if theorem_id == "T1":
        return w / 2.0 * (kc.v1 * d1 + kc.v2 * d2)
    if theorem_id == "T4":
        return w / 2.0 * (kc.u1 * d1 + kc.u2 * d2)

    hp = _require_hp(theorem_id, hp)
    p, q = hp.p, hp.q
    if theorem_id == "T2":
        core = (d1**q + m * c * d2**q) / (c + 1.0)
        return w / (2.0 * (p + 1.0) ** (1.0 / p)) * core ** (1.0 / q)
    if theorem_id == "T3":
        core = kc.v1 * d1**q + kc.v2 * d2**q
        return w / 2.0 ** ((p + 1.0) / p) * core ** (1.0 / q)
    if theorem_id == "T5":
        core = (d1**q + m * c * d2**q) / (c + 1.0)
        return w * (2.0 / ((p + 1.0) * (p + 2.0))) ** (1.0 / p) * core ** (1.0 / q)
    # T6
    core = kc.u1 * d1**q + kc.u2 * d2**q
    return w / 3.0 ** (1.0 / p) * core ** (1.0 / q)


def hypothesis_function(
    theorem_id: str, f: FunctionSpec, hp: Optional[HolderExponents] = None
) -> DerivedFunction:
    """The function whose class membership each bound assumes.

    |f'| for T1 and T4, |f'|^q for the Holder variants.  Built by composing
    the derivative evaluator pointwise, not by rewriting the expression tree.
    """
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"theorem_id must be one of {THEOREM_IDS}, got {theorem_id!r}")
    if theorem_id in _PLAIN_IDS:
        return DerivedFunction(
            lambda x: np.abs(f.derivative(x)), f.domain, f"|({f.text})'|"
        )
    q = _require_hp(theorem_id, hp).q
    return DerivedFunction(
        lambda x: np.abs(f.derivative(x)) ** q, f.domain, f"|({f.text})'|^{q:g}"
    )


def verify_theorem(
    theorem_id: str,
    f: FunctionSpec,
    interval: Interval,
    params: ConvexityParams,
    hp: Optional[HolderExponents] = None,
    tol: float = 1e-9,
    grid_n: int = convexity.DEFAULT_GRID_N,
) -> BoundReport:
    """Evaluate gap and bound, and certify the bound's hypothesis by sampling.

    The hypothesis is always taken in the first combination sense regardless
    of params.sense, since that is the sense the bound family is stated for.
    """
    bound = theorem_bound(theorem_id, f, interval, params, hp)
    gap = hh_gap(f, interval)
    margin = bound - gap

    hyp = hypothesis_function(theorem_id, f, hp)
    hyp_params = ConvexityParams(params.s, params.alpha, params.m, "first")
    cert = convexity.certify(hyp, interval, hyp_params, grid_n)

    inputs = {
        "theorem": theorem_id,
        "function": f.text,
        "a": interval.a,
        "b": interval.b,
        "s": params.s,
        "alpha": params.alpha,
        "m": params.m,
        "sense": "first",
    }
    if theorem_id not in _PLAIN_IDS:
        inputs["p"] = hp.p
        inputs["q"] = hp.q

    return BoundReport(
        theorem_id=theorem_id,
        lhs_gap=gap,
        rhs_bound=bound,
        margin=margin,
        holds=margin >= -tol,
        hypothesis_certified=not cert.falsified,
        inputs=inputs,
    )


@dataclass(frozen=True)
class GapIdentityResiduals:
    signed_gap: float
    single_integral: float
    double_integral: float
    single_residual: float
    double_residual: float


@lru_cache(maxsize=None)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def lemma_identity_residuals(
    f: FunctionSpec, interval: Interval, tensor_nodes: int = 48
) -> GapIdentityResiduals:
    """Residuals of the two exact integral representations of the signed gap.

    Representation one integrates (1 - 2t) f'(ta + (1-t)b) over the unit
    interval; representation two integrates the antisymmetrized derivative
    difference against (u - t) over the unit square.  Both are scaled by
    (b - a) / 2 and compared with the directly computed signed gap.
    """
    a, b = interval.a, interval.b
    half_w = interval.width / 2.0

    signed = _signed_gap(f, interval)

    dline = lambda t: f.derivative(t * a + (1.0 - t) * b)  # noqa: E731
    single = half_w * reference_integrate(
        lambda t: (1.0 - 2.0 * t) * dline(t), Interval(0.0, 1.0), tol=1e-12
    )

    t, wt = _gl_nodes(tensor_nodes)
    dvals = np.asarray(dline(t), dtype=float)
    # integrand (d(t) - d(u)) (u - t) splits into rank-one tensor products
    diff = dvals[:, None] - dvals[None, :]
    pair = (t[None, :] - t[:, None]) * diff
    double = half_w * float(wt @ pair @ wt)

    return GapIdentityResiduals(
        signed_gap=signed,
        single_integral=single,
        double_integral=double,
        single_residual=abs(single - signed),
        double_residual=abs(double - signed),
    )
