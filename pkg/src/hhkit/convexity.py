"""Sampling-based certification of generalized convexity classes.

The class is parameterized by (s, alpha, m) and a sense tag.  For a candidate
function f, points x, y in the interval and mu in [0, 1], the tested inequality is

    f(mu*x + (1-mu)*y)  <=  mu^(alpha*s) * f(x) + C(mu) * f(y/m)

with C(mu) = m*(1 - mu^(alpha*s)) in the first sense and
C(mu) = m*(1 - mu^alpha)^s in the second.  At m = 0 the second term is taken
to be 0.  Certification samples a uniform lattice; "not_falsified" is a
sampling statement, not a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .expr import Interval

SENSES = ("first", "second")

DEFAULT_GRID_N = 50
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ConvexityParams:
    """Class parameters: s in (0, 1], alpha in [0, 1], m in [0, 1]."""

    s: float
    alpha: float
    m: float
    sense: str = "first"

    def __post_init__(self):
        if not (0.0 < self.s <= 1.0):
            raise ValueError(f"s must lie in (0, 1], got {self.s}")
        if not (0.0 <= self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not (0.0 <= self.m <= 1.0):
            raise ValueError(f"m must lie in [0, 1], got {self.m}")
        if self.sense not in SENSES:
            raise ValueError(f"sense must be one of {SENSES}, got {self.sense!r}")

    @property
    def alpha_s(self) -> float:
        return self.alpha * self.s


@dataclass(frozen=True)
class Counterexample:
    x: float
    y: float
    mu: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class CertificationReport:
    samples_checked: int
    worst_margin: float  # min over the lattice of rhs - lhs
    counterexample: Optional[Counterexample]
    verdict: str  # "not_falsified" | "falsified"

    @property
    def falsified(self) -> bool:
        return self.verdict == "falsified"


def combination_coefficients(params: ConvexityParams, mu):
    """Coefficients (on f(x), on f(y/m)) of the class inequality at mu."""
    first_coef = mu ** (params.alpha * params.s)
    if params.sense == "first":
        second_coef = params.m * (1.0 - first_coef)
    else:
        second_coef = params.m * (1.0 - mu**params.alpha) ** params.s
    return first_coef, second_coef


def generalized_combination_rhs(
    params: ConvexityParams, f_at_x: float, f_at_y_over_m: float, mu: float
) -> float:
    """Right-hand side of the class inequality for given endpoint values."""
    if not (0.0 <= mu <= 1.0):
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    if math.isnan(f_at_x) or math.isnan(f_at_y_over_m) or math.isnan(mu):
        raise ValueError("NaN inputs are not allowed")
    fc, sc = combination_coefficients(params, mu)
    if params.m == 0.0:
        return float(fc * f_at_x)
    return float(fc * f_at_x + sc * f_at_y_over_m)


def certify(
    f,
    interval: Interval,
    params: ConvexityParams,
    grid_n: int = DEFAULT_GRID_N,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CertificationReport:
    """Search a grid_n^3 lattice over (x, y, mu) for violations of the class inequality.

    Falsified means some lattice margin is below -tolerance; the reported
    counterexample is the lexicographically first lattice point attaining the
    worst margin.  f must be evaluable on arrays over the interval, and for
    0 < m < 1 also at y/m for every sampled y.  When m == 0 the y axis drops
    out and the lattice is grid_n^2 points over (x, mu).
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    if tolerance < 0.0:
        raise ValueError("tolerance must be non-negative")

    points = np.linspace(interval.a, interval.b, grid_n)
    mus = np.linspace(0.0, 1.0, grid_n)

    fx = np.asarray(f(points), dtype=float)
    if params.m > 0.0:
        fy = np.asarray(f(points / params.m), dtype=float)
        ys = points
    else:
        fy = None
        ys = np.zeros(1)  # second term vanishes and the combination collapses to mu*x

    X = points[:, None, None]
    Y = ys[None, :, None]
    MU = mus[None, None, :]
    lhs = np.asarray(f(MU * X + (1.0 - MU) * Y), dtype=float)

    fc, sc = combination_coefficients(params, mus)
    rhs = fc[None, None, :] * fx[:, None, None]
    if fy is not None:
        rhs = rhs + sc[None, None, :] * fy[None, :, None]
    rhs = np.broadcast_to(rhs, lhs.shape)

    margins = rhs - lhs
    flat_idx = int(np.argmin(margins))  # first occurrence in C order = lexicographic
    i, j, k = np.unravel_index(flat_idx, margins.shape)
    worst = float(margins[i, j, k])

    if worst < -tolerance:
        cex = Counterexample(
            x=float(points[i]),
            y=float(ys[j]),
            mu=float(mus[k]),
            lhs=float(lhs[i, j, k]),
            rhs=float(rhs[i, j, k]),
        )
        verdict = "falsified"
    else:
        cex = None
        verdict = "not_falsified"

    return CertificationReport(
        samples_checked=int(margins.size),
        worst_margin=worst,
        counterexample=cex,
        verdict=verdict,
    )
