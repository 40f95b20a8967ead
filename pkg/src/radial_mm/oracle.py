"""Brute-force and numerical oracles for small inputs.

None of these are meant for production sizes: the Levy-Prokhorov check
enumerates every subset of the point set, and the quadrature walks a fine
grid.  They exist to cross-check the fast paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .distance import d_rd_exact
from .mmcore import (FiniteMetricSpace, RadialProfile, StepFunction, ValidationError,
                     cumulative_distribution, evaluate)

MAX_LP_POINTS = 20


def _segment_trapezoid(a: float, b: float, cells: int, decay: float) -> float:
    r = np.linspace(a, b, cells + 1)
    w = np.exp(-decay * r)
    return (b - a) / cells * (float(np.sum(w[1:-1])) + 0.5 * (w[0] + w[-1]))


def quadrature_d_rd(f1: StepFunction, f2: StepFunction, step: float = 1e-4,
                    decay: float = 1.0, extrapolate: bool = False) -> float:
    """Trapezoidal estimate of the radial distribution distance.

    The interval ``[0, r_max]`` is cut at every breakpoint of either
    function and each piece is split into equal cells no wider than
    ``step``; the step-function factor is sampled at each piece's midpoint,
    so only the exponential weight is approximated.  The part beyond
    ``r_max`` is added analytically.

    Plain trapezoid has relative error about ``step**2 / 12``.  With
    ``extrapolate`` the rule is also run on cells of half the width and the
    two are combined by Richardson extrapolation, pushing the error to
    ``O(step**4)``.
    """
    if not step > 0:
        raise ValidationError("step must be positive")
    cuts = np.union1d(np.union1d(f1.breakpoints, f2.breakpoints), [0.0])
    total = []
    for a, b in zip(cuts[:-1].tolist(), cuts[1:].tolist()):
        mid = 0.5 * (a + b)
        gap = abs(evaluate(f1, mid) - evaluate(f2, mid))
        if gap == 0:
            continue
        cells = max(1, math.ceil((b - a) / step))
        coarse = _segment_trapezoid(a, b, cells, decay)
        if extrapolate:
            fine = _segment_trapezoid(a, b, 2 * cells, decay)
            coarse = (4.0 * fine - coarse) / 3.0
        total.append(gap * coarse)
    r_max = float(cuts[-1])
    total.append(abs(f1.total_mass - f2.total_mass) * math.exp(-decay * r_max) / decay)
    return math.fsum(total)


def _as_index(subset: Iterable[int], n: int) -> np.ndarray:
    idx = np.unique(np.asarray(list(subset), dtype=np.intp))
    if idx.size == 0:
        raise ValidationError("subsets must be non-empty")
    if idx[0] < 0 or idx[-1] >= n:
        raise ValidationError("subset index out of range")
    return idx


def hausdorff(space: FiniteMetricSpace, s1: Iterable[int], s2: Iterable[int]) -> float:
    """Hausdorff distance between two point subsets (given as indices)."""
    a = _as_index(s1, space.n)
    b = _as_index(s2, space.n)
    block = space.distances[np.ix_(a, b)]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))


def _subset_sums(weights: np.ndarray) -> np.ndarray:
    """``out[mask]`` is the total weight of the points whose bits are set."""
    out = np.zeros(1, dtype=weights.dtype)
    for w in weights:
        out = np.concatenate((out, out + w))
    return out


def _neighbourhoods(within: np.ndarray) -> np.ndarray:
    """Bitmask of the union of rows ``within[i]`` over every subset mask."""
    n = within.shape[0]
    bits = (within.astype(np.uint32) << np.arange(n, dtype=np.uint32)).sum(axis=1, dtype=np.uint32)
    out = np.zeros(1, dtype=np.uint32)
    for row in bits:
        out = np.concatenate((out, out | row))
    return out


def levy_prokhorov(space: FiniteMetricSpace, mu1, mu2, tol: float = 1e-9) -> float:
    """Levy-Prokhorov distance between two measures on the same finite space.

    Feasibility of a radius ``r`` means that for every subset ``S`` each
    measure of ``S`` is at most the other measure of the open
    ``r``-neighbourhood of ``S`` plus ``r``.  Feasible radii form an up-set,
    so the infimum is found by bisection and reported as the midpoint of the
    final bracket (within ``tol`` of the true value).
    """
    n = space.n
    if n > MAX_LP_POINTS:
        raise ValidationError(f"subset enumeration is limited to {MAX_LP_POINTS} points, got {n}")
    if not tol > 0:
        raise ValidationError("tol must be positive")
    m1 = np.asarray(mu1, dtype=np.float64)
    m2 = np.asarray(mu2, dtype=np.float64)
    for m in (m1, m2):
        if m.shape != (n,):
            raise ValidationError("each measure needs one mass per point")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValidationError("masses must be finite and nonnegative")
    mass1 = _subset_sums(m1)
    mass2 = _subset_sums(m2)
    d = space.distances

    def feasible(r: float) -> bool:
        nb = _neighbourhoods(d < r)
        return bool(np.all(mass1 <= mass2[nb] + r) and np.all(mass2 <= mass1[nb] + r))

    diameter = float(d.max())
    hi = max(diameter, abs(mass1[-1] - mass2[-1])) + max(mass1[-1], mass2[-1])
    hi = max(hi, tol)
    while not feasible(hi):
        hi *= 2.0
    lo = 0.0
    if feasible(lo):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def random_profile(rng: np.random.Generator, max_atoms: int = 8, max_radius: float = 10.0,
                   max_mass: float = 5.0) -> RadialProfile:
    """Random profile: origin at radius 0, radii and masses drawn uniformly.

    Half of the draws round radii to integers so that coincident radii show
    up often.
    """
    n = int(rng.integers(1, max_atoms + 1))
    radii = rng.uniform(0.0, max_radius, size=n)
    if rng.random() < 0.5:
        radii = np.round(radii)
    radii[0] = 0.0
    masses = rng.uniform(0.0, max_mass, size=n)
    return RadialProfile("o", radii, masses)


def random_step_function(rng: np.random.Generator, **kwargs) -> StepFunction:
    return cumulative_distribution(random_profile(rng, **kwargs))


@dataclass
class Violation:
    axiom: str
    excess: float
    inputs: tuple[list[tuple[float, float]], ...]


@dataclass
class PseudometricReport:
    trials: int = 0
    seed: int | None = None
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return f"{self.trials} trials, {len(self.violations)} violations"


def check_pseudometric(sampler: Callable[[np.random.Generator], StepFunction], trials: int,
                       seed: int | None = 0, slack: float = 1e-9,
                       distance: Callable = d_rd_exact) -> PseudometricReport:
    """Check zero self-distance, symmetry and the triangle inequality.

    Each trial draws three functions from ``sampler``.  Offending inputs are
    kept in the report as (breakpoint, value) pairs.
    """
    rng = np.random.default_rng(seed)
    report = PseudometricReport(trials=max(trials, 0), seed=seed)

    def dist(a, b):
        return float(distance(a, b).value)

    for _ in range(max(trials, 0)):
        f, g, h = (sampler(rng) for _ in range(3))
        pairs = (f.pairs(), g.pairs(), h.pairs())
        self_d = max(dist(f, f), dist(g, g), dist(h, h))
        if self_d > slack:
            report.violations.append(Violation("identity", self_d, pairs))
        asym = abs(dist(f, g) - dist(g, f))
        if asym > slack:
            report.violations.append(Violation("symmetry", asym, pairs))
        dfg, dgh, dfh = dist(f, g), dist(g, h), dist(f, h)
        excess = max(dfh - (dfg + dgh), dfg - (dfh + dgh), dgh - (dfg + dfh))
        if excess > slack:
            report.violations.append(Violation("triangle", excess, pairs))
    return report
