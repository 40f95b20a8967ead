"""Rooted finite metric measure spaces in radial form.

A rooted space only matters to the radial distance through the distances
from its origin and the point masses, so it is stored as a multiset of
``(radius, mass)`` atoms.  The cumulative ball mass ``m(r)`` is a
right-continuous, non-decreasing step function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class ValidationError(ValueError):
    """Raised for inputs that break the mm-space invariants."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Distances from an origin paired with point masses.

    ``radii[i]`` is the distance from the origin to point ``i`` and
    ``masses[i]`` its measure.  The origin contributes an atom at radius 0.
    """

    origin_id: str
    radii: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        radii = _frozen(self.radii)
        masses = _frozen(self.masses)
        if radii.shape != masses.shape:
            raise ValidationError("radii and masses must have the same length")
        if radii.size == 0:
            raise ValidationError("a profile needs at least the origin atom")
        if not np.all(np.isfinite(radii)) or np.any(radii < 0):
            raise ValidationError("radii must be finite and nonnegative")
        if not np.all(np.isfinite(masses)) or np.any(masses < 0):
            raise ValidationError("masses must be finite and nonnegative")
        if not np.any(radii == 0):
            raise ValidationError("the origin atom at radius 0 is missing")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[float, float]], origin_id: str = "o") -> "RadialProfile":
        atoms = list(atoms)
        if not atoms:
            raise ValidationError("a profile needs at least the origin atom")
        radii, masses = zip(*atoms)
        return cls(origin_id, np.asarray(radii, float), np.asarray(masses, float))

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.radii.tolist(), self.masses.tolist()))

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def __len__(self):
        return self.radii.size


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Cumulative mass ``m(r)`` as breakpoints and the value from each onward.

    On ``[breakpoints[i], breakpoints[i+1])`` the function equals
    ``values[i]``; before the first breakpoint it is 0 and after the last it
    stays at ``total_mass``.
    """

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = _frozen(self.breakpoints)
        vals = _frozen(self.values)
        if bp.shape != vals.shape or bp.size == 0:
            raise ValidationError("breakpoints and values must be non-empty and of equal length")
        if not (np.all(np.isfinite(bp)) and np.all(np.isfinite(vals))):
            raise ValidationError("breakpoints and values must be finite")
        if bp[0] < 0:
            raise ValidationError("breakpoints must be nonnegative")
        if np.any(np.diff(bp) <= 0):
            raise ValidationError("breakpoints must be strictly increasing")
        if vals[0] < 0 or np.any(np.diff(vals) < 0):
            raise ValidationError("values must be nonnegative and non-decreasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls(np.zeros(1), np.zeros(1))

    @property
    def total_mass(self) -> float:
        return float(self.values[-1])

    def __call__(self, r):
        return evaluate(self, r)

    def canonical(self) -> "StepFunction":
        """Same function with redundant breakpoints removed, starting at 0."""
        bp, vals = self.breakpoints, self.values
        if bp[0] > 0:
            bp = np.concatenate(([0.0], bp))
            vals = np.concatenate(([0.0], vals))
        keep = np.ones(bp.size, dtype=bool)
        keep[1:] = vals[1:] != vals[:-1]
        return StepFunction(bp[keep], vals[keep])

    def same_as(self, other: "StepFunction") -> bool:
        a, b = self.canonical(), other.canonical()
        return (np.array_equal(a.breakpoints, b.breakpoints)
                and np.array_equal(a.values, b.values))

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.breakpoints.tolist(), self.values.tolist()))


def cumulative_distribution(profile: RadialProfile) -> StepFunction:
    """Cumulative radial distribution of a profile, in canonical form.

    Atoms at equal radii are merged by summing their masses.  Sorting is by
    (radius, mass), so the result does not depend on atom order.
    """
    order = np.argsort(profile.radii)
    radii = profile.radii[order]
    if np.any(radii[1:] == radii[:-1]):
        # ties: fix the in-group summation order so the result ignores atom order
        order = np.lexsort((profile.masses, profile.radii))
        radii = profile.radii[order]
    masses = profile.masses[order]
    starts = np.flatnonzero(np.concatenate(([True], radii[1:] != radii[:-1])))
    group_mass = np.add.reduceat(masses, starts)
    values = np.cumsum(group_mass)
    bp = radii[starts]
    keep = np.ones(bp.size, dtype=bool)
    keep[1:] = values[1:] != values[:-1]
    return StepFunction(bp[keep], values[keep])


def evaluate(f: StepFunction, r):
    """Value of ``f`` at radius ``r`` (scalar or array)."""
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(np.isnan(r_arr)) or np.any(r_arr < 0):
        raise ValidationError("radius must be nonnegative")
    idx = np.searchsorted(f.breakpoints, r_arr, side="right") - 1
    out = np.where(idx >= 0, f.values[np.maximum(idx, 0)], 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def merged_radii(f1: StepFunction, f2: StepFunction) -> np.ndarray:
    """Sorted union of both breakpoint sets, equal radii collapsed."""
    return merge(f1, f2)[0]


def merge(f1: StepFunction, f2: StepFunction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Merged breakpoints together with both functions evaluated on them.

    The two breakpoint arrays are already sorted, so a stable sort of their
    concatenation only has to merge two runs.
    """
    n1 = f1.breakpoints.size
    radii = np.concatenate((f1.breakpoints, f2.breakpoints))
    order = np.argsort(radii, kind="stable")
    radii = radii[order]
    # seen1[j]: how many breakpoints of f1 are at or before position j
    seen1 = np.cumsum(order < n1)
    last = np.empty(radii.size, dtype=bool)
    np.not_equal(radii[1:], radii[:-1], out=last[:-1])
    last[-1] = True
    pos = np.flatnonzero(last)
    seen1 = seen1[pos]
    seen2 = pos + 1 - seen1
    m1 = np.concatenate(([0.0], f1.values))[seen1]
    m2 = np.concatenate(([0.0], f2.values))[seen2]
    radii = radii[pos]
    return radii, m1, m2


def quantize(radii, decimals: int | None) -> np.ndarray:
    """Round radii to ``decimals`` places; ``None`` leaves them untouched."""
    radii = np.asarray(radii, dtype=np.float64)
    if decimals is None:
        return radii
    return np.round(radii, decimals)


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Explicit distance matrix with one or more point-mass measures."""

    distances: np.ndarray
    measures: Sequence[np.ndarray] = field(default_factory=tuple)

    def __post_init__(self):
        d = np.array(self.distances, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
            raise ValidationError("distances must be a non-empty square matrix")
        n = d.shape[0]
        if not np.all(np.isfinite(d)):
            raise ValidationError("distances must be finite")
        if np.any(np.diag(d) != 0):
            raise ValidationError("distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise ValidationError("distance matrix must be symmetric")
        off = ~np.eye(n, dtype=bool)
        if np.any(d[off] <= 0):
            raise ValidationError("distinct points must be at positive distance")
        eps = 1e-12 * max(1.0, float(d.max()))
        for j in range(n):
            if np.any(d > d[:, j:j + 1] + d[j:j + 1, :] + eps):
                raise ValidationError("distance matrix violates the triangle inequality")
        d.setflags(write=False)
        measures = []
        for mu in self.measures:
            mu = _frozen(mu)
            if mu.size != n:
                raise ValidationError("each measure needs one mass per point")
            if not np.all(np.isfinite(mu)) or np.any(mu < 0):
                raise ValidationError("masses must be finite and nonnegative")
            measures.append(mu)
        object.__setattr__(self, "distances", d)
        object.__setattr__(self, "measures", tuple(measures))

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    def profile(self, origin: int, measure: int = 0) -> RadialProfile:
        """Radial profile rooted at point ``origin`` under one measure."""
        return RadialProfile(str(origin), self.distances[origin], self.measures[measure])
