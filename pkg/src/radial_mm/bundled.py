"""Bundled example graphs and the regression checks built on them.

``sixnode_a`` and ``sixnode_b`` are two six-node graphs with unit edge
lengths and vertex masses (1, 1, 2, 2, 1, 1), rooted at ``v1`` and ``u1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .distance import d_rd_discrete, d_rd_exact, top_k
from .graph import WeightedGraph, parse_graph, rooted_profile
from .mmcore import FiniteMetricSpace, cumulative_distribution, evaluate
from .oracle import levy_prokhorov

EXAMPLES = ("sixnode_a", "sixnode_b")


def example_path(name: str, fmt: str = "json"):
    if name not in EXAMPLES:
        raise KeyError(name)
    return resources.files(__package__) / "data" / f"{name}.{fmt}"


def load_example(name: str, fmt: str = "json") -> WeightedGraph:
    return parse_graph(example_path(name, fmt).read_bytes(), fmt)


def three_point_space() -> FiniteMetricSpace:
    """Three points at mutual distance 1 with masses (1,1,1) and (1,0.5,1.5)."""
    d = np.ones((3, 3)) - np.eye(3)
    return FiniteMetricSpace(d, [np.array([1.0, 1.0, 1.0]), np.array([1.0, 0.5, 1.5])])


@dataclass
class Check:
    name: str
    expected: object
    got: object
    ok: bool

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: expected {self.expected}, got {self.got}"


def regression_checks() -> list[Check]:
    """Known values for the six-node and three-point examples."""
    left, right = load_example("sixnode_a"), load_example("sixnode_b")
    f_v1 = cumulative_distribution(rooted_profile(left, "v1"))
    f_u1 = cumulative_distribution(rooted_profile(right, "u1"))
    f_u3 = cumulative_distribution(rooted_profile(right, "u3"))
    checks = []

    grid = np.arange(5.0)
    got = (evaluate(f_v1, grid).tolist(), evaluate(f_u1, grid).tolist())
    want = ([1, 2, 6, 8, 8], [1, 2, 6, 7, 8])
    checks.append(Check("cumulative distributions on R={0..4}", want, got,
                        got[0] == want[0] and got[1] == want[1]))

    v = d_rd_discrete(f_v1, f_u1).value
    checks.append(Check("discrete d_rd(v1,u1) = e^-3", math.exp(-3), v,
                        abs(v - math.exp(-3)) <= 1e-12))

    v = d_rd_discrete(f_v1, f_u3).value
    want_u3 = 1 + 2 * math.exp(-1) + 2 * math.exp(-2)
    checks.append(Check("discrete d_rd(v1,u3) ~ 2.01", want_u3, v, abs(v - want_u3) <= 1e-9))

    ranking = [nid for nid, _ in top_k(left, "v1", right, right.n, mode="paper_discrete")]
    checks.append(Check("ranking from v1: u1,u6 first, u3,u4 last", "{u1,u6}..{u3,u4}", ranking,
                        set(ranking[:2]) == {"u1", "u6"} and set(ranking[-2:]) == {"u3", "u4"}))

    space = three_point_space()
    p1, p2 = (cumulative_distribution(space.profile(0, i)) for i in range(2))
    rd = (d_rd_exact(p1, p2).value, d_rd_discrete(p1, p2).value)
    lp = levy_prokhorov(space, *space.measures, tol=1e-6)
    checks.append(Check("three-point example: d_rd = 0 and LP > 0.01", "0, 0, >0.01",
                        (rd[0], rd[1], round(float(lp), 7)), rd == (0.0, 0.0) and lp > 0.01))

    v = d_rd_exact(f_v1, f_u1).value
    want = math.exp(-3) - math.exp(-4)
    checks.append(Check("exact d_rd(v1,u1) = e^-3 - e^-4", want, v, abs(v - want) <= 1e-12))
    return checks
