"""Exact weighted counting of cubic multigraph kernels and auxiliary series.

Weighted counts follow the convention w = 2^-a * 2^-b * 6^-c for a loops,
b double edges and c triple edges, which makes the weighted number of cubic
multigraphs on 2r labelled vertices equal to (6r)! / ((3r)! 2^(3r) 6^(2r)).

Three kernel classes are built in: all cubic multigraphs (closed formula),
planar ones and series-parallel ones (both solved from a functional-equation
system for edge-rooted connected cubic planar multigraphs).  Arbitrary
classes can be supplied as custom weight tables.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .series import PowerSeries, log_inv_one_minus, poly_residual, solve_fixed_point

__all__ = [
    "ALL",
    "PLANAR",
    "SERIES_PARALLEL",
    "OUTERPLANAR",
    "KernelWeightTable",
    "PlanarSystemSolution",
    "TreeSeries",
    "all_cubic_weight",
    "iter_dart_pairings",
    "pairing_oracle",
    "solve_planar_system",
    "solve_sp_system",
    "nonic_coefficients",
    "nonic_residual",
    "kernel_table",
    "outerplanar_table",
    "tree_series",
    "write_table_csv",
    "read_table_csv",
]

ALL = "all"
PLANAR = "planar"
SERIES_PARALLEL = "series-parallel"
OUTERPLANAR = "outerplanar"


def all_cubic_weight(r: int) -> Fraction:
    """Weighted count of cubic multigraphs on 2r vertices, divided by (2r)!."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return Fraction(
        math.factorial(6 * r),
        math.factorial(3 * r) * 2 ** (3 * r) * 6 ** (2 * r) * math.factorial(2 * r),
    )


# ---------------------------------------------------------------------------
# Exhaustive dart-pairing oracle (cross-check for all_cubic_weight)
# ---------------------------------------------------------------------------


def iter_dart_pairings(n_darts: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Yield every perfect matching of darts 0..n_darts-1."""
    if n_darts % 2:
        raise ValueError("odd number of darts cannot be perfectly matched")

    def rec(free: tuple[int, ...]):
        if not free:
            yield ()
            return
        first = free[0]
        rest = free[1:]
        for i, partner in enumerate(rest):
            remaining = rest[:i] + rest[i + 1 :]
            for tail in rec(remaining):
                yield ((first, partner),) + tail

    yield from rec(tuple(range(n_darts)))


def pairing_oracle(r: int) -> Fraction:
    """Recompute all_cubic_weight(r) by brute force over dart pairings.

    Each vertex contributes three darts; every perfect matching of the 6r
    darts yields a cubic multigraph.  Distinct labelled multigraphs are
    collected and their weights summed, which must reproduce the closed
    formula.  Only r in {1, 2} is supported (10395 pairings at r=2).
    """
    if r not in (1, 2):
        raise ValueError("pairing oracle supports r in {1, 2} only")
    n_darts = 6 * r
    seen: dict[tuple, Fraction] = {}
    total_pairings = 0
    for matching in iter_dart_pairings(n_darts):
        total_pairings += 1
        edges = tuple(sorted(tuple(sorted((a // 3, b // 3))) for a, b in matching))
        if edges not in seen:
            seen[edges] = _multigraph_weight(edges)
    expected_pairings = math.factorial(n_darts) // (
        math.factorial(3 * r) * 2 ** (3 * r)
    )
    if total_pairings != expected_pairings:
        raise AssertionError(
            f"pairing enumeration produced {total_pairings} matchings, "
            f"expected {expected_pairings}"
        )
    weighted = sum(seen.values())
    return Fraction(weighted, math.factorial(2 * r))


def _multigraph_weight(edges: Sequence[tuple[int, int]]) -> Fraction:
    loops = sum(1 for u, v in edges if u == v)
    mult: dict[tuple[int, int], int] = {}
    for u, v in edges:
        if u != v:
            mult[(u, v)] = mult.get((u, v), 0) + 1
    doubles = sum(1 for m in mult.values() if m == 2)
    triples = sum(1 for m in mult.values() if m == 3)
    return Fraction(1, 2**loops * 2**doubles * 6**triples)


# ---------------------------------------------------------------------------
# The functional-equation system for cubic planar multigraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanarSystemSolution:
    """Solved generating functions of the edge-rooted cubic system.

    ``G1`` counts connected cubic multigraphs of the class (EGF, no constant
    term), ``G = exp(G1)`` counts all of them.  The remaining series are the
    auxiliary edge-rooted families; ``u`` is the algebraic auxiliary of the
    3-connected part (identically zero in the series-parallel variant).
    """

    B: PowerSeries
    C: PowerSeries
    D: PowerSeries
    S: PowerSeries
    P: PowerSeries
    H: PowerSeries
    u: PowerSeries
    G1: PowerSeries
    G: PowerSeries

    @property
    def order(self) -> int:
        return self.G.order


def _solve_cubic_system(order: int, with_h: bool) -> PlanarSystemSolution:
    if order < 2 or order % 2:
        raise ValueError("truncation order must be an even integer >= 2")
    one = PowerSeries.one(order)
    z2 = PowerSeries.monomial(2, order)
    half = Fraction(1, 2)

    # Unknowns: D, S, P, u, H, C, b where b = B/z^2.  Writing the B and D
    # equations through b keeps every update exact through the truncation
    # order (no downward shift is ever needed: B = z^2*b, D = z^2*b^2).
    def rule_d(s):
        return z2 * (s[6] * s[6])

    def rule_s(s):
        return s[5] * s[5] - s[5] * s[1]

    def rule_p(s):
        return (s[5] + half * (s[5] * s[5]) + half * one).shift(2)

    def rule_u(s):
        c1 = s[5] + one
        uu = s[3]
        uu2 = uu * uu
        return z2 * (c1 * c1 * c1) + 3 * uu2 - 3 * (uu2 * uu) + uu2 * uu2

    def rule_h(s):
        uu = s[3]
        one_m_u = one - uu
        num = uu * (one - 2 * uu) - uu * (one_m_u * one_m_u * one_m_u)
        return num / (2 * (one + s[5]))

    def rule_h_zero(s):
        return PowerSeries.zero(order)

    def rule_c(s):
        return s[1] + s[2] + s[4] + s[6].shift(2)

    def rule_b(s):
        return half * (s[0] + s[5] + one)

    rules = [
        rule_d,
        rule_s,
        rule_p,
        rule_u if with_h else rule_h_zero,
        rule_h if with_h else rule_h_zero,
        rule_c,
        rule_b,
    ]
    d, s_, p, u, h, c, b = solve_fixed_point(rules, order)
    big_b = b.shift(2)

    dc = d + c
    if dc.constant_term() != 0:
        raise ValueError("D + C has a nonzero constant term; cannot integrate")
    g1 = PowerSeries(
        [Fraction(0)] + [dc[m] / (3 * m) for m in range(1, order + 1)], order
    )
    g = g1.exp()
    return PlanarSystemSolution(B=big_b, C=c, D=d, S=s_, P=p, H=h, u=u, G1=g1, G=g)


@lru_cache(maxsize=None)
def solve_planar_system(order: int) -> PlanarSystemSolution:
    """Exact solution of the cubic planar system through the given order."""
    return _solve_cubic_system(order, with_h=True)


@lru_cache(maxsize=None)
def solve_sp_system(order: int) -> PlanarSystemSolution:
    """Series-parallel variant: the 3-connected part H is identically zero."""
    return _solve_cubic_system(order, with_h=False)


# Coefficients a_i(z) of the degree-9 elimination polynomial sum a_i C^i = 0
# satisfied by C(z); kept as an independent consistency check of the solved
# system.  Entry i maps degree -> integer coefficient of z^degree in a_i.
_NONIC: tuple[dict[int, int], ...] = (
    {6: 1048576, 4: 1034496, 2: -55296},
    {6: 9437184, 4: 6731264, 2: -1677312, 0: 55296},
    {6: 37748736, 4: 18925312, 2: -7913472, 0: 470016},
    {6: 88080384, 4: 30127104, 2: -16687104, 0: 1622016},
    {6: 132120576, 4: 29935360, 2: -19138560, 0: 2928640},
    {6: 132120576, 4: 19314176, 2: -12429312, 0: 2981888},
    {6: 88080384, 4: 8112384, 2: -4300800, 0: 1720320},
    {6: 37748736, 4: 2097152, 2: -614400, 0: 524288},
    {6: 9437184, 4: 262144, 0: 65536},
    {6: 1048576},
)


def nonic_coefficients(order: int) -> list[PowerSeries]:
    out = []
    for mono in _NONIC:
        cs = [Fraction(0)] * (order + 1)
        for deg, val in mono.items():
            if deg <= order:
                cs[deg] = Fraction(val)
        out.append(PowerSeries(cs, order))
    return out


def nonic_residual(c: PowerSeries) -> PowerSeries:
    """Evaluate the elimination polynomial at a candidate C(z); zero iff consistent."""
    return poly_residual(nonic_coefficients(c.order), c)


# ---------------------------------------------------------------------------
# Kernel weight tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelWeightTable:
    """Sequence h_0..h_rmax of weighted kernel counts for one graph class.

    h_r is the weighted number of class kernels on 2r vertices divided by
    (2r)!.  Invariants: h_0 = 1 (the empty kernel) and 0 <= h_r <= e_r where
    e_r is the all-cubic value.
    """

    class_tag: str
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValueError("a table needs at least the r=0 entry")
        if self.weights[0] != 1:
            raise ValueError("h_0 must equal 1 (the empty kernel)")
        for r, h in enumerate(self.weights):
            if h < 0 or h > all_cubic_weight(r):
                raise ValueError(
                    f"h_{r} = {h} outside [0, e_{r}]; not a subclass of cubic multigraphs"
                )

    @property
    def r_max(self) -> int:
        return len(self.weights) - 1

    def __getitem__(self, r: int) -> Fraction:
        return self.weights[r]


def kernel_table(
    class_tag: str,
    r_max: int,
    custom_weights: Sequence[Fraction] | None = None,
) -> KernelWeightTable:
    """Build the weight table of a kernel class up to r_max.

    ``all``, ``planar`` and ``series-parallel`` are computed exactly; any
    other tag requires ``custom_weights`` (h_0..h_rmax).
    """
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    if class_tag == ALL:
        ws = tuple(all_cubic_weight(r) for r in range(r_max + 1))
    elif class_tag in (PLANAR, SERIES_PARALLEL):
        order = max(2 * r_max, 2)
        sol = solve_planar_system(order) if class_tag == PLANAR else solve_sp_system(order)
        ws = tuple(sol.G[2 * r] for r in range(r_max + 1))
    else:
        if custom_weights is None:
            raise ValueError(f"custom class {class_tag!r} requires explicit weights")
        if len(custom_weights) != r_max + 1:
            raise ValueError("custom weights must cover r = 0..r_max")
        ws = tuple(Fraction(w) for w in custom_weights)
    return KernelWeightTable(class_tag=class_tag, weights=ws)


# Outerplanar cubic multigraphs: the adapted equation system is not published
# in full, so the class ships as a static table of the known coefficients
# through r = 4.  Probability output built on it is truncated at r = 4 and is
# reported as uncertified.
_OUTERPLANAR_WEIGHTS = (
    Fraction(1),
    Fraction(5, 24),
    Fraction(337, 1152),
    Fraction(55565, 82944),
    Fraction(14853793, 7962624),
)


def outerplanar_table() -> KernelWeightTable:
    return KernelWeightTable(class_tag=OUTERPLANAR, weights=_OUTERPLANAR_WEIGHTS)


# ---------------------------------------------------------------------------
# Tree and unicyclic series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeSeries:
    """EGFs of rooted trees, unrooted trees, unicyclic graphs, and
    graphs all of whose components are unicyclic."""

    rooted: PowerSeries
    unrooted: PowerSeries
    unicyclic: PowerSeries
    unicyclic_forests: PowerSeries


@lru_cache(maxsize=None)
def tree_series(order: int) -> TreeSeries:
    if order < 1:
        raise ValueError("order must be >= 1")
    z = PowerSeries.monomial(1, order)

    t = solve_fixed_point([lambda s: z * s[0].exp()], order)[0]
    u = t - t * t / 2
    v = (log_inv_one_minus(t) - t - t * t / 2) / 2
    return TreeSeries(rooted=t, unrooted=u, unicyclic=v, unicyclic_forests=v.exp())


# ---------------------------------------------------------------------------
# CSV interchange
# ---------------------------------------------------------------------------


def write_table_csv(table: KernelWeightTable, fileobj) -> None:
    """Write ``r,numerator,denominator`` rows, one per r."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["r", "numerator", "denominator"])
    for r, h in enumerate(table.weights):
        writer.writerow([r, h.numerator, h.denominator])


def read_table_csv(fileobj, class_tag: str = "custom") -> KernelWeightTable:
    reader = csv.reader(fileobj)
    header = next(reader)
    if header != ["r", "numerator", "denominator"]:
        raise ValueError(f"unexpected table header: {header!r}")
    weights = []
    for row in reader:
        if not row:
            continue
        r, num, den = int(row[0]), int(row[1]), int(row[2])
        if r != len(weights):
            raise ValueError("table rows must be consecutive in r")
        weights.append(Fraction(num, den))
    return KernelWeightTable(class_tag=class_tag, weights=tuple(weights))
