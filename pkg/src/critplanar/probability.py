"""Limiting probabilities at the critical window, with truncation control.

Combines the exact kernel weight tables with the Airy-type function: the
probability that the kernel has 2r vertices is sqrt(2 pi) e_r A(3r+1/2, lam),
and the probability of landing in a minor-closed class with kernel weights
h_r is the same sum with h_r in place of e_r.

Every reported probability carries an error bound and a certification flag.
A truncated sum is certified only when its last three terms decrease and the
final term is below ``tol`` times the partial sum; the error bound is a
geometric extrapolation of the tail (doubled, since the observed term ratio
keeps drifting upward for a while) plus the per-term evaluation bounds.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .airy import airy_A
from .enumeration import KernelWeightTable, kernel_table, ALL

__all__ = [
    "KernelSizePmf",
    "ClassProbability",
    "CurvePoint",
    "ProbabilityCurve",
    "kernel_size_pmf",
    "class_probability",
    "zero_lambda_closed_form",
    "probability_curve",
    "write_curve_csv",
    "read_curve_csv",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
DEFAULT_TOL = 1e-10


class ClassProbability(NamedTuple):
    p: float
    error_bound: float
    certified: bool


class CurvePoint(NamedTuple):
    lam: float
    p: float
    error_bound: float


@dataclass(frozen=True)
class KernelSizePmf:
    """Distribution of the kernel size 2r at a fixed lambda, truncated at r_max."""

    lam: float
    entries: tuple[tuple[int, float], ...]
    tail_mass_bound: float


@dataclass(frozen=True)
class ProbabilityCurve:
    class_tag: str
    points: tuple[CurvePoint, ...]
    r_max: int


def _series_terms(table: KernelWeightTable, lam: float, tol: float):
    """Per-r summands sqrt(2 pi) h_r A(3r+1/2, lam) and their tail bounds."""
    terms: list[float] = []
    bounds: list[float] = []
    for r, h in enumerate(table.weights):
        hf = float(h)
        res = airy_A(3 * r + 0.5, lam, tol=tol / 10.0)
        terms.append(SQRT_2PI * hf * res.value)
        bounds.append(SQRT_2PI * hf * res.tail_bound)
    return terms, bounds


def _tail_estimate(terms: Sequence[float], tol: float) -> tuple[float, bool]:
    """Geometric tail bound from the last term ratio, plus the certified flag."""
    total = math.fsum(terms)
    if len(terms) < 3:
        return math.inf, False
    t1, t2, t3 = (abs(t) for t in terms[-3:])
    decreasing = t1 > t2 > t3 > 0.0 or (t1 > t2 and t3 == 0.0)
    certified = decreasing and t3 <= tol * abs(total)
    if t3 == 0.0:
        return 0.0, certified
    if t2 <= 0.0 or t3 >= t2:
        return math.inf, False
    ratio = t3 / t2
    geo = 2.0 * t3 * ratio / (1.0 - ratio)
    return geo, certified


def kernel_size_pmf(lam: float, r_max: int, tol: float = DEFAULT_TOL) -> KernelSizePmf:
    """Probabilities of kernel sizes 0, 2, ..., 2*r_max at the given lambda."""
    if r_max < 5:
        raise ValueError("r_max must be at least 5")
    table = kernel_table(ALL, r_max)
    terms, _bounds = _series_terms(table, lam, tol)
    total = math.fsum(terms)
    tail = max(0.0, 1.0 - total)
    return KernelSizePmf(
        lam=lam,
        entries=tuple((r, terms[r]) for r in range(r_max + 1)),
        tail_mass_bound=tail,
    )


def class_probability(
    table: KernelWeightTable, lam: float, tol: float = DEFAULT_TOL
) -> ClassProbability:
    """Limiting probability that the graph's kernel lies in the table's class.

    Returns the truncated sum, an error bound, and whether the truncation is
    certified.  Uncertified results are still returned (the flag is the
    explicit signal; nothing is silently discarded).
    """
    terms, bounds = _series_terms(table, lam, tol)
    p = math.fsum(terms)
    geo, certified = _tail_estimate(terms, tol)
    eval_noise = math.fsum(bounds) + len(terms) * 2.3e-16 * abs(p)
    return ClassProbability(p=p, error_bound=geo + eval_noise, certified=certified)


def zero_lambda_closed_form(table: KernelWeightTable) -> float:
    """The lambda = 0 probability via the closed form sqrt(2/3) (4/3)^r h_r r!/(2r)!.

    The sum is carried in exact rational arithmetic; the only rounding is the
    final multiplication by sqrt(2/3).
    """
    acc = Fraction(0)
    for r, h in enumerate(table.weights):
        acc += Fraction(4, 3) ** r * h * Fraction(math.factorial(r), math.factorial(2 * r))
    return math.sqrt(2.0 / 3.0) * (acc.numerator / acc.denominator)


def probability_curve(
    table: KernelWeightTable,
    lambda_grid: Iterable[float],
    tol: float = DEFAULT_TOL,
) -> ProbabilityCurve:
    """Pointwise class probabilities over a sorted finite lambda grid."""
    grid = list(lambda_grid)
    if any(not math.isfinite(x) for x in grid):
        raise ValueError("lambda grid must be finite")
    if grid != sorted(grid):
        raise ValueError("lambda grid must be sorted")
    points = []
    for lam in grid:
        p, bound, _certified = class_probability(table, lam, tol)
        points.append(CurvePoint(lam=lam, p=p, error_bound=bound))
    return ProbabilityCurve(class_tag=table.class_tag, points=tuple(points), r_max=table.r_max)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_curve_csv(curve: ProbabilityCurve, fileobj) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["lambda", "p", "error_bound"])
    for pt in curve.points:
        writer.writerow([_fmt(pt.lam), _fmt(pt.p), _fmt(pt.error_bound)])


def read_curve_csv(fileobj, class_tag: str = "unknown") -> ProbabilityCurve:
    reader = csv.reader(fileobj)
    header = next(reader)
    if header != ["lambda", "p", "error_bound"]:
        raise ValueError(f"unexpected curve header: {header!r}")
    points = tuple(
        CurvePoint(float(row[0]), float(row[1]), float(row[2])) for row in reader if row
    )
    return ProbabilityCurve(class_tag=class_tag, points=points, r_max=-1)
