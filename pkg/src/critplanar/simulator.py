"""Monte Carlo pipeline for random graphs at the critical window.

Samples uniform G(n, M), peels to the 2-core, contracts degree-2 paths to
the kernel, and tests the kernel for cubicity, planarity and
series-parallelness.  The heavy per-trial work (edge sampling, peeling,
component counting) is vectorised; the core itself has size of order n^(1/3)
and is handled as a plain Python multigraph.

Each trial derives its own generator state from (seed, trial index), so
reports are reproducible and independent of execution order.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .planarity import planarity_of_edges, series_parallel_of_edges

__all__ = [
    "MultiGraph",
    "TrialOutcome",
    "ExperimentReport",
    "InvariantViolation",
    "sample_gnm",
    "two_core",
    "kernel",
    "kernel_decomposition",
    "is_planar",
    "is_series_parallel",
    "critical_edge_count",
    "run_experiment",
    "report_to_json",
    "report_from_json",
    "report_to_csv",
    "report_from_csv",
]


class InvariantViolation(AssertionError):
    """A structural identity that must hold per trial failed."""


class MultiGraph:
    """Labelled multigraph on vertices 0..n-1; loops and parallel edges allowed.

    Edges are stored endpoint-sorted in an (m, 2) integer array.  A loop
    contributes 2 to its vertex degree.
    """

    __slots__ = ("n_vertices", "_edges", "_degrees")

    def __init__(self, n_vertices: int, edges=()):
        if n_vertices < 0:
            raise ValueError("vertex count must be >= 0")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs of vertex labels")
        if arr.size and (arr.min() < 0 or arr.max() >= n_vertices):
            raise ValueError("edge endpoint outside 0..n-1")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        self.n_vertices = int(n_vertices)
        self._edges = np.column_stack([lo, hi])
        self._edges.setflags(write=False)
        self._degrees: np.ndarray | None = None

    # -- accessors ----------------------------------------------------------

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def n_edges(self) -> int:
        return int(self._edges.shape[0])

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            e = self._edges
            self._degrees = np.bincount(e[:, 0], minlength=self.n_vertices) + np.bincount(
                e[:, 1], minlength=self.n_vertices
            )
        return self._degrees

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def excess(self) -> int:
        return self.n_edges - self.n_vertices

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self._edges.tolist()]

    def edge_multiset(self) -> Counter:
        return Counter(self.edge_list())

    def is_cubic(self) -> bool:
        return bool(np.all(self.degrees == 3)) if self.n_vertices else True

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (
            self.n_vertices == other.n_vertices
            and self.edge_multiset() == other.edge_multiset()
        )

    def __hash__(self):
        return hash((self.n_vertices, tuple(sorted(self.edge_list()))))

    def __repr__(self):
        return f"MultiGraph(n={self.n_vertices}, m={self.n_edges})"


# ---------------------------------------------------------------------------
# Uniform G(n, M) sampling
# ---------------------------------------------------------------------------


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def sample_gnm(n: int, m: int, rng) -> MultiGraph:
    """Uniformly random simple graph with n vertices and exactly m edges.

    Rejection-samples unordered pairs and keeps the first m distinct ones
    (in draw order), which makes the edge set a uniform m-subset.  For dense
    requests on small graphs it falls back to an explicit permutation.
    """
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"edge count {m} outside 0..{total}")
    gen = _as_generator(rng)
    if m == 0:
        return MultiGraph(n)

    if m * 2 > total and total <= 4_000_000:
        iu, ju = np.triu_indices(n, k=1)
        idx = gen.choice(total, size=m, replace=False)
        return MultiGraph(n, np.column_stack([iu[idx], ju[idx]]))

    chosen = np.empty(0, dtype=np.uint64)
    need = m
    while need > 0:
        batch = need + (need >> 3) + 16
        u = gen.integers(0, n, size=batch, dtype=np.int64)
        v = gen.integers(0, n, size=batch, dtype=np.int64)
        ok = u != v
        u, v = u[ok], v[ok]
        code = np.minimum(u, v).astype(np.uint64) * np.uint64(n) + np.maximum(u, v).astype(
            np.uint64
        )
        # order-preserving dedupe, then drop codes already chosen
        _, first = np.unique(code, return_index=True)
        code = code[np.sort(first)]
        if chosen.size:
            code = code[~np.isin(code, chosen)]
        code = code[:need]
        chosen = np.concatenate([chosen, code])
        need -= code.size
    lo = (chosen // np.uint64(n)).astype(np.int64)
    hi = (chosen % np.uint64(n)).astype(np.int64)
    return MultiGraph(n, np.column_stack([lo, hi]))


def critical_edge_count(n: int, lam: float) -> int:
    """M = round((n/2)(1 + lambda * n^(-1/3)))."""
    return int(round(0.5 * n * (1.0 + lam * n ** (-1.0 / 3.0))))


# ---------------------------------------------------------------------------
# Core and kernel extraction
# ---------------------------------------------------------------------------


def _peel_edges(n: int, edges: np.ndarray) -> np.ndarray:
    """Edges of the 2-core: repeatedly drop edges at degree-1 vertices."""
    e = edges
    while e.shape[0]:
        deg = np.bincount(e[:, 0], minlength=n) + np.bincount(e[:, 1], minlength=n)
        leaf = deg == 1
        keep = ~(leaf[e[:, 0]] | leaf[e[:, 1]])
        if keep.all():
            break
        e = e[keep]
    return e


def two_core(g: MultiGraph) -> MultiGraph:
    """Maximum subgraph of minimum degree >= 2, relabelled to 0..k-1.

    Relabelling preserves vertex order, which makes the operation idempotent.
    """
    core_edges = _peel_edges(g.n_vertices, g.edges)
    if core_edges.shape[0] == 0:
        return MultiGraph(0)
    verts = np.unique(core_edges)
    relabel = np.searchsorted(verts, core_edges)
    return MultiGraph(len(verts), relabel)


@dataclass(frozen=True)
class KernelDecomposition:
    kernel: MultiGraph
    isolated_cycles: int


def kernel_decomposition(core: MultiGraph) -> KernelDecomposition:
    """Contract maximal degree-2 paths of a min-degree-2 multigraph.

    Components consisting entirely of degree-2 vertices are pure cycles;
    they are dropped from the kernel and counted separately (they correspond
    to unicyclic components of the original graph).
    """
    deg = core.degrees
    if core.n_vertices and deg.size and deg.min() < 2:
        raise ValueError("kernel extraction requires minimum degree >= 2")
    edges = core.edge_list()
    adj: list[list[tuple[int, int]]] = [[] for _ in range(core.n_vertices)]
    for eid, (u, v) in enumerate(edges):
        adj[u].append((eid, v))
        adj[v].append((eid, u))

    visited = [False] * len(edges)
    branch = [v for v in range(core.n_vertices) if deg[v] >= 3]
    branch_index = {v: i for i, v in enumerate(branch)}
    kernel_edges: list[tuple[int, int]] = []

    for v in branch:
        for eid, w in adj[v]:
            if visited[eid]:
                continue
            visited[eid] = True
            if w == v:  # loop at a branch vertex
                kernel_edges.append((branch_index[v], branch_index[v]))
                continue
            prev_edge, cur = eid, w
            while deg[cur] == 2:
                nxt_eid, nxt = next(
                    (e, x) for e, x in adj[cur] if e != prev_edge
                )
                visited[nxt_eid] = True
                prev_edge, cur = nxt_eid, nxt
            kernel_edges.append((branch_index[v], branch_index[cur]))

    isolated = 0
    for eid in range(len(edges)):
        if visited[eid]:
            continue
        isolated += 1
        visited[eid] = True
        u, v = edges[eid]
        if u == v:
            continue  # a single-loop cycle
        prev_edge, cur = eid, v
        while cur != u or any(not visited[e] for e, _ in adj[cur]):
            nxt_eid, nxt = next((e, x) for e, x in adj[cur] if not visited[e])
            visited[nxt_eid] = True
            prev_edge, cur = nxt_eid, nxt

    return KernelDecomposition(
        kernel=MultiGraph(len(branch), kernel_edges), isolated_cycles=isolated
    )


def kernel(core: MultiGraph) -> MultiGraph:
    """The kernel multigraph of a min-degree-2 multigraph."""
    return kernel_decomposition(core).kernel


# ---------------------------------------------------------------------------
# Class membership tests
# ---------------------------------------------------------------------------


def is_planar(g: MultiGraph) -> bool:
    return planarity_of_edges(g.n_vertices, g.edge_list())


def is_series_parallel(g: MultiGraph) -> bool:
    return series_parallel_of_edges(g.n_vertices, g.edge_list())


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialOutcome:
    kernel_vertex_count: int
    kernel_is_cubic: bool
    is_planar: bool
    is_sp: bool


@dataclass(frozen=True)
class ExperimentReport:
    n: int
    m: int
    lam: float
    trials: int
    seed: int
    p_planar: float
    se_planar: float
    p_sp: float
    se_sp: float
    p_noncubic: float
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def p_empty_kernel(self) -> float:
        return self.histogram.get(0, 0) / self.trials


def _binomial_se(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def _count_components(n: int, edges: np.ndarray) -> int:
    if edges.shape[0] == 0:
        return n
    graph = coo_matrix(
        (np.ones(edges.shape[0], dtype=np.int8), (edges[:, 0], edges[:, 1])),
        shape=(n, n),
    )
    ncomp, _ = connected_components(graph, directed=False)
    return int(ncomp)


def run_trial(n: int, m: int, rng, *, check_identities: bool = True,
              planarity_cross_check: bool = False) -> TrialOutcome:
    """One sampled graph, decomposed and classified."""
    g = sample_gnm(n, m, rng)
    core = two_core(g)
    dec = kernel_decomposition(core)
    k = dec.kernel

    if check_identities:
        ncomp_g = _count_components(n, g.edges)
        ncomp_core = _count_components(core.n_vertices, core.edges) if core.n_vertices else 0
        tree_comps = ncomp_g - ncomp_core
        if m - n != -tree_comps + k.excess():
            raise InvariantViolation(
                f"excess bookkeeping failed: m-n={m-n}, trees={tree_comps}, "
                f"kernel excess={k.excess()}"
            )

    planar = is_planar(k)
    sp = is_series_parallel(k)
    if planarity_cross_check and is_planar(g) != planar:
        raise InvariantViolation("whole-graph planarity disagrees with kernel planarity")
    return TrialOutcome(
        kernel_vertex_count=k.n_vertices,
        kernel_is_cubic=k.is_cubic(),
        is_planar=planar,
        is_sp=sp,
    )


def run_experiment(
    lam: float,
    n: int,
    trials: int,
    seed: int = 0,
    *,
    check_identities: bool = True,
    planarity_cross_check_max_n: int = 2000,
) -> ExperimentReport:
    """Estimate planarity / series-parallelness frequencies at the window.

    Deterministic for a given (seed, trials, n, lam): trial t uses a
    generator seeded from (seed, t).
    """
    if n < 1000:
        raise ValueError("experiments require n >= 1000")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    m = critical_edge_count(n, lam)

    n_planar = n_sp = n_noncubic = 0
    hist: Counter = Counter()
    cross = n <= planarity_cross_check_max_n
    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence((seed, t)))
        out = run_trial(n, m, rng, check_identities=check_identities,
                        planarity_cross_check=cross)
        n_planar += out.is_planar
        n_sp += out.is_sp
        n_noncubic += not out.kernel_is_cubic
        hist[out.kernel_vertex_count] += 1

    p_planar = n_planar / trials
    p_sp = n_sp / trials
    return ExperimentReport(
        n=n,
        m=m,
        lam=lam,
        trials=trials,
        seed=seed,
        p_planar=p_planar,
        se_planar=_binomial_se(p_planar, trials),
        p_sp=p_sp,
        se_sp=_binomial_se(p_sp, trials),
        p_noncubic=n_noncubic / trials,
        histogram=dict(sorted(hist.items())),
    )


# ---------------------------------------------------------------------------
# Report interchange
# ---------------------------------------------------------------------------


def report_to_json(report: ExperimentReport) -> str:
    payload = {
        "n": report.n,
        "m": report.m,
        "lambda": report.lam,
        "trials": report.trials,
        "seed": report.seed,
        "p_planar": report.p_planar,
        "se_planar": report.se_planar,
        "p_sp": report.p_sp,
        "se_sp": report.se_sp,
        "p_noncubic": report.p_noncubic,
        "histogram": {str(k): v for k, v in report.histogram.items()},
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def report_from_json(text: str) -> ExperimentReport:
    d = json.loads(text)
    return ExperimentReport(
        n=d["n"],
        m=d["m"],
        lam=d["lambda"],
        trials=d["trials"],
        seed=d["seed"],
        p_planar=d["p_planar"],
        se_planar=d["se_planar"],
        p_sp=d["p_sp"],
        se_sp=d["se_sp"],
        p_noncubic=d["p_noncubic"],
        histogram={int(k): v for k, v in d["histogram"].items()},
    )


def report_to_csv(report: ExperimentReport, fileobj) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["metric", "value"])
    writer.writerow(["n", report.n])
    writer.writerow(["m", report.m])
    writer.writerow(["lambda", format(report.lam, ".17g")])
    writer.writerow(["trials", report.trials])
    writer.writerow(["seed", report.seed])
    for name in ("p_planar", "se_planar", "p_sp", "se_sp", "p_noncubic"):
        writer.writerow([name, format(getattr(report, name), ".17g")])
    for size, count in report.histogram.items():
        writer.writerow([f"histogram_{size}", count])


def report_from_csv(fileobj) -> ExperimentReport:
    reader = csv.reader(fileobj)
    header = next(reader)
    if header != ["metric", "value"]:
        raise ValueError(f"unexpected report header: {header!r}")
    fields: dict[str, str] = {}
    hist: dict[int, int] = {}
    for row in reader:
        if not row:
            continue
        key, value = row
        if key.startswith("histogram_"):
            hist[int(key.removeprefix("histogram_"))] = int(value)
        else:
            fields[key] = value
    return ExperimentReport(
        n=int(fields["n"]),
        m=int(fields["m"]),
        lam=float(fields["lambda"]),
        trials=int(fields["trials"]),
        seed=int(fields["seed"]),
        p_planar=float(fields["p_planar"]),
        se_planar=float(fields["se_planar"]),
        p_sp=float(fields["p_sp"]),
        se_sp=float(fields["se_sp"]),
        p_noncubic=float(fields["p_noncubic"]),
        histogram=hist,
    )
