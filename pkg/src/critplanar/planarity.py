"""Planarity and series-parallel recognition for labelled multigraphs.

Planarity is decided exactly: the multigraph is first made simple by
subdividing every loop twice and every member of a parallel bundle once
(planarity-invariant), then each biconnected component is tested with an
incremental face-based embedding (Demoucron-style).  The graphs this runs
on are small (kernels, and cross-check graphs up to a few thousand
vertices), so the quadratic-ish bound of the incremental algorithm is
irrelevant next to its auditability.

Series-parallelness (no K4 minor) is decided by exhaustive reduction:
delete loops, collapse parallel bundles, drop vertices of degree <= 1,
suppress degree-2 vertices; the graph has no K4 minor iff everything
vanishes.
"""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from typing import Iterable, Sequence

__all__ = ["planarity_of_edges", "series_parallel_of_edges", "subdivide_to_simple"]

Edge = tuple[int, int]


def subdivide_to_simple(n: int, edges: Iterable[Edge]) -> tuple[int, list[Edge]]:
    """Replace loops (two subdivision points) and parallel edges (one each)
    so the result is a simple graph with identical planarity."""
    edges = [tuple(sorted(e)) for e in edges]
    mult = Counter(e for e in edges if e[0] != e[1])
    out: list[Edge] = []
    nxt = n
    for u, v in edges:
        if u == v:
            a, b = nxt, nxt + 1
            nxt += 2
            out.extend([(u, a), (a, b), (b, u)])
        elif mult[(u, v)] > 1:
            w = nxt
            nxt += 1
            out.extend([(u, w), (w, v)])
        else:
            out.append((u, v))
    return nxt, out


def planarity_of_edges(n: int, edges: Iterable[Edge]) -> bool:
    """Exact planarity of a multigraph given as (vertex count, edge multiset)."""
    _, simple = subdivide_to_simple(n, edges)
    for component_edges in _biconnected_edge_groups(simple):
        if len(component_edges) > 8 and not _demoucron(component_edges):
            return False
    return True


# ---------------------------------------------------------------------------
# Biconnected decomposition (iterative Hopcroft-Tarjan)
# ---------------------------------------------------------------------------


def _biconnected_edge_groups(edges: Sequence[Edge]) -> list[list[Edge]]:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int] = {}
    stack: list[Edge] = []
    groups: list[list[Edge]] = []
    counter = 0

    for root in adj:
        if root in disc:
            continue
        work = [(root, iter(adj[root]))]
        disc[root] = low[root] = counter
        counter += 1
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((v, w))
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                elif w != parent.get(v) and disc[w] < disc[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if not advanced:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        group = []
                        while stack and disc[stack[-1][0]] >= disc[v]:
                            group.append(stack.pop())
                        if stack:
                            group.append(stack.pop())  # the (u, v) tree edge
                        if group:
                            groups.append(group)
    return groups


# ---------------------------------------------------------------------------
# Demoucron incremental embedding (input: biconnected simple graph)
# ---------------------------------------------------------------------------


def _demoucron(edges: Sequence[Edge]) -> bool:
    adj: dict[int, set[int]] = defaultdict(set)
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    n = len(adj)
    m = len(edges)
    if n <= 4 or m <= 8:
        return True
    if m > 3 * n - 6:
        return False

    cycle = _find_cycle(adj)
    h_vertices = set(cycle)
    h_edges = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    remaining = {frozenset(e) for e in edges} - h_edges
    faces: list[list[int]] = [list(cycle), list(cycle)]

    while remaining:
        fragments = _fragments(adj, h_vertices, remaining)
        if not fragments:
            break
        face_sets = [set(f) for f in faces]
        chosen = None
        for frag in fragments:
            contacts, _comp = frag
            admissible = [i for i, fs in enumerate(face_sets) if contacts <= fs]
            if not admissible:
                return False
            if chosen is None or (len(admissible) == 1 and len(chosen[1]) != 1):
                chosen = (frag, admissible)
            if len(admissible) == 1:
                chosen = (frag, admissible)
                break
        (contacts, comp), admissible = chosen
        path = _fragment_path(adj, h_vertices, contacts, comp)
        face_idx = admissible[0]

        for x, y in zip(path, path[1:]):
            remaining.discard(frozenset((x, y)))
            h_edges.add(frozenset((x, y)))
        h_vertices.update(path[1:-1])

        face = faces[face_idx]
        a, b = path[0], path[-1]
        ia, ib = face.index(a), face.index(b)
        if ia <= ib:
            arc1 = face[ia : ib + 1]
            arc2 = face[ib:] + face[: ia + 1]
        else:
            arc1 = face[ia:] + face[: ib + 1]
            arc2 = face[ib : ia + 1]
        interior = path[1:-1]
        faces[face_idx] = arc1 + list(reversed(interior))
        faces.append(arc2 + interior)
    return True


def _find_cycle(adj: dict[int, set[int]]) -> list[int]:
    root = next(iter(adj))
    parent = {root: None}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
            elif w != parent[v]:
                # back or cross edge in DFS-ish traversal: climb to meet
                path_v = _ancestry(parent, v)
                path_w = _ancestry(parent, w)
                common = (set(path_v) & set(path_w))
                # lowest common ancestor: first common on path_v
                lca = next(x for x in path_v if x in common)
                seg_v = path_v[: path_v.index(lca) + 1]
                seg_w = path_w[: path_w.index(lca) + 1]
                cycle = seg_v + list(reversed(seg_w[:-1]))
                if len(cycle) >= 3:
                    return cycle
    raise ValueError("biconnected component with no cycle")


def _ancestry(parent: dict[int, int | None], v: int) -> list[int]:
    out = [v]
    while parent[v] is not None:
        v = parent[v]
        out.append(v)
    return out


def _fragments(adj, h_vertices, remaining):
    """Fragments of G relative to the embedded subgraph H.

    Each fragment is (contact vertices, component vertex set); chords use an
    empty component set.
    """
    frags = []
    for e in remaining:
        u, v = tuple(e)
        if u in h_vertices and v in h_vertices:
            frags.append(({u, v}, frozenset()))
    seen: set[int] = set()
    for start in adj:
        if start in h_vertices or start in seen:
            continue
        comp = {start}
        queue = deque([start])
        contacts = set()
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in h_vertices:
                    contacts.add(y)
                elif y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        if len(contacts) < 2:
            raise AssertionError("fragment with < 2 contacts in a biconnected graph")
        frags.append((contacts, frozenset(comp)))
    return frags


def _fragment_path(adj, h_vertices, contacts, comp):
    """A path between two distinct contacts whose interior avoids H."""
    a = next(iter(contacts))
    if not comp:  # chord
        others = contacts - {a}
        return [a, next(iter(others))]
    parent: dict[int, int] = {}
    queue = deque()
    for x in adj[a]:
        if x in comp:
            parent[x] = a
            queue.append(x)
    while queue:
        x = queue.popleft()
        hit = next((b for b in adj[x] if b in contacts and b != a), None)
        if hit is not None:
            path = [hit, x]
            while path[-1] != a:
                path.append(parent[path[-1]])
            path.reverse()
            return path
        for y in adj[x]:
            if y in comp and y not in parent:
                parent[y] = x
                queue.append(y)
    raise AssertionError("no path between fragment contacts")


# ---------------------------------------------------------------------------
# Series-parallel recognition by reduction
# ---------------------------------------------------------------------------


def series_parallel_of_edges(n: int, edges: Iterable[Edge]) -> bool:
    """True iff the multigraph has no K4 minor (reduces to nothing)."""
    mult: Counter = Counter()
    loops: Counter = Counter()
    verts = set(range(n))
    for u, v in edges:
        if u == v:
            loops[u] += 1
        else:
            mult[tuple(sorted((u, v)))] += 1

    def degree(v: int) -> int:
        d = 2 * loops[v]
        for (a, b), k in mult.items():
            if v == a or v == b:
                d += k
        return d

    changed = True
    while changed:
        changed = False
        if loops:
            loops.clear()
            changed = True
        for e in [e for e, k in mult.items() if k > 1]:
            mult[e] = 1
            changed = True
        for v in list(verts):
            d = degree(v)
            if d == 0:
                verts.discard(v)
                changed = True
            elif d == 1:
                verts.discard(v)
                for e in [e for e in mult if v in e]:
                    del mult[e]
                changed = True
        for v in list(verts):
            if loops[v]:
                continue
            inc = [e for e, k in mult.items() for _ in range(k) if v in e]
            if len(inc) == 2 and degree(v) == 2:
                (e1, e2) = inc
                a = e1[0] if e1[1] == v else e1[1]
                b = e2[0] if e2[1] == v else e2[1]
                if a == b:
                    continue  # parallel pair through v; handled after collapse
                del mult[e1]
                if e2 != e1:
                    del mult[e2]
                verts.discard(v)
                mult[tuple(sorted((a, b)))] += 1
                changed = True
                break  # degrees shifted; rescan
    return not verts
