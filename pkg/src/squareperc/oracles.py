"""Cross-checks between the fast routines and slow reference versions.

Each check returns a list of human-readable discrepancies (empty when the
two routes agree).  Intended for graphs with at most 64 vertices.
"""

from __future__ import annotations

from collections import Counter, deque
from itertools import combinations

import numpy as np

from .analysis import bonded_report, components_by_bfs, is_bonded_characterization, t1_components
from .graph import Graph
from .sampler import derive_trial_seed, sample_gnp
from .squares import InducedSquare, build_s, build_t1, enumerate_squares, enumerate_squares_bruteforce

ORACLE_PROBABILITIES = tuple(round(0.1 * k, 1) for k in range(1, 10))


def check_enumeration(g: Graph) -> list[str]:
    fast = enumerate_squares(g)
    slow = enumerate_squares_bruteforce(g)
    if fast == slow:
        return []
    extra = sorted(set(fast) - set(slow))[:3]
    missing = sorted(set(slow) - set(fast))[:3]
    return [f"square enumeration: fast {len(fast)} vs brute force {len(slow)}; "
            f"extra {extra}, missing {missing}"]


def _bfs_on_csr(indptr: np.ndarray, indices: np.ndarray, nv: int) -> list[int]:
    label = [-1] * nv
    cur = 0
    for s in range(nv):
        if label[s] >= 0:
            continue
        label[s] = cur
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in indices[indptr[u]:indptr[u + 1]]:
                if label[v] < 0:
                    label[v] = cur
                    queue.append(v)
        cur += 1
    return label


def _partition(keys, labels) -> set[frozenset]:
    groups: dict[int, set] = {}
    for k, lab in zip(keys, labels):
        groups.setdefault(int(lab), set()).add(k)
    return {frozenset(v) for v in groups.values()}


def check_components(g: Graph) -> list[str]:
    """Union-find partition against BFS on the materialised T1 and against
    BFS driven by per-vertex neighbour queries."""
    d = t1_components(g)
    t1 = build_t1(g, materialize=True)
    uf = _partition(d.pairs.tolist(), d.labels.tolist())
    by_csr = _partition(t1.pairs.tolist(), _bfs_on_csr(t1.indptr, t1.indices, t1.num_vertices))
    out = []
    if uf != by_csr:
        out.append(f"components: union-find {len(uf)} vs materialised BFS {len(by_csr)}")
    n = g.n
    by_query = {frozenset(f.a * (2 * n - f.a - 1) // 2 + (f.b - f.a - 1) for f in comp)
                for comp in components_by_bfs(g)}
    if uf != by_query:
        out.append(f"components: union-find {len(uf)} vs neighbour-query BFS {len(by_query)}")
    if d.num_squares != t1.num_edges:
        out.append(f"square count: union-find {d.num_squares} vs T1 edges {t1.num_edges}")
    return out


def bonded_by_definition(squares: list[InducedSquare]) -> dict[InducedSquare, bool]:
    """Bonded iff another square shares exactly three vertices.

    Two distinct induced squares never share all four vertices, so it is
    enough to find a vertex triple covered by two squares.
    """
    triples = Counter(t for sq in squares for t in combinations(sq.vertices, 3))
    return {sq: any(triples[t] > 1 for t in combinations(sq.vertices, 3)) for sq in squares}


def check_bonded(g: Graph) -> list[str]:
    squares = enumerate_squares_bruteforce(g)
    by_def = bonded_by_definition(squares)
    out = []
    bad = [sq for sq in squares if by_def[sq] != is_bonded_characterization(g, sq)]
    if bad:
        out.append(f"bonded: definition and characterisation differ on {len(bad)} squares, e.g. {bad[0]}")
    report = bonded_report(g)
    want = sorted(sq for sq, b in by_def.items() if not b)
    if sorted(report.non_bonded) != want or report.total_squares != len(squares):
        out.append(f"bonded: compiled scan lists {report.non_bonded_count} non-bonded, definition {len(want)}")
    return out


def check_line_graph(g: Graph) -> list[str]:
    t1 = build_t1(g, materialize=True)
    deg = t1.degrees()
    want = int((deg * (deg - 1) // 2).sum())
    got = build_s(g).num_edges
    return [] if got == want else [f"line graph: |E(S)| = {got}, sum C(deg, 2) = {want}"]


ALL_CHECKS = (check_enumeration, check_components, check_bonded, check_line_graph)


def check_graph(g: Graph) -> list[str]:
    return [msg for check in ALL_CHECKS for msg in check(g)]


def oracle_instance(seed: int, trial: int, n_min: int, n_max: int) -> tuple[int, float, Graph]:
    """The random instance used by trial ``trial`` of an oracle run."""
    rng = np.random.default_rng([seed & (2**64 - 1), trial])
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.choice(ORACLE_PROBABILITIES))
    return n, p, sample_gnp(n, p, derive_trial_seed(seed, trial))
