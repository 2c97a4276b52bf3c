"""Shared corpus builders and independent oracles for the test suite."""
from __future__ import annotations

import itertools
import math

import numpy as np

from linkbomb import DirectedMultigraph, GeneratorConfig, generate


def small_random_graph(rng, n_min=3, n_max=8, extra_edges=3, multiplicity=2) -> DirectedMultigraph:
    """Sparse random multigraph for enumeration-friendly oracles."""
    n = int(rng.integers(n_min, n_max + 1))
    n_edges = int(rng.integers(1, n + extra_edges + 1))
    edges: dict[tuple[int, int], int] = {}
    for _ in range(n_edges):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n - 1))
        if v >= u:
            v += 1
        m = int(rng.integers(1, multiplicity + 1))
        edges[(u, v)] = edges.get((u, v), 0) + m
    return DirectedMultigraph.from_edges(n, edges)


def mixed_model_graph(seed: int, n: int) -> DirectedMultigraph:
    """Cycle through the three generator models deterministically."""
    model = ("random", "ba", "mwdta")[seed % 3]
    if model == "random":
        cfg = GeneratorConfig("random", n, p=min(1.0, 3.0 / n), seed=seed)
    elif model == "ba":
        cfg = GeneratorConfig("ba", n, m=min(3, n - 1), seed=seed)
    else:
        cfg = GeneratorConfig("mwdta", n, seed=seed)
    return generate(cfg)


def enumerate_paths(g: DirectedMultigraph, u: int, v: int, max_len: int):
    """All simple-walk node sequences u -> v up to max_len edges (oracle use)."""
    paths = []

    def extend(seq):
        cur = seq[-1]
        if len(seq) - 1 >= max_len:
            return
        for (w, _m) in g.out_edges(cur):
            if w == v:
                paths.append(seq + [w])
            else:
                extend(seq + [w])

    if u == v:
        return [[u]]
    extend([u])
    return paths


def bfs_distance_oracle(g: DirectedMultigraph, u: int, v: int) -> float:
    """Shortest u->v distance by exhaustive walk extension (independent of BFS)."""
    if u == v:
        return 0
    best = math.inf
    frontier = {u}
    for depth in range(1, g.node_count + 1):
        nxt = set()
        for x in frontier:
            for (w, _m) in g.out_edges(x):
                if w == v:
                    best = min(best, depth)
                nxt.add(w)
        frontier = nxt
    return best


def admissible_shortest_len(g: DirectedMultigraph, source: int, target: int, excluded) -> float:
    """Shortest admissible walk length for a flow query (target terminal-only)."""
    excluded = set(excluded)
    best = math.inf
    frontier = {source}
    seen = set()
    for depth in range(1, g.node_count + 2):
        nxt = set()
        for x in frontier:
            for (w, _m) in g.out_edges(x):
                if w == target:
                    return depth
                if w not in excluded and w not in seen:
                    nxt.add(w)
                    seen.add(w)
        frontier = nxt
        if not frontier:
            break
    return best


def attacker_edges_only_differ(before: DirectedMultigraph, after: DirectedMultigraph, attackers) -> bool:
    attackers = set(attackers)
    b = {(u, v): m for (u, v, m) in before.edges()}
    a = {(u, v): m for (u, v, m) in after.edges()}
    for key in set(b) | set(a):
        if b.get(key) != a.get(key) and key[0] not in attackers:
            return False
    return True


def all_edges_to_victim(spec) -> bool:
    """Flow-equivalent to the individual attack: every attacker has at least
    one out-edge and every out-edge points at the victim (any multiplicity)."""
    for a in spec.attackers:
        targets = spec.assignment.get(a, {})
        if not targets:
            return False
        if set(targets) != {spec.victim}:
            return False
    return True


def multisets(items, max_size):
    """All multisets of size 1..max_size over items, as sorted tuples."""
    out = []
    for size in range(1, max_size + 1):
        out.extend(itertools.combinations_with_replacement(items, size))
    return out
