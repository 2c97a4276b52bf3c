"""Seeded random graph models normalized to comparable edge counts.

Three models:

  random -- directed Erdos-Renyi G(n, p): every ordered pair gets an
            edge independently with probability p.
  ba     -- directed preferential attachment: nodes arrive sequentially
            and send m out-edges to earlier nodes, drawn without
            replacement with probability proportional to in-degree + 1.
            All edges point backwards in arrival order, so the result is
            acyclic, and in-degrees are power-law heavy.
  mwdta  -- mixed-attachment web model in which every node keeps at
            least one out-edge: each arriving node draws its out-degree
            from a truncated power law (minimum 1) and attaches each
            edge uniformly with probability beta, preferentially
            (in-degree + 1) otherwise. Compared with ba, the in-degree
            mass spreads over many mid-sized nodes instead of a few huge
            hubs. The construction is an approximation to that family of
            models, not a calibrated fit.

Setting target_expected_edges rescales a model to a desired expected
edge count: analytically for random (p = target / n(n-1)), via
m = round(target / n) for ba, and by solving the power-law exponent for
the required mean out-degree for mwdta.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DirectedMultigraph

__all__ = ["GeneratorConfig", "generate", "gen_er", "gen_ba", "gen_mwdta"]

MODELS = ("random", "ba", "mwdta")


@dataclass(frozen=True)
class GeneratorConfig:
    model: str
    n: int
    p: float = 0.005  # random: edge probability
    m: int = 5  # ba: out-edges per new vertex
    beta: float = 0.3  # mwdta: uniform-attachment weight
    tau: float = 2.5  # mwdta: out-degree power-law exponent
    d_max: int = 50  # mwdta: out-degree cap
    seed: int = 0
    target_expected_edges: float | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.tau <= 1.0:
            raise ValueError(f"tau must be > 1, got {self.tau}")
        if self.d_max < 1:
            raise ValueError(f"d_max must be >= 1, got {self.d_max}")
        if self.target_expected_edges is not None and self.target_expected_edges <= 0:
            raise ValueError("target_expected_edges must be positive")


def generate(cfg: GeneratorConfig) -> DirectedMultigraph:
    if cfg.model == "random":
        return gen_er(cfg)
    if cfg.model == "ba":
        return gen_ba(cfg)
    return gen_mwdta(cfg)


def gen_er(cfg: GeneratorConfig) -> DirectedMultigraph:
    n = cfg.n
    p = cfg.p
    if cfg.target_expected_edges is not None:
        if n < 2:
            raise ValueError("cannot target an edge count on a single node")
        p = min(1.0, cfg.target_expected_edges / (n * (n - 1)))
    rng = np.random.default_rng(cfg.seed)
    edges: dict[tuple[int, int], int] = {}
    for u in range(n):
        hits = np.flatnonzero(rng.random(n) < p)
        for v in hits:
            if v != u:
                edges[(u, int(v))] = 1
    return DirectedMultigraph.from_edges(n, edges)


def gen_ba(cfg: GeneratorConfig) -> DirectedMultigraph:
    n = cfg.n
    m = cfg.m
    if cfg.target_expected_edges is not None:
        m = max(1, round(cfg.target_expected_edges / n))
    if n <= m:
        raise ValueError(f"ba model needs n > m, got n={n}, m={m}")
    rng = np.random.default_rng(cfg.seed)
    edges: dict[tuple[int, int], int] = {}
    indeg = np.zeros(n)
    # Seed core: nodes 0..m, each pointing at all earlier nodes, so every
    # later node has exactly m candidates' worth of history to attach to.
    for i in range(1, m + 1):
        for j in range(i):
            edges[(i, j)] = 1
            indeg[j] += 1
    for i in range(m + 1, n):
        w = indeg[:i] + 1.0
        targets = rng.choice(i, size=m, replace=False, p=w / w.sum())
        for t in targets:
            edges[(i, int(t))] = 1
            indeg[t] += 1
    return DirectedMultigraph.from_edges(n, edges)


def _powerlaw_mean(tau: float, d_max: int) -> float:
    d = np.arange(1, d_max + 1, dtype=float)
    w = d**-tau
    return float((w * d).sum() / w.sum())


def _tau_for_mean(mean: float, d_max: int) -> float:
    """Solve the truncated power-law exponent giving the requested mean."""
    lo, hi = 1.0001, 64.0
    if not _powerlaw_mean(hi, d_max) <= mean <= _powerlaw_mean(lo, d_max):
        raise ValueError(
            f"mean out-degree {mean:.3f} not reachable with d_max={d_max} "
            f"(supported range [{_powerlaw_mean(hi, d_max):.3f}, {_powerlaw_mean(lo, d_max):.3f}])"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _powerlaw_mean(mid, d_max) > mean:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def gen_mwdta(cfg: GeneratorConfig) -> DirectedMultigraph:
    n = cfg.n
    if n < 2:
        raise ValueError("mwdta model needs n >= 2 (min out-degree 1, no self-loops)")
    d_max = min(cfg.d_max, n - 1)
    tau = cfg.tau
    if cfg.target_expected_edges is not None:
        if n == 2:
            raise ValueError("cannot target an edge count with only the seed pair")
        tau = _tau_for_mean((cfg.target_expected_edges - 2) / (n - 2), d_max)
    rng = np.random.default_rng(cfg.seed)
    d = np.arange(1, d_max + 1, dtype=float)
    pmf = d**-tau
    pmf /= pmf.sum()
    out_degs = rng.choice(d_max, size=max(0, n - 2), p=pmf) + 1

    # Seed pair guarantees the first two nodes an out-edge each.
    edges: dict[tuple[int, int], int] = {(0, 1): 1, (1, 0): 1}
    indeg = np.zeros(n)
    indeg[0] = 1
    indeg[1] = 1
    for i in range(2, n):
        k = int(out_degs[i - 2])
        uniform = rng.random(k) < cfg.beta
        targets = np.empty(k, dtype=np.int64)
        n_uni = int(uniform.sum())
        if n_uni:
            targets[uniform] = rng.integers(0, i, size=n_uni)
        if k - n_uni:
            w = indeg[:i] + 1.0
            targets[~uniform] = rng.choice(i, size=k - n_uni, replace=True, p=w / w.sum())
        for t in targets:
            key = (i, int(t))
            edges[key] = edges.get(key, 0) + 1
            indeg[t] += 1
    return DirectedMultigraph.from_edges(n, edges)
