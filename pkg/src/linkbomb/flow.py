"""Flow fractions along walks of a directed multigraph.

The central quantity is the fraction of a source node's score that
reaches a target node along walks that avoid a given set of nodes as
intermediates, where each traversed edge attenuates the flow by
alpha/outdeg (parallel edges weighted by multiplicity) and the walk ends
on first arrival at the target. With source == target this is the cycle
flow, whose geometric amplification 1/(1-gamma) is what makes cycles
through a node multiply its incoming gains.

Two routes are provided: an absorbing fixed-point solve (exact up to the
solver tolerance, sums infinite walk families), and an explicit walk
enumeration capped at a maximum length, kept as an independent oracle
with an explicit tail bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DirectedMultigraph
from .pagerank import ConvergenceError

__all__ = [
    "FlowQuery",
    "FlowResult",
    "flow_fraction",
    "flow_fraction_bruteforce",
    "cycle_amplification",
    "attack_magnitude_formula",
    "length_flow",
]


@dataclass(frozen=True)
class FlowQuery:
    """Source/target pair with nodes excluded as intermediates.

    The exclusion set constrains intermediates only: the source is always
    a valid origin and the target always a valid terminal, whether or not
    they appear in `excluded`. source == target asks for the cycle flow.
    """

    source: int
    target: int
    excluded: frozenset[int] = frozenset()
    alpha: float = 0.85

    def __post_init__(self):
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")


@dataclass
class FlowResult:
    fraction: float
    method: str  # "linear_solve" | "enumeration"
    tail_bound: float | None = None  # enumeration only


def _absorbing_values(
    g: DirectedMultigraph,
    target: int,
    zero_nodes,
    alpha: float,
    tolerance: float,
    max_iterations: int,
):
    """Fixed point of h(u) = alpha/outdeg(u) * sum mult(u,w) h(w).

    h(target) is pinned to 1 and h(x) to 0 for x in zero_nodes - {target};
    dangling nodes keep h = 0. Returns (h, residual, iterations) where the
    residual is the certified max-norm defect of the returned vector. The
    update is a max-norm contraction with factor alpha, so alpha < 1
    always converges; alpha = 1 converges only when the relevant walk
    families are finite.
    """
    n = g.node_count
    r = g.forward_matrix()
    zeros = np.array(sorted(set(zero_nodes) - {target}), dtype=np.intp)
    h = np.zeros(n)
    h[target] = 1.0
    resid = np.inf
    for it in range(1, max_iterations + 1):
        nxt = alpha * (r @ h)
        nxt[target] = 1.0
        if len(zeros):
            nxt[zeros] = 0.0
        resid = float(np.max(np.abs(nxt - h)))
        if resid <= tolerance:
            return h, resid, it
        h = nxt
    raise ConvergenceError(
        f"absorbing solve did not converge in {max_iterations} iterations "
        f"(last residual {resid:.3e})",
        residual=resid,
    )


def flow_fraction(
    g: DirectedMultigraph,
    q: FlowQuery,
    tolerance: float = 1e-12,
    max_iterations: int = 100_000,
) -> FlowResult:
    """Exact flow fraction via the absorbing linear solve.

    Solves the h-system pinned at the target, then expands one step from
    the source, so the source and target act purely as origin/terminal
    even when they sit in the exclusion set.
    """
    source = g._check_node(q.source)
    target = g._check_node(q.target)
    for x in q.excluded:
        g._check_node(x)
    h, _resid, _it = _absorbing_values(g, target, q.excluded, q.alpha, tolerance, max_iterations)
    od = g.out_degree(source)
    if od == 0:
        frac = 0.0
    else:
        frac = (q.alpha / od) * sum(m * h[w] for (w, m) in g.out_edges(source))
    return FlowResult(fraction=float(frac), method="linear_solve")


def _has_cycle(g: DirectedMultigraph) -> bool:
    # Kahn's algorithm on distinct edges.
    n = g.node_count
    indeg = [0] * n
    out_adj = [[] for _ in range(n)]
    for (u, v, _m) in g.edges():
        out_adj[u].append(v)
        indeg[v] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in out_adj[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen < n


def flow_fraction_bruteforce(g: DirectedMultigraph, q: FlowQuery, max_len: int) -> FlowResult:
    """Walk-enumeration oracle: sum per-walk products of alpha/outdeg.

    Enumerates every admissible walk of length <= max_len from source to
    target (target terminal-only, excluded nodes never intermediate) and
    sums multiplicity-weighted step products. The result is a lower bound
    on the exact fraction with error at most the returned tail bound
    alpha^(max_len+1) / (1 - alpha). Intended for small graphs only.
    """
    source = g._check_node(q.source)
    target = g._check_node(q.target)
    for x in q.excluded:
        g._check_node(x)
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    alpha = q.alpha
    if alpha >= 1.0:
        if _has_cycle(g):
            raise ValueError("alpha = 1 with cycles: enumeration tail bound unavailable")
        if max_len < g.node_count - 1:
            raise ValueError(
                "alpha = 1: need max_len >= node_count - 1 to enumerate all acyclic walks"
            )
        tail = 0.0
    else:
        tail = alpha ** (max_len + 1) / (1.0 - alpha)

    out_adj = [g.out_edges(u) for u in range(g.node_count)]
    out_deg = [g.out_degree(u) for u in range(g.node_count)]
    excluded = q.excluded
    total = 0.0
    # Iterative DFS over (node, accumulated weight, edges used).
    stack = [(source, 1.0, 0)]
    while stack:
        u, weight, used = stack.pop()
        if used >= max_len or out_deg[u] == 0:
            continue
        scale = alpha / out_deg[u]
        for (w, m) in out_adj[u]:
            step = weight * scale * m
            if w == target:
                total += step
            elif w not in excluded:
                stack.append((w, step, used + 1))
    return FlowResult(fraction=total, method="enumeration", tail_bound=tail)


def cycle_amplification(gamma: float) -> float:
    """Geometric blow-up 1/(1-gamma) from re-circulating a cycle flow gamma."""
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"cycle flow must be in [0, 1), got {gamma}")
    return 1.0 / (1.0 - gamma)


def attack_magnitude_formula(delta: float, gamma_v0: float, rho_v0vi: float, p_i: float) -> float:
    """Victim gain from a single attacker pushing raw flow `delta`.

    delta is the attacker's score times the fraction reaching the victim
    (victim terminal-only); gamma_v0 is the victim's cycle flow avoiding
    the attacker; rho_v0vi the victim-to-attacker flow avoiding both as
    intermediates; p_i the attacker's pre-attack score. The closed form

        delta / (1 - gamma_v0 - rho_v0vi * delta / p_i)

    sums the full feedback series and is monotone in delta.
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if p_i <= 0:
        raise ValueError(f"p_i must be positive, got {p_i}")
    denom = 1.0 - gamma_v0 - rho_v0vi * delta / p_i
    if denom <= 0:
        raise ValueError(f"feedback factor must stay below 1 (denominator {denom:.3e})")
    return delta / denom


def length_flow(
    g: DirectedMultigraph,
    source: int,
    l: int,
    alpha: float,
    p_source: float = 1.0,
) -> tuple[np.ndarray, float]:
    """Per-node score increments from walks of length exactly l out of source.

    Runs l rounds of the propagation recurrence seeded with p_source on
    the source node and returns (increments, total). The recurrence is
    linear in the seed, so p_source = 1 gives plain fractions. The total
    is bounded by alpha**l * p_source, with equality exactly when no mass
    was stunted by a dangling node in the first l - 1 steps.
    """
    g._check_node(source)
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    m = g.transition_matrix()
    d = np.zeros(g.node_count)
    d[source] = p_source
    for _ in range(l):
        d = alpha * (m @ d)
    return d, float(d.sum())
