"""Optimal disguised attacks and link-farm configuration.

A disguised attack must keep every attacker at shortest-path distance at
least ell from the victim, so attackers cannot link to the victim
directly. The key quantity is the forward value f(u): the fraction of
u's score that reaches the victim along walks with the victim as
terminal but never intermediate node. The best single-attacker move is
one link to the forward-value maximizer among nodes at distance exactly
ell - 1, and there is always a joint optimum where every attacker points
at the same such node — which is found by scanning the candidate shell
with full solves.

A link farm is the ell = 1 self-disguised case: all farm members point
at the target, and the target (which controls its own links, but cannot
self-loop) points wherever the flow returned to it is largest.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attacks import AttackSpec, apply_attack, attack_magnitude
from .flow import _absorbing_values
from .graph import DirectedMultigraph
from .pagerank import PageRankConfig

__all__ = [
    "ForwardValueMap",
    "DisguisedAttackPlan",
    "forward_values",
    "candidate_set",
    "value_of",
    "optimal_disguised_single",
    "optimal_disguised_joint",
    "optimal_link_farm",
]


@dataclass
class ForwardValueMap:
    """Per-node forward values toward a fixed target.

    values[target] is pinned to 1; every other node's value is
    alpha/outdeg times the sum over its out-edges (0 for dangling nodes),
    and is bounded by alpha ** distance(node, target).
    """

    target: int
    values: np.ndarray
    alpha: float
    residual: float


@dataclass
class DisguisedAttackPlan:
    attackers: tuple[int, ...]
    victim: int
    ell: int
    chosen_node: int
    per_attacker_value: dict[int, float]
    magnitude: float


def forward_values(
    g: DirectedMultigraph,
    target: int,
    alpha: float,
    tolerance: float = 1e-12,
    max_iterations: int = 100_000,
) -> ForwardValueMap:
    target = g._check_node(target)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    h, resid, _it = _absorbing_values(g, target, frozenset(), alpha, tolerance, max_iterations)
    return ForwardValueMap(target=target, values=h, alpha=alpha, residual=resid)


def candidate_set(g: DirectedMultigraph, victim: int, ell: int) -> set[int]:
    """Nodes at shortest distance exactly ell - 1 from the victim.

    These are the only nodes worth linking to under a distance->= ell
    disguise constraint. May be empty; callers treat that as infeasible.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    dist = g.distances_to(victim)
    want = ell - 1
    return {u for u, d in enumerate(dist) if d == want}


def value_of(g: DirectedMultigraph, attacker: int, u: int, victim: int, alpha: float) -> float:
    """Forward value the attacker achieves by pointing only at u.

    The attacker's out-edges are replaced by the single probe edge
    (attacker, u); the result is the attacker's forward value toward the
    victim on that modified graph.
    """
    attacker = g._check_node(attacker)
    u = g._check_node(u)
    if u == attacker:
        raise ValueError(f"probe edge ({attacker}, {u}) would be a self-loop")
    probed = g.remove_out_edges(attacker).add_edge(attacker, u)
    fwd = forward_values(probed, victim, alpha)
    return float(fwd.values[attacker])


def _staged(g: DirectedMultigraph, attackers) -> DirectedMultigraph:
    """The graph the plan actually builds on: attacker out-edges are replaced
    no matter what, so planning distances and values ignore them."""
    for a in attackers:
        g = g.remove_out_edges(a)
    return g


def _candidates_for(staged, attackers, victim, ell) -> list[int]:
    cands = candidate_set(staged, victim, ell)
    cands -= set(attackers)  # pointing an attacker at itself is a self-loop
    if ell >= 2:
        cands.discard(victim)
    out = sorted(cands)
    if not out:
        raise ValueError(
            f"no usable node at distance {ell - 1} from victim {victim}: disguised attack infeasible"
        )
    return out


def optimal_disguised_single(
    g: DirectedMultigraph,
    attacker: int,
    victim: int,
    ell: int,
    alpha: float,
    cfg: PageRankConfig | None = None,
) -> DisguisedAttackPlan:
    """Best single link for one attacker under the distance constraint.

    Scans the distance ell - 1 shell for the forward-value maximizer
    (lowest id on ties); scanning farther shells can never do better.
    With ell = 1 the shell is just the victim and the plan degenerates to
    the direct individual attack.
    """
    if attacker == victim:
        raise ValueError("attacker and victim must differ")
    cands = _candidates_for(_staged(g, (attacker,)), (attacker,), victim, ell)
    best_u, best_v = None, -1.0
    for u in cands:
        val = value_of(g, attacker, u, victim, alpha)
        if val > best_v:
            best_u, best_v = u, val
    spec = AttackSpec(
        attackers=(attacker,),
        victim=victim,
        assignment={attacker: {best_u: 1}},
        pattern_tag="custom",
    )
    result = attack_magnitude(g, spec, cfg or PageRankConfig(alpha=alpha))
    return DisguisedAttackPlan(
        attackers=(attacker,),
        victim=victim,
        ell=ell,
        chosen_node=best_u,
        per_attacker_value={attacker: best_v},
        magnitude=result.magnitude,
    )


def optimal_disguised_joint(
    g: DirectedMultigraph,
    attackers,
    victim: int,
    ell: int,
    alpha: float,
    cfg: PageRankConfig | None = None,
) -> DisguisedAttackPlan:
    """Best joint attack where every attacker points at one shared node.

    Individually optimal nodes can differ between attackers, yet some
    single shared node always does at least as well as any mix of
    per-attacker single links, so a full solve per candidate (at most one
    per node in the shell) finds a joint optimum.
    """
    attackers = tuple(int(a) for a in attackers)
    if victim in attackers:
        raise ValueError(f"victim {victim} cannot be an attacker")
    cfg = cfg or PageRankConfig(alpha=alpha)
    cands = _candidates_for(_staged(g, attackers), attackers, victim, ell)
    best_w, best_mag = None, -np.inf
    for w in cands:
        spec = AttackSpec(
            attackers=attackers,
            victim=victim,
            assignment={a: {w: 1} for a in attackers},
            pattern_tag="custom",
        )
        res = attack_magnitude(g, spec, cfg)
        if res.magnitude > best_mag:
            best_w, best_mag = w, res.magnitude
    attacked = apply_attack(
        g,
        AttackSpec(
            attackers=attackers,
            victim=victim,
            assignment={a: {best_w: 1} for a in attackers},
            pattern_tag="custom",
        ),
    )
    fwd = forward_values(attacked, victim, alpha)
    return DisguisedAttackPlan(
        attackers=attackers,
        victim=victim,
        ell=ell,
        chosen_node=best_w,
        per_attacker_value={a: float(fwd.values[a]) for a in attackers},
        magnitude=best_mag,
    )


def optimal_link_farm(
    g: DirectedMultigraph,
    farm_nodes,
    target: int,
    alpha: float,
    cfg: PageRankConfig | None = None,
) -> AttackSpec:
    """Best configuration for a farm that controls the target's links too.

    Every farm member except the target gets a single link to the target
    (the direct individual attack). The target then takes the single
    out-edge that maximizes the flow returned to itself, i.e. the forward
    value toward the target on the post-attack graph, over all nodes but
    itself (self-loops are impossible); ties go to the lowest id. After
    the direct attack the farm members all sit at the best achievable
    return, so the chosen node is a farm member unless an outsider ties.
    """
    farm = tuple(int(v) for v in farm_nodes)
    if len(set(farm)) != len(farm):
        raise ValueError(f"farm nodes must be distinct, got {farm}")
    if len(farm) < 2:
        raise ValueError("link farm needs at least 2 nodes to optimize")
    target = g._check_node(target)
    if target not in farm:
        raise ValueError(f"target {target} must be a farm member")
    members = tuple(v for v in farm if v != target)
    direct = AttackSpec(
        attackers=members,
        victim=target,
        assignment={a: {target: 1} for a in members},
        pattern_tag="individual",
    )
    staged = apply_attack(g, direct)
    fwd = forward_values(staged, target, alpha)
    best_u, best_v = None, -1.0
    for u in range(g.node_count):
        if u == target:
            continue
        val = float(fwd.values[u])
        if val > best_v:
            best_u, best_v = u, val
    assignment = {a: {target: 1} for a in members}
    assignment[target] = {best_u: 1}
    return AttackSpec(attackers=farm, victim=target, assignment=assignment, pattern_tag="custom")
