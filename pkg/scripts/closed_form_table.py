#!/usr/bin/env python3
"""Print closed-form vs solved victim scores for the canned attack patterns.

Each row is one (pattern, K, alpha) cell on the isolated graph of K
attackers plus the victim; the last column is the absolute gap between
the closed form and the power-iteration score.
"""
import argparse

from linkbomb import (
    DirectedMultigraph,
    PageRankConfig,
    apply_attack,
    attack_magnitude,
    build_pattern,
    closed_form_isolated,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="2,5,10,50", help="comma-separated attacker counts")
    ap.add_argument("--alphas", default="0.5,0.85,0.95", help="comma-separated navigation probabilities")
    args = ap.parse_args()
    sizes = [int(x) for x in args.sizes.split(",")]
    alphas = [float(x) for x in args.alphas.split(",")]

    print(f"{'pattern':<12}{'K':>4}{'alpha':>7}{'closed_form':>14}{'solved':>14}{'gap':>11}")
    for pattern in ("individual", "star", "cycle", "complete"):
        for k in sizes:
            for alpha in alphas:
                spec = build_pattern(pattern, tuple(range(1, k + 1)), 0)
                res = attack_magnitude(DirectedMultigraph(k + 1), spec, PageRankConfig(alpha))
                predicted = closed_form_isolated(pattern, k, alpha)
                gap = abs(res.victim_after - predicted)
                print(f"{pattern:<12}{k:>4}{alpha:>7.2f}{predicted:>14.8f}{res.victim_after:>14.8f}{gap:>11.1e}")


if __name__ == "__main__":
    main()
