#!/usr/bin/env python3
"""Run the full experiment battery and drop reports + figures in ./out.

Covers every CLI surface with the canonical desk-scale settings: witness
searches at seed 42, the 10^6-trial probability checks, the Perron-tree
blow sweep, and the maximal-operator inclusion demo.
"""

import pathlib
import sys

from dirmax import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"


def main() -> int:
    OUT.mkdir(exist_ok=True)
    runs = [
        ["gen", "--set", "rand-lac", "--count", "16", "--seed", "42",
         "--csv", str(OUT / "rand_lac_seed42.csv"),
         "--svg", str(OUT / "rand_lac_seed42.svg")],
        ["factor", "--set", "lin", "--count", "16",
         "--json", str(OUT / "factor_lin16.json")],
        ["capacity", "--set", "lac", "--count", "20", "--n", "2",
         "--strategy", "exact", "--json", str(OUT / "capacity_lac_n2.json")],
        ["witness", "t1", "--n", "2", "--seed", "42", "--a-max", "20000",
         "--json", str(OUT / "t1_n2_seed42.json")],
        ["witness", "t2", "--n", "1", "--seed", "42", "--d-max", "100000",
         "--json", str(OUT / "t2_n1_seed42.json"),
         "--svg", str(OUT / "t2_filling.svg")],
        ["witness", "t2", "--n", "2", "--seed", "42", "--d-max", "100000",
         "--json", str(OUT / "t2_n2_seed42.json")],
        ["verify", "prob", "--n", "1", "--trials", "1000000", "--seed", "7",
         "--json", str(OUT / "prob_n1.json"), "--csv", str(OUT / "prob_n1.csv")],
        ["verify", "prob", "--n", "2", "--trials", "1000000", "--seed", "7",
         "--json", str(OUT / "prob_n2.json"), "--csv", str(OUT / "prob_n2.csv")],
        ["verify", "p5", "--trials", "10000", "--seed", "2024",
         "--n-list", "1,2,3,5", "--json", str(OUT / "p5.json")],
        ["verify", "spacing", "--n", "3", "--trials", "10000", "--seed", "777",
         "--json", str(OUT / "spacing.json")],
        ["event-a", "--n", "1", "--seed", "42", "--d-range", "50,10000",
         "--json", str(OUT / "event_a_n1.json")],
        ["blow", "--j-min", "1", "--j-max", "4", "--resolution", "256",
         "--json", str(OUT / "blow.json"), "--svg", str(OUT / "tree_j4.svg")],
        ["maxop", "--j", "3", "--resolution", "256",
         "--json", str(OUT / "maxop.json"),
         "--pgm-mask", str(OUT / "tree_mask.pgm"),
         "--pgm-field", str(OUT / "max_field.pgm"),
         "--svg", str(OUT / "maxop_overlay.svg")],
    ]
    worst = 0
    for args in runs:
        print("$ dirmax", " ".join(args))
        code = cli.main(args)
        worst = max(worst, code)
        print()
    print(f"reports in {OUT}; worst exit code {worst}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
