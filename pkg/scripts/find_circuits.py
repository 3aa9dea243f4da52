"""Breadth-first search for the |100> <-> |011> swap over each reversible-gate alphabet.

Prints the minimal circuit per alphabet, its CCNOT count, the number of
permutations explored and the size of the generated group.  With --out the
not+ccnot circuit is written as a JSON circuit file.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from blindfanout.circuits import (
    ALPHABETS, CERTIFICATE_9, circuit_unitary, dumps_circuit, generated_group, search_circuit, swap_target,
)
from blindfanout.fanout import FanoutPhases, build_fanout_unitary


@dataclass
class SearchConfig:
    max_gates: int = 9
    out: str | None = None


def run(cfg: SearchConfig) -> dict:
    u00 = build_fanout_unitary(FanoutPhases(0, 0))
    found = {}
    for alphabet in ALPHABETS:
        res = search_circuit(swap_target(), alphabet, cfg.max_gates)
        c = res.circuit
        exact = np.array_equal(circuit_unitary(c), u00)
        print(f"{alphabet:>15}: {len(c)} gates, {c.count('CCNOT')} CCNOT, explored {res.explored}, "
              f"group order {len(generated_group(alphabet))}, exact={exact}")
        print(f"{'':>17}{c}")
        found[alphabet] = c
    print(f"{'9-gate reference':>15}: exact={np.array_equal(circuit_unitary(CERTIFICATE_9), u00)}, "
          f"{CERTIFICATE_9.count('CCNOT')} CCNOT")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(dumps_circuit(found["not+ccnot"]) + "\n")
        print(f"wrote {cfg.out}")
    return found


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-gates", type=int, default=SearchConfig.max_gates)
    ap.add_argument("--out")
    args = ap.parse_args()
    run(SearchConfig(args.max_gates, args.out))
