"""Regenerate every headline number: Hamiltonian residuals, Pauli table, circuits, cloning bound, RK4 study."""
import argparse
import math
from dataclasses import dataclass

from blindfanout.fanout import FanoutPhases, build_fanout_unitary, max_clone_fidelity
from blindfanout.hamiltonian import HamiltonianParams, synthesize_hamiltonian, verify_exponential
from blindfanout.pauli import verify_eq7

import find_circuits
import rk4_convergence


@dataclass
class ReproduceConfig:
    gammas: tuple = (0.0, 0.3, -0.3, math.pi / 4, 1.2, -2.5)
    gaps: tuple = (-2, -1, 0, 1, 3)
    clone_trials: int = 1000
    seed: int = 3


def run(cfg: ReproduceConfig) -> None:
    grid = [HamiltonianParams(g, n) for g in cfg.gammas for n in cfg.gaps]
    print("== Hamiltonian")
    print(f"max ||exp(-iH dt/hbar) - U|| over {len(grid)} points: {max(map(verify_exponential, grid)):.2e}")
    p = HamiltonianParams(0.3, 0)
    print(f"H[|100>,|011>] at gamma=0.3, N=0: {synthesize_hamiltonian(p)[3, 4]:.12g}")

    print("== Three-spin expansion (gamma=0.3, N=0)")
    rep = verify_eq7(p)
    for row in rep.coefficient_table.to_data(only_nonzero=True):
        print(f"  {row['axes']}  {row['re']:+.12f}")
    print(f"  passed={rep.passed}  max extraneous {rep.max_extraneous:.1e}")

    print("== Circuits")
    find_circuits.run(find_circuits.SearchConfig())

    print("== Cloning bound for (|1>+|0>)/sqrt2")
    s = 1 / math.sqrt(2)
    best = max_clone_fidelity(build_fanout_unitary(FanoutPhases(0, 0)), s, s, cfg.clone_trials, cfg.seed)
    print(f"max per-qubit fidelity over {cfg.clone_trials} targets: {best:.9f}")

    print("== RK4")
    rk4_convergence.run(rk4_convergence.ConvergenceConfig())


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=ReproduceConfig.clone_trials)
    ap.add_argument("--seed", type=int, default=ReproduceConfig.seed)
    args = ap.parse_args()
    run(ReproduceConfig(clone_trials=args.trials, seed=args.seed))
