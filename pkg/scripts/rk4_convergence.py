"""Step-size study of the RK4 integrator against the closed-form propagator.

For each pulse shape, integrates a seeded random input over one period and
prints the residual ||psi(dt) - U psi0|| per step count and the ratio between
successive halvings (16 for a fourth-order method).
"""
import argparse
from dataclasses import dataclass, field

from blindfanout.evolution import ProtocolFunction, evolve
from blindfanout.hamiltonian import HamiltonianParams
from blindfanout.register import random_state


@dataclass
class ConvergenceConfig:
    gamma: float = 0.3
    n_gap: int = 1
    seed: int = 9
    steps: tuple = (100, 200, 400, 800, 1600)
    protocols: list = field(default_factory=lambda: [
        ProtocolFunction("constant"),
        ProtocolFunction("sinusoidal", amplitude=0.5, k=2),
        ProtocolFunction("square", duty=0.5),
    ])


def run(cfg: ConvergenceConfig) -> dict:
    p = HamiltonianParams(cfg.gamma, cfg.n_gap)
    psi0 = random_state(8, cfg.seed)
    table = {}
    for f in cfg.protocols:
        res = [evolve(p, f, psi0, s).residual_vs_u for s in cfg.steps]
        label = " ".join(f"{k}={v}" for k, v in f.describe().items())
        table[label] = res
        print(label)
        prev = None
        for s, r in zip(cfg.steps, res):
            ratio = f"{prev / r:8.2f}" if prev else "       -"
            print(f"  steps {s:6d}  residual {r:.3e}  ratio {ratio}")
            prev = r
    return table


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gamma", type=float, default=ConvergenceConfig.gamma)
    ap.add_argument("--n", type=int, default=ConvergenceConfig.n_gap)
    ap.add_argument("--seed", type=int, default=ConvergenceConfig.seed)
    args = ap.parse_args()
    run(ConvergenceConfig(args.gamma, args.n, args.seed))
