"""Time check_consistency on Horn class hierarchies of growing depth.

Each KB has n defaults ``x_i -> f`` / ``x_i -> ~f`` (alternating) over a
strict chain ``x_{i+1} => x_i``, which forces the quadratic worst case of the
removal loop. Prints calls, budget and wall time per size.

    python3 scripts/horn_scaling.py --sizes 10 25 50 100
"""

import argparse
import time
from dataclasses import dataclass, field

from pconsist import KnowledgeBase, SatSession, check_consistency


@dataclass
class Config:
    sizes: list = field(default_factory=lambda: [10, 25, 50, 75, 100])
    repeats: int = 3


def hierarchy(n: int) -> KnowledgeBase:
    lines = [f"x{i} -> {'f' if i % 2 == 0 else '~f'}" for i in range(n - 1, -1, -1)]
    lines += [f"x{i + 1} => x{i}" for i in range(n - 1)]
    lines.append(" & ".join(f"y{j}" for j in range(n - 1)) + f" => x{n - 1}")
    return KnowledgeBase.of(*lines)


def run(cfg: Config):
    print(f"{'n':>5} {'calls':>7} {'budget':>7} {'horn':>7} {'best s':>8}")
    for n in cfg.sizes:
        kb = hierarchy(n)
        best = float("inf")
        for _ in range(cfg.repeats):
            session = SatSession()
            start = time.perf_counter()
            check_consistency(kb, session)
            best = min(best, time.perf_counter() - start)
        d, s = len(kb.defeasible), len(kb.strict)
        print(f"{n:>5} {session.calls:>7} {d * (d + 1) // 2 + s:>7} {session.horn_calls:>7} {best:>8.3f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=Config().sizes)
    parser.add_argument("--repeats", type=int, default=Config.repeats)
    args = parser.parse_args()
    run(Config(sizes=args.sizes, repeats=args.repeats))
