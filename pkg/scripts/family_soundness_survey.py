"""Random W(2,2) family instantiations: verifier verdict against the ledger predicates.

Each draw builds the family operator, runs the averaging check and compares
the outcome with ``w22_discrepancy``.  Any disagreement is printed.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from homavg import ScalarField
from homavg.families import DEGREE_ZERO, ROOT_OF_UNITY, W22FamilyParams, make_w22_family, w22_discrepancy


@dataclass
class SoundnessConfig:
    draws: int = 300
    seed: int = 7
    M: int = 3
    values: tuple = (0, 0, 1, 2, -1)


SPACES = [
    (ROOT_OF_UNITY, ScalarField.cyclotomic(3), 3), (ROOT_OF_UNITY, ScalarField.cyclotomic(4), 0),
    (ROOT_OF_UNITY, ScalarField.cyclotomic(4), 4), (ROOT_OF_UNITY, ScalarField.cyclotomic(5), 5),
    (ROOT_OF_UNITY, ScalarField.cyclotomic(6), 6), (ROOT_OF_UNITY, ScalarField.cyclotomic(8), 8),
    (DEGREE_ZERO, ScalarField.rational(1), 0), (DEGREE_ZERO, ScalarField.cyclotomic(2), 0),
]


def run(cfg: SoundnessConfig):
    rng = random.Random(cfg.seed)
    tally, mismatches = Counter(), []
    for _ in range(cfg.draws):
        case, fld, d = rng.choice(SPACES)
        variant = rng.randint(1, 5)
        vals = {k: rng.choice(cfg.values) for k in ("nu1", "nu2", "nu3", "nu4", "gamma", "theta")}
        beta = rng.choice([1, 2, -1])
        params = W22FamilyParams(variant, case, d, beta=beta, **vals)
        op = make_w22_family(params, fld, M=cfg.M)
        predicted = w22_discrepancy(params, fld)
        tally[(variant, predicted or "sound")] += 1
        if op.flagged != (predicted is not None):
            mismatches.append((params, fld.shorthand(), op.flagged))
    return tally, mismatches


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=SoundnessConfig.draws)
    ap.add_argument("--seed", type=int, default=SoundnessConfig.seed)
    ap.add_argument("--M", type=int, default=SoundnessConfig.M)
    args = ap.parse_args()
    tally, mismatches = run(SoundnessConfig(draws=args.draws, seed=args.seed, M=args.M))
    for (variant, verdict), n in sorted(tally.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        print(f"variant {variant}  {verdict:<24} {n}")
    print(f"mismatches: {len(mismatches)}")
    for m in mismatches:
        print("  ", m)
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
