"""Run the profile search over a grid of spaces and tabulate family coverage.

    python scripts/coverage_survey.py --M 3 --values 0,1 --json survey.json
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from homavg import field_make
from homavg.classify import SearchSpace, enumerate_profiles, match_families


@dataclass
class SurveyConfig:
    M: int = 3
    values: tuple = ("0", "1")
    spaces: list = field(default_factory=lambda: [
        ("witt", "rational:1", 0), ("witt", "rational:1", 1), ("witt", "rational:1", 2),
        ("witt", "rational:2", 1), ("witt", "cyclotomic:2", 2), ("witt", "cyclotomic:3", 3),
        ("witt", "cyclotomic:4", 4), ("witt", "cyclotomic:3", 1),
        ("w22", "cyclotomic:4", 0), ("w22", "rational:1", 0), ("w22", "rational:2", 2),
    ])
    w22_M: int = 1


def survey(cfg: SurveyConfig):
    rows = []
    for algebra, fld, d in cfg.spaces:
        M = cfg.M if algebra == "witt" else cfg.w22_M
        space = SearchSpace(algebra, field_make(fld), d, M, cfg.values)
        profiles = enumerate_profiles(space)
        cov = match_families(profiles, space)
        verdicts = [adj["verdict"] for _, adj in cov.unmatched_solutions]
        rows.append({
            "algebra": algebra, "field": fld, "d": d, "M": M,
            "solutions": len(profiles.solutions),
            "matched": len(cov.matched),
            "genuine_unmatched": verdicts.count("genuine"),
            "window_artifacts": verdicts.count("window_artifact"),
            "unsound_families": sum(adj["verdict"] == "unsound" for _, adj in cov.unmatched_families),
            "missed_families": sum(adj["verdict"] == "missed" for _, adj in cov.unmatched_families),
            "millis": profiles.millis + cov.millis,
        })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=int, default=SurveyConfig.M)
    ap.add_argument("--w22-M", type=int, default=SurveyConfig.w22_M)
    ap.add_argument("--values", default="0,1")
    ap.add_argument("--json", help="also write rows and config here")
    args = ap.parse_args()
    cfg = SurveyConfig(M=args.M, w22_M=args.w22_M, values=tuple(args.values.split(",")))
    rows = survey(cfg)
    cols = list(rows[0])
    print("  ".join(f"{c:>14}" for c in cols))
    for r in rows:
        print("  ".join(f"{str(r[c]):>14}" for c in cols))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
