"""Exhaustive maxima of k-term progressions over integer n-sets of bounded diameter.

Prints found maximum, the closed form, the number of canonical sets examined
and the optimal shapes found.

    python scripts/line_maxima.py --k 3 --max-n 10 --diameter 20
"""
import argparse
from dataclasses import dataclass

from patterncount.line import LinePointSet, classify_optimal, sap_max
from patterncount.search import SearchSpec, line_max_search


@dataclass
class Config:
    k: int = 3
    min_n: int = 3
    max_n: int = 10
    diameter: int = 20
    jobs: int = 1
    budget: int = 10**9


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = Config(**vars(ap.parse_args()))
    print("n\tfound\tformula\tsets\texhaustive\tshapes")
    for n in range(max(cfg.min_n, cfg.k), cfg.max_n + 1):
        spec = SearchSpec("lineMaxAP", n, k=cfg.k, diameter=cfg.diameter, jobs=cfg.jobs, budget=cfg.budget)
        res = line_max_search(spec)
        shapes = sorted({str(classify_optimal(LinePointSet.of(w), cfg.k)) for w in res.witnesses}) if cfg.k >= 3 else []
        print(f"{n}\t{res.maximum}\t{sap_max(n, cfg.k)}\t{res.states_explored}\t{res.exhaustive}\t{' '.join(shapes)}")


if __name__ == "__main__":
    main()
