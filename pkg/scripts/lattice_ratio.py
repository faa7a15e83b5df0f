"""Equilateral-triangle counts of lattice disks against n^2 and the bound chain.

    python scripts/lattice_ratio.py --ns 500 1000 2000 3000 --out ratio.tsv
"""
import argparse
import math
import time
from dataclasses import dataclass, field

from patterncount.plane import abrego_bound, count_equilateral, gen_triangular_disk, katherine_bound

LIMIT = 1 / 3 - math.sqrt(3) / (4 * math.pi)


@dataclass
class Config:
    ns: list = field(default_factory=lambda: [100, 250, 500, 1000, 2000, 3000])
    jobs: int = 1
    out: str | None = None


def run(cfg: Config):
    rows = []
    for n in cfg.ns:
        t0 = time.perf_counter()
        c = count_equilateral(gen_triangular_disk(n), cfg.jobs)
        rows.append((n, c, c / n**2, katherine_bound(n), abrego_bound(n), time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=Config().ns)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out")
    cfg = Config(**vars(ap.parse_args()))
    rows = run(cfg)
    lines = ["n\tcount\tratio\tkatherine\tabrego\tseconds"]
    lines += [f"{n}\t{c}\t{r:.6f}\t{k}\t{a}\t{t:.2f}" for n, c, r, k, a, t in rows]
    text = "\n".join(lines)
    print(text)
    print(f"# limiting constant 1/3 - sqrt(3)/(4 pi) = {LIMIT:.6f}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
