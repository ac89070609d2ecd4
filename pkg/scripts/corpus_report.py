"""Run every identity over the small-multigraph corpus and write a JSON summary.

    python scripts/corpus_report.py --qs 2,3 --kernels 10 --out corpus.json
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from tuttefourier.verify import check_corpus


@dataclass
class CorpusConfig:
    qs: tuple = (2, 3)
    max_vertices: int = 4
    max_edges: int = 6
    kernels: int = 5
    seed: int = 0
    tol: float = 1e-6


def parse_args(argv=None) -> tuple[CorpusConfig, str | None]:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qs", default="2,3")
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--kernels", type=int, default=5, help="random kernels per graph and q")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--out", help="JSON destination (default: stdout)")
    a = p.parse_args(argv)
    cfg = CorpusConfig(
        qs=tuple(int(x) for x in a.qs.split(",")),
        max_vertices=a.max_vertices,
        max_edges=a.max_edges,
        kernels=a.kernels,
        seed=a.seed,
        tol=a.tol,
    )
    return cfg, a.out


def main(argv=None) -> int:
    cfg, out = parse_args(argv)
    summary = check_corpus(cfg.qs, cfg.max_vertices, cfg.max_edges, cfg.kernels, cfg.seed, cfg.tol)
    for name, (passed, total) in sorted(summary.checks.items()):
        print(f"{name:18s} {passed:6d}/{total:<6d}", file=sys.stderr)
    print(f"{summary.graphs} graphs, {summary.failures} failures, {summary.runtime:.1f}s", file=sys.stderr)
    text = json.dumps({"config": asdict(cfg), **summary.to_dict()}, sort_keys=True, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if summary.failures == 0 else 3


if __name__ == "__main__":
    sys.exit(main())
