#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

The kernel lane is fixed at import time, so each lane runs in a child
process (the fallback is forced with HYPERCSA_PURE=1). Reported per lane:
index build time, file size, full decompression time, and the average
latency of degree / single-node contains / exists batches.

    python benchmarks/compare_backends.py --incidences 1000000
"""
import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

WORKER = r"""
import json, random, sys, time
import hypercsa
from hypercsa import Hypergraph
from hypercsa.builder import build_index
from hypercsa.synth import zipf_edges

m, n_labels, n_queries, seed = (int(x) for x in sys.argv[1:5])
edges = zipf_edges(m, n_labels, skew=1.15, seed=seed)
g = Hypergraph(n_labels, tuple(tuple(sorted(e)) for e in edges))

t0 = time.perf_counter()
idx = build_index(g)
build_s = time.perf_counter() - t0

blob = idx.to_bytes()

t0 = time.perf_counter()
dec = idx.decompress()
decompress_s = time.perf_counter() - t0
assert dec.edge_count == g.edge_count

rng = random.Random(seed)
labels = [rng.randrange(n_labels) for _ in range(n_queries)]
t0 = time.perf_counter()
for lab in labels:
    idx.degree(lab)
degree_ms = (time.perf_counter() - t0) / n_queries * 1e3

t0 = time.perf_counter()
for lab in labels:
    idx.contains((lab,))
contains_ms = (time.perf_counter() - t0) / n_queries * 1e3

hits = [tuple(sorted(e)) for e in edges if 2 <= len(e) <= 4][: n_queries // 2]
t0 = time.perf_counter()
for q in hits:
    idx.exists(q)
exists_ms = (time.perf_counter() - t0) / max(len(hits), 1) * 1e3

print(json.dumps({
    "backend": hypercsa.BACKEND,
    "build_s": round(build_s, 3),
    "index_bytes": len(blob),
    "decompress_s": round(decompress_s, 3),
    "degree_ms": round(degree_ms, 4),
    "contains_ms": round(contains_ms, 4),
    "exists_ms": round(exists_ms, 4),
}))
"""


def run_lane(pure: bool, args) -> dict:
    env = dict(os.environ)
    env.pop("HYPERCSA_PURE", None)
    if pure:
        env["HYPERCSA_PURE"] = "1"
    src = Path(__file__).resolve().parent.parent / "src"
    env["PYTHONPATH"] = f"{src}{os.pathsep}" + env.get("PYTHONPATH", "")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(args.incidences), str(args.nodes),
         str(args.queries), str(args.seed)],
        env=env,
        check=True,
        capture_output=True,
        text=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--incidences", type=int, default=1_000_000)
    parser.add_argument("--nodes", type=int, default=None)
    parser.add_argument("--queries", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    if args.nodes is None:
        args.nodes = max(args.incidences // 20, 16)

    lanes = [run_lane(False, args), run_lane(True, args)]
    if lanes[0]["backend"] == lanes[1]["backend"]:
        print("note: compiled extension not built; both lanes are pure Python\n")

    fields = ["build_s", "index_bytes", "decompress_s", "degree_ms",
              "contains_ms", "exists_ms"]
    width = max(len(f) for f in fields) + 2
    header = f"{'metric':<{width}}" + "".join(f"{l['backend']:>14}" for l in lanes)
    print(f"incidences={args.incidences} nodes={args.nodes} queries={args.queries}")
    print(header)
    print("-" * len(header))
    for f in fields:
        row = f"{f:<{width}}"
        for lane in lanes:
            row += f"{lane[f]:>14}"
        print(row)
    if lanes[0]["backend"] != lanes[1]["backend"]:
        assert lanes[0]["index_bytes"] == lanes[1]["index_bytes"], (
            "lanes produced different index files"
        )
        print("\nindex files are byte-identical across lanes")


if __name__ == "__main__":
    main()
