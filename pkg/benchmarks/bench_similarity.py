"""Compare the compiled edit-distance kernel against the pure-Python fallback.

Workload mirrors production fuzzy name correction: misspelled queries
scanned against every knowledge-base name of a topic.

    python benchmarks/bench_similarity.py [--names 5625] [--queries 40]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time


def make_names(n: int, rng: random.Random) -> list[str]:
    first = ["Ada", "Bram", "Calla", "Dmitri", "Esme", "Flynn", "Greta", "Hollis",
             "Imogen", "Jory", "Katya", "Lior", "Maren", "Nell", "Orin", "Petra"]
    last = ["Abernathy", "Blackwood", "Cavendish", "Delacroix", "Everhart",
            "Fitzroy", "Hargrove", "Ironwood", "Jessop", "Kingsolver", "Leighton",
            "Merriweather", "Nightingale", "Oakhurst", "Pemberton", "Radcliffe"]
    return [
        f"{rng.choice(first)} {rng.choice(last)} {i}" if i % 7 == 0
        else f"{rng.choice(first)} {rng.choice(last)}"
        for i in range(n)
    ]


def corrupt(name: str, rng: random.Random) -> str:
    chars = list(name)
    for _ in range(rng.randint(1, 3)):
        op = rng.randrange(3)
        pos = rng.randrange(len(chars))
        if op == 0:
            chars[pos] = rng.choice("abcdefghijklmnopqrstuvwxyz")
        elif op == 1:
            chars.insert(pos, rng.choice("abcdefghijklmnopqrstuvwxyz"))
        elif len(chars) > 1:
            del chars[pos]
    return "".join(chars)


def run(kernel_name: str, levenshtein, names: list[str], queries: list[str]) -> float:
    timings = []
    for query in queries:
        start = time.perf_counter()
        best = None
        best_dist = 10**9
        for name in names:
            d = levenshtein(query.casefold(), name.casefold())
            if d < best_dist:
                best, best_dist = name, d
        timings.append(time.perf_counter() - start)
        assert best is not None
    per_query = statistics.mean(timings)
    print(f"{kernel_name:>12}: {per_query * 1000:8.2f} ms/query "
          f"({len(names)} names, {len(queries)} queries)")
    return per_query


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--names", type=int, default=5625)
    parser.add_argument("--queries", type=int, default=40)
    args = parser.parse_args()

    from socialbot import _editdist_py

    try:
        from socialbot import _editdist  # compiled
    except ImportError:
        _editdist = None

    rng = random.Random(7)
    names = make_names(args.names, rng)
    queries = [corrupt(rng.choice(names), rng) for _ in range(args.queries)]

    pure = run("pure-python", _editdist_py.levenshtein, names, queries)
    if _editdist is None:
        print("    compiled: not built (pip install -e . compiles it)")
        return
    compiled = run("compiled", _editdist.levenshtein, names, queries)
    print(f"{'speedup':>12}: {pure / compiled:8.1f}x")


if __name__ == "__main__":
    main()
