"""Compare the enumeration backends (and the variable-elimination reference).

Usage::

    python3 benchmarks/bench_backends.py [--nodes N] [--repeats R] [--seeds K]

For each random network the script times the posterior over the output given
the first observable assignment, once per backend, and reports per-query
times plus the speedup of the compiled backend over the pure-Python one.
"""

from __future__ import annotations

import argparse
import statistics
import time

from monobn import (
    available_backends,
    enumerate_assignments,
    posterior,
    posterior_by_enumeration,
    random_network,
    set_enumeration_backend,
)
from monobn.inference import enumeration_backend


def time_queries(fn, nets, repeats: int) -> float:
    """Median per-query time in seconds."""
    samples = []
    for net in nets:
        x = next(enumerate_assignments(net, net.observables))
        fn(net, x, net.output)  # warm up caches
        start = time.perf_counter()
        for _ in range(repeats):
            fn(net, x, net.output)
        samples.append((time.perf_counter() - start) / repeats)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=12)
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--seeds", type=int, default=10)
    args = parser.parse_args()

    nets = [random_network(n_nodes=args.nodes, seed=s) for s in range(args.seeds)]
    print(f"{args.seeds} random networks, {args.nodes} nodes each, "
          f"{args.repeats} repeats per query\n")

    previous = enumeration_backend()
    results = {}
    try:
        for name in sorted(available_backends()):
            set_enumeration_backend(name)
            results[name] = time_queries(posterior_by_enumeration, nets, args.repeats)
            print(f"enumeration [{name:>6}]: {results[name] * 1e3:8.3f} ms/query")
    finally:
        set_enumeration_backend(previous)

    ve = time_queries(posterior, nets, args.repeats)
    print(f"variable elimination: {ve * 1e3:8.3f} ms/query")

    if "cython" in results and "python" in results:
        print(f"\ncompiled enumeration speedup over pure Python: "
              f"{results['python'] / results['cython']:.1f}x")
    else:
        print("\ncompiled backend not available; only pure Python was measured")


if __name__ == "__main__":
    main()
