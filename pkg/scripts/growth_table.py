"""Rational homotopy ranks of Ω(S^{n_1} ∨ ... ∨ S^{n_r}) with cumulative growth ratios.

    python3 scripts/growth_table.py --dims 3,3 --max-degree 24
"""

import argparse

from ppjoin.growth import cumulative, rational_rank_series, reconstruction_residual
from ppjoin.oracle import lyndon_ranks


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="3,3")
    ap.add_argument("--max-degree", type=int, default=24)
    args = ap.parse_args()
    dims = [int(x) for x in args.dims.split(",")]
    ranks = rational_rank_series(dims, args.max_degree)
    print(f"dims {dims}; residual zero: {not any(reconstruction_residual(dims, ranks, args.max_degree))}")
    lyndon = None
    if all(n % 2 == 1 for n in dims) and len(set(dims)) == 1 and len(dims) <= 4:
        lyndon = lyndon_ranks(len(dims), min(12, args.max_degree // (dims[0] - 1)))
    print("degree  rank  cumulative  lyndon")
    for k, r in enumerate(ranks, start=1):
        ly = ""
        if lyndon and k % (dims[0] - 1) == 0 and k // (dims[0] - 1) <= len(lyndon):
            ly = str(lyndon[k // (dims[0] - 1) - 1])
        print(f"{k:>6}  {r:>4}  {cumulative(ranks, k):>10}  {ly:>6}")
    for n in range(4, args.max_degree // 2 + 1):
        a, b = cumulative(ranks, n), cumulative(ranks, 2 * n)
        print(f"sum({2 * n})/sum({n}) = {b}/{a} = {b / a:.2f}" if a else f"sum({n}) = 0")


if __name__ == "__main__":
    main()
