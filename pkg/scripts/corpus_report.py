"""Cross-check the main constructions against the brute-force references on a seeded corpus.

    python3 scripts/corpus_report.py --count 500 --seed 20240917
"""

import argparse
import time
from collections import Counter

from ppjoin.complexes import minimal_missing_faces, mmf_mutually_disjoint, star_link_deletion_pushout_check
from ppjoin.oracle import CorpusSpec, brute_full_subcomplexes, brute_mmf, brute_polyjoin, complex_corpus, spec_corpus
from ppjoin.polyjoin import ENUMERATION_GUARD, build_poly_join, enumerate_full_subcomplexes, polyjoin_pushout_pieces


def timed(label, fn):
    start = time.perf_counter()
    ok, total = fn()
    print(f"{label:<28} {ok:>6}/{total:<6} {time.perf_counter() - start:7.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=20240917)
    ap.add_argument("--max-base", type=int, default=4)
    ap.add_argument("--max-pair", type=int, default=3)
    args = ap.parse_args()

    specs = spec_corpus(CorpusSpec(args.max_base, args.max_pair, args.seed, args.count))
    cxs = complex_corpus(2 * args.count, seed=args.seed)
    print(f"{len(specs)} specs, {len(cxs)} complexes, seed {args.seed}")
    print("output vertex counts:", dict(sorted(Counter(s.total_vertices for s in specs).items())))

    timed("polyjoin vs union", lambda: (
        sum(build_poly_join(s).faces == brute_polyjoin(s).faces for s in specs), len(specs)))
    cases = [(s, i) for s in specs for i in s.base.vertices]
    timed("polyjoin pushout", lambda: (sum(polyjoin_pushout_pieces(s, i).is_pushout() for s, i in cases), len(cases)))

    def full():
        within = [s for s in specs if s.total_vertices <= ENUMERATION_GUARD]
        ok = 0
        for s in within:
            brute = {S: K.faces for S, K in brute_full_subcomplexes(s)}
            ok += all(brute[f.vertex_subset] == f.complex().faces for f in enumerate_full_subcomplexes(s))
        return ok, len(within)

    timed("full subcomplex forms", full)
    timed("mmf vs subsets", lambda: (sum(minimal_missing_faces(K).as_sets() == brute_mmf(K) for K in cxs), len(cxs)))
    pairs = [(K, v) for K in cxs for v in K.used_vertices]
    timed("star/link/deletion", lambda: (sum(star_link_deletion_pushout_check(K, v) for K, v in pairs), len(pairs)))
    ghost_free = [K for K in cxs if not K.ghost_vertices]
    disjoint = sum(mmf_mutually_disjoint(K) for K in ghost_free)
    print(f"ghost-free complexes with disjoint missing faces: {disjoint}/{len(ghost_free)}")


if __name__ == "__main__":
    main()
