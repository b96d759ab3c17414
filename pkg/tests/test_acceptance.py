"""One test per acceptance criterion; each prints a PASS/FAIL line.

The lines are also collected and repeated in the terminal summary.
"""

import json
import random
import time

from conftest import ACCEPTANCE_LINES
from ppjoin import io
from ppjoin.classify import RationalType, SpaceMeta, classify_cone_pair, classify_moment_angle, \
    suspension_prime_set
from ppjoin.cli import main
from ppjoin.complexes import (
    boundary,
    build_complex,
    cycle,
    empty,
    is_isomorphic,
    join,
    join_all,
    join_decomposition,
    minimal_missing_faces,
    mmf_mutually_disjoint,
    point,
    simplex,
    star_link_deletion_pushout_check,
)
from ppjoin.expr import parse, simplify, to_text
from ppjoin.growth import cumulative, rational_rank_series, reconstruction_residual
from ppjoin.loops import loop_decomposition_cone, loop_decomposition_polyjoin, loop_decomposition_pushout
from ppjoin.oracle import (
    CorpusSpec,
    brute_full_subcomplexes,
    brute_mmf,
    brute_polyjoin,
    complex_corpus,
    lyndon_ranks,
    spec_corpus,
)
from ppjoin.polyjoin import (
    ENUMERATION_GUARD,
    ComplexPair,
    PolyJoinSpec,
    build_poly_join,
    enumerate_full_subcomplexes,
    poly_join_over,
    polyjoin_pushout_pieces,
)

SPECS = spec_corpus(CorpusSpec(max_base_vertices=4, max_pair_vertices=3, count=500))
COMPLEXES = complex_corpus(1000, max_vertices=6)
GHOST_FREE = [K for K in COMPLEXES if not K.ghost_vertices]


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_polyjoin_matches_union():
    start = time.perf_counter()
    bad = [k for k, s in enumerate(SPECS) if build_poly_join(s).faces != brute_polyjoin(s).faces]
    elapsed = time.perf_counter() - start
    record(1, len(SPECS) >= 500 and not bad and elapsed < 60,
           f"{len(SPECS) - len(bad)}/{len(SPECS)} specs agree in {elapsed:.2f}s")


def _namespaced_join(spec, which):
    return join_all(spec.pair(i).namespaced(i)[which] for i in spec.base.vertices)


def test_criterion_02_example_identities():
    checked = 0
    failures = []
    for spec in SPECS[:200]:
        m = len(spec.base.vertices)
        full = PolyJoinSpec(simplex(spec.base.vertices), spec.pairs)
        if build_poly_join(full).faces != _namespaced_join(spec, 0).faces:
            failures.append(("simplex base", spec))
        hollow = build_complex(spec.base.vertices, [])
        if poly_join_over(hollow, spec.pair_map).faces != _namespaced_join(spec, 1).faces:
            failures.append(("empty base", spec))
        M = spec.base
        copy = PolyJoinSpec(M, tuple(ComplexPair(point(v), empty([v])) for v in M.vertices))
        out = build_poly_join(copy)
        if not (is_isomorphic(out, M) and out.relabel({f"{v}.{v}": v for v in M.vertices}) == M):
            failures.append(("point/empty pairs", spec))
        solid = PolyJoinSpec(M, tuple(ComplexPair(point(v), point(v)) for v in M.vertices))
        out = build_poly_join(solid)
        if out.faces != simplex(out.vertices).faces or len(out.vertices) != m:
            failures.append(("point/point pairs", spec))
        checked += 1
    record(2, not failures, f"4 identities on {checked} bases/pair sequences, {len(failures)} failures")


def test_criterion_03_mmf_oracle():
    small = [K for K in COMPLEXES if len(K.vertices) <= 6]
    bad = [K for K in small if minimal_missing_faces(K).as_sets() != brute_mmf(K)]
    c4 = minimal_missing_faces(cycle(4)).as_sets() == {frozenset("13"), frozenset("24")}
    c5 = minimal_missing_faces(cycle(5)).as_sets() == {frozenset(p) for p in ("13", "14", "24", "25", "35")}
    record(3, len(small) >= 1000 and not bad and c4 and c5,
           f"{len(small) - len(bad)}/{len(small)} complexes agree; C4 {c4}, C5 {c5}")


def test_criterion_04_classification():
    c4 = classify_moment_angle(cycle(4), [2] * 4).rational_type is RationalType.ELLIPTIC
    c5 = classify_moment_angle(cycle(5), [2] * 5).rational_type is RationalType.HYPERBOLIC
    rng = random.Random(4)
    disagreements = 0
    for K in GHOST_FREE:
        dims = [rng.randint(2, 6) for _ in K.vertices]
        metas = [SpaceMeta.sphere(n - 1) for n in dims]
        a = classify_moment_angle(K, dims).rational_type
        b = classify_cone_pair(K, metas).rational_type
        disagreements += a is not b
    record(4, c4 and c5 and disagreements == 0,
           f"C4 elliptic {c4}, C5 hyperbolic {c5}; {disagreements} disagreements on {len(GHOST_FREE)} complexes")


def test_criterion_05_join_decomposition():
    eligible = [K for K in GHOST_FREE if mmf_mutually_disjoint(K)]
    bad = [K for K in eligible if join_decomposition(K).reconstruct().faces != K.faces]
    dec = join_decomposition(cycle(4))
    c4 = (dec.simplex_part == () and len(dec.boundary_parts) == 2
          and all(len(b) == 2 for b in dec.boundary_parts)
          and join(boundary(["1", "3"]), boundary(["2", "4"])) == cycle(4))
    record(5, not bad and c4 and len(eligible) > 0,
           f"{len(eligible) - len(bad)}/{len(eligible)} reconstruct exactly; C4 = ∂Δ¹ * ∂Δ¹ {c4}")


def test_criterion_06_pushout_witnesses():
    star_cases = [(K, v) for K in COMPLEXES for v in K.used_vertices]
    star_bad = sum(not star_link_deletion_pushout_check(K, v) for K, v in star_cases)
    join_cases = [(s, i) for s in SPECS for i in s.base.vertices]
    join_bad = sum(not polyjoin_pushout_pieces(s, i).is_pushout() for s, i in join_cases)
    record(6, star_bad == 0 and join_bad == 0,
           f"star/deletion {len(star_cases) - star_bad}/{len(star_cases)}, "
           f"polyjoin pushout {len(join_cases) - join_bad}/{len(join_cases)}")


def test_criterion_07_full_subcomplexes():
    within = [s for s in SPECS if s.total_vertices <= ENUMERATION_GUARD]
    bad = 0
    subsets = 0
    for s in within:
        brute = {S: K.faces for S, K in brute_full_subcomplexes(s)}
        forms = enumerate_full_subcomplexes(s)
        subsets += len(forms)
        bad += len(forms) != len(brute) or any(brute[f.vertex_subset] != f.complex().faces for f in forms)
    record(7, bad == 0 and len(within) > 0,
           f"{len(within) - bad}/{len(within)} specs, {subsets} vertex subsets")


def test_criterion_08_symbolic_pipeline():
    nf, trace = simplify(loop_decomposition_cone(cycle(4), [parse("S^1")] * 4))
    shapes = {
        "generic": "P(Om(atom:PP[M]),Om(atom:F))",
        "full-subcomplex": "P(Om(atom:PP[M]),Om(atom:PP[L]),Om(atom:H),Om(Sm(Susp^1(atom:G),Om(atom:H))))",
        "null-inclusion": "P(Om(atom:PP[M]),Om(W(J(atom:PP[L],atom:G),RHS(atom:PP[K],atom:G))))",
    }
    emitted = {k: to_text(loop_decomposition_pushout(k)) for k in shapes}
    half_smash = to_text(simplify(parse("Om(RHS(atom:H,atom:G))"))[0])
    spec = PolyJoinSpec(point("1"), (ComplexPair(simplex(["a", "b"]), build_complex(["a", "b"], [["a"]])),))
    polyjoin_shape = to_text(loop_decomposition_polyjoin(spec))
    ok = (to_text(nf) == "P(Om(S^3),Om(S^3))" and not trace.partial and emitted == shapes
          and half_smash == "P(Om(atom:H),Om(Sm(Susp^1(atom:G),Om(atom:H))))"
          and polyjoin_shape == "P(Om(atom:PP[L1]),Om(atom:H[1]),Om(Sm(Susp^1(atom:G[1]),Om(atom:H[1]))))")
    record(8, ok, f"C4 -> {to_text(nf)}; pushout/half-smash/polyjoin shapes verbatim {ok}")


def test_criterion_09_growth():
    ranks = rational_rank_series([3, 3], 16)
    even = ranks[1:10:2]
    lyndon = lyndon_ranks(2, 5)
    residual = reconstruction_residual([3, 3], ranks, 16)
    growth = all(cumulative(rational_rank_series(dims, 2 * n), 2 * n)
                 >= 1.5 * cumulative(rational_rank_series(dims, 2 * n), n)
                 for dims in ([2, 2], [3, 3], [2, 3], [3, 5]) for n in range(4, 9))
    ok = even == [2, 1, 2, 3, 6] == lyndon and not any(residual) and growth
    record(9, ok, f"ranks {even} vs Lyndon {lyndon}; residual zero {not any(residual)}; growth {growth}")


def test_criterion_10_prime_sets():
    base = SpaceMeta.sphere(3, "X")
    got = [suspension_prime_set(base.replace(dimension=d, connectivity=s, torsion_primes=t))
           for d, s, t in [(4, 1, ()), (7, 1, ()), (4, 1, (5,))]]
    record(10, got == [(2,), (2, 3), (2, 5)], f"{got}")


def _cli_json(tmp_path, argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--format", "json", "--out", str(out)])
    payload = json.loads(out.read_text(encoding="utf-8"))
    io.check_schema(payload, f"out-{argv[0]}")
    return code


def test_criterion_11_round_trips(tmp_path):
    complex_ok = all(io.dumps_complex(io.loads_complex(io.dumps_complex(K))) == io.dumps_complex(K)
                     and io.loads_complex(io.dumps_complex(K)) == K for K in COMPLEXES)
    spec_ok = all(io.dumps_spec(io.loads_spec(io.dumps_spec(s))) == io.dumps_spec(s) for s in SPECS)
    texts = [to_text(simplify(loop_decomposition_cone(K, [parse("atom:A")] * len(K.vertices)))[0])
             for K in GHOST_FREE if mmf_mutually_disjoint(K)]
    texts += ["W(S^3,S^5,Tail^5(Susp^1(Om(S^3))))", "Om(RHS(atom:PP[K],J(atom:PP[L],Cone(pt))))"]
    expr_ok = all(to_text(parse(t)) == t for t in texts)

    c4, spec_path, meta = tmp_path / "c4.json", tmp_path / "spec.json", tmp_path / "meta.json"
    c4.write_text(io.dumps_complex(cycle(4)))
    spec_path.write_text(io.dumps_spec(SPECS[0]))
    meta.write_text(io.dumps_metas({"*": SpaceMeta.sphere(3, "*").replace(dimension=4, connectivity=1)}))
    runs = [
        ["validate", "--input", str(c4)], ["mmf", "--input", str(c4)], ["decompose", "--input", str(c4)],
        ["classify-mac", "--input", str(c4)], ["classify-cone", "--input", str(c4), "--meta", str(meta)],
        ["classify-general", "--input", str(c4), "--meta", str(meta)],
        ["polyjoin", "--input", str(spec_path)], ["polyjoin-classify", "--input", str(spec_path), "--meta", str(meta)],
        ["loops", "--input", str(c4)], ["loops", "--input", str(spec_path), "--variant", "polyjoin"],
        ["growth", "--dims", "3,3", "--max-degree", "10"],
    ]
    cli_ok = all(_cli_json(tmp_path, argv) == 0 for argv in runs)
    record(11, complex_ok and spec_ok and expr_ok and cli_ok,
           f"complexes {complex_ok}, specs {spec_ok}, expressions {expr_ok} ({len(texts)}), "
           f"CLI JSON schemas {cli_ok} ({len(runs)} commands)")
