"""Subcommand front end.

Results go to stdout (or ``--out``), diagnostics to stderr.  Exit codes:
0 success, 1 an oracle check failed, 2 invalid input, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence

from ppjoin import io
from ppjoin.classify import (
    SpaceMeta,
    classify_cone_pair,
    classify_general,
    classify_moment_angle,
    classify_poly_join,
    expand_metas,
)
from ppjoin.complexes import (
    SimplicialComplex,
    join_decomposition,
    minimal_missing_faces,
    sorted_face,
    star_link_deletion_pushout_check,
)
from ppjoin.errors import GuardExceeded, ValidationError
from ppjoin.expr import Expr, atoms, parse, simplify, to_text, to_unicode
from ppjoin.growth import MAX_DEGREE, rational_rank_series, reconstruction_residual
from ppjoin.loops import PUSHOUT_VARIANTS, FibreTag, loop_decomposition_cone, loop_decomposition_polyjoin, \
    loop_decomposition_pushout
from ppjoin.polyjoin import (
    PolyJoinSpec,
    build_poly_join,
    enumerate_full_subcomplexes,
    hyperbolicity_witnesses,
    polyjoin_pushout_pieces,
)

DEFAULT_SEED = 20240917
EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- input helpers

def _need(args, flag: str):
    value = getattr(args, flag.replace("-", "_"))
    if value is None:
        raise ValidationError(f"--{flag} is required for {args.command}")
    return value


def _complex(args) -> SimplicialComplex:
    obj = io.read_json(_need(args, "input"))
    if io.is_spec_json(obj):
        raise ValidationError(f"{args.command} expects a complex, got a spec", "/")
    return io.complex_from_json(obj)


def _spec(args) -> PolyJoinSpec:
    return io.spec_from_json(io.read_json(_need(args, "input")))


def _metas(args) -> dict[str, SpaceMeta]:
    return io.metas_from_json(io.read_json(_need(args, "meta")))


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"--{flag} must be comma-separated integers, got {text!r}") from None


def _per_vertex(values: list, K: SimplicialComplex, flag: str) -> list:
    if len(values) == 1:
        return values * len(K.vertices)
    if len(values) != len(K.vertices):
        raise ValidationError(f"--{flag} needs 1 or {len(K.vertices)} entries, got {len(values)}")
    return values


def _faces(faces) -> list[list[str]]:
    return [list(sorted_face(f)) for f in faces]


# ---------------------------------------------------------------- commands
# each returns (json result, text rendering)

def cmd_validate(args):
    obj = io.read_json(_need(args, "input"))
    if io.is_spec_json(obj):
        spec = io.spec_from_json(obj)
        K, kind = spec.base, "spec"
    else:
        K, kind = io.complex_from_json(obj), "complex"
    result = {"kind": kind, "vertices": list(K.vertices), "ghost_vertices": list(K.ghost_vertices),
              "num_faces": len(K), "dimension": K.dim, "maximal_faces": [list(f) for f in K.maximal_faces]}
    text = f"valid {kind}: {len(K.vertices)} vertices, {len(K)} faces, dimension {K.dim}"
    if kind == "spec":
        text += f" (base); {spec.total_vertices} output vertices"
    return result, text


def cmd_mmf(args):
    K = _complex(args)
    mmf = minimal_missing_faces(K)
    disjoint = mmf.mutually_disjoint()
    result = {"minimal_missing_faces": _faces(mmf.faces), "disjoint": disjoint,
              "ghost_vertices": list(mmf.ghost_vertices)}
    lines = [f"{len(mmf)} minimal missing faces, disjoint={str(disjoint).lower()}"]
    lines += ["  {" + ",".join(f) + "}" for f in result["minimal_missing_faces"]]
    return result, "\n".join(lines)


def cmd_decompose(args):
    K = _complex(args)
    dec = join_decomposition(K)
    ok = dec.reconstruct().faces == K.faces
    if not ok:
        raise AssertionError("join decomposition does not reconstruct the input")
    result = {"simplex_part": list(dec.simplex_part), "boundary_parts": _faces(dec.boundary_parts),
              "reconstructs": True}
    pieces = []
    if dec.simplex_part or not dec.boundary_parts:
        pieces.append("Δ{" + ",".join(dec.simplex_part) + "}")
    pieces += ["∂{" + ",".join(f) + "}" for f in result["boundary_parts"]]
    return result, " * ".join(pieces)


def _verdict_out(verdict):
    return verdict.to_json(), verdict.to_text()


def cmd_classify_mac(args):
    K = _complex(args)
    dims = _per_vertex(_int_list(args.dims or "2", "dims"), K, "dims")
    return _verdict_out(classify_moment_angle(K, dims))


def cmd_classify_cone(args):
    K = _complex(args)
    return _verdict_out(classify_cone_pair(K, expand_metas(K, _metas(args))))


def cmd_classify_general(args):
    K = _complex(args)
    raw = [x.strip().lower() for x in (args.ambient_elliptic or "true").split(",")]
    if any(x not in ("true", "false") for x in raw):
        raise ValidationError("--ambient-elliptic must be a comma-separated list of true/false")
    ambient = _per_vertex([x == "true" for x in raw], K, "ambient-elliptic")
    return _verdict_out(classify_general(K, expand_metas(K, _metas(args)), ambient))


def cmd_polyjoin(args):
    spec = _spec(args)
    P = build_poly_join(spec)
    pushout = {i: polyjoin_pushout_pieces(spec, i).is_pushout() for i in spec.base.vertices}
    witnesses = hyperbolicity_witnesses(spec)
    result = {"complex": io.complex_to_json(P), "num_faces": len(P), "witnesses": witnesses,
              "pushout_witness": pushout}
    text = (f"{len(P.vertices)} vertices, {len(P)} faces, dimension {P.dim}\n"
            f"maximal faces: " + " ".join("{" + ",".join(f) + "}" for f in P.maximal_faces) + "\n"
            f"hyperbolicity witnesses: {','.join(witnesses) or 'none'}")
    return result, text


def cmd_polyjoin_classify(args):
    spec = _spec(args)
    metas = _metas(args)
    # a single entry stands for every X_i; otherwise look up output labels "i.v"
    x_metas = list(metas.values()) if len(metas) == 1 else expand_metas(build_poly_join(spec), metas)
    return _verdict_out(classify_poly_join(spec, x_metas))


def _tag_json(tag: FibreTag) -> dict:
    out = {"role": tag.role, "vertex": tag.vertex, "source": io.complex_to_json(tag.source), "trivial": tag.trivial}
    if tag.target is not None:
        out["target"] = io.complex_to_json(tag.target)
    return out


def _atoms_for(K: SimplicialComplex, text: str | None) -> list[Expr]:
    items = [parse(t) for t in (text or "S^1").split(";")]
    return _per_vertex(items, K, "atoms")


def cmd_loops(args):
    variant = args.variant or ("expr" if args.expr else "cone")
    if variant == "expr":
        emitted = parse(_need(args, "expr"))
    elif variant == "cone":
        K = _complex(args)
        emitted = loop_decomposition_cone(K, _atoms_for(K, args.atoms))
    elif variant == "polyjoin":
        emitted = loop_decomposition_polyjoin(_spec(args))
    elif variant in PUSHOUT_VARIANTS:
        emitted = loop_decomposition_pushout(variant)
    else:
        raise ValidationError(f"unknown variant {variant!r}")
    nf, trace = simplify(emitted, args.max_degree, seed=args.seed)
    tags = {a.name: _tag_json(a.tag) for a in atoms(emitted) if isinstance(a.tag, FibreTag)}
    result = {"emitted": to_text(emitted), "normal_form": to_text(nf), "pretty": to_unicode(nf),
              "partial": trace.partial, "rules": trace.rules_used()}
    if tags:
        result["tags"] = tags
    text = f"{to_unicode(emitted)}\n≃ {to_unicode(nf)}"
    if trace.partial:
        text += f"\n(partial: truncated above degree {args.max_degree})"
    return result, text


def cmd_growth(args):
    dims = _int_list(_need(args, "dims"), "dims")
    ranks = rational_rank_series(dims, args.max_degree)
    residual_zero = not any(reconstruction_residual(dims, ranks, args.max_degree))
    result = {"sphere_dims": dims, "max_degree": args.max_degree,
              "ranks": [{"degree": k, "rank": r} for k, r in enumerate(ranks, start=1)],
              "residual_zero": residual_zero}
    text = "\n".join(f"{k}\t{r}" for k, r in enumerate(ranks, start=1))
    return result, text


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate, "mmf": cmd_mmf, "decompose": cmd_decompose,
    "classify-mac": cmd_classify_mac, "classify-cone": cmd_classify_cone,
    "classify-general": cmd_classify_general, "polyjoin": cmd_polyjoin,
    "polyjoin-classify": cmd_polyjoin_classify, "loops": cmd_loops, "growth": cmd_growth,
}


# ---------------------------------------------------------------- oracle

def oracle_records(count: int, seed: int):
    """Deterministic stream of oracle check records."""
    from ppjoin import oracle
    from ppjoin.complexes import minimal_missing_faces as mmf

    specs = oracle.spec_corpus(oracle.CorpusSpec(seed=seed, count=count))
    for k, spec in enumerate(specs):
        yield {"check": "polyjoin-vs-brute", "instance": k,
               "passed": build_poly_join(spec).faces == oracle.brute_polyjoin(spec).faces}
        yield {"check": "polyjoin-pushout", "instance": k,
               "passed": all(polyjoin_pushout_pieces(spec, i).is_pushout() for i in spec.base.vertices)}
        if spec.total_vertices <= oracle.FULL_SUBCOMPLEX_GUARD:
            brute = {S: F.faces for S, F in oracle.brute_full_subcomplexes(spec)}
            ok = all(brute[f.vertex_subset] == f.complex().faces for f in enumerate_full_subcomplexes(spec))
            yield {"check": "full-subcomplex-forms", "instance": k, "passed": ok}
    for k, K in enumerate(oracle.complex_corpus(count, seed=seed)):
        yield {"check": "mmf-vs-brute", "instance": k, "passed": mmf(K).as_sets() == oracle.brute_mmf(K)}
        ok = all(star_link_deletion_pushout_check(K, v) for v in K.used_vertices)
        yield {"check": "star-link-deletion", "instance": k, "passed": ok}
    for q in (2, 3):
        for n, got in enumerate(oracle.lyndon_ranks(q, 8), start=1):
            yield {"check": "lyndon-vs-witt", "instance": 10 * q + n, "passed": got == oracle.witt_count(q, n)}
    ranks = rational_rank_series([3, 3], 10)
    yield {"check": "growth-vs-lyndon", "instance": 0, "passed": ranks[1::2] == oracle.lyndon_ranks(2, 5)}


def run_oracle(args, out) -> int:
    failed = 0
    for rec in oracle_records(args.count, args.seed):
        failed += not rec["passed"]
        out.write(json.dumps(rec) + "\n")
    print(f"oracle: {failed} failed", file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppjoin", description="Polyhedral products, polyhedral joins and their loop spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--input", help="complex or spec JSON file")
    common.add_argument("--meta", help="space metadata JSON file keyed by name ('*' is the default entry)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--max-degree", type=int, default=16, help="degree cap for growth and simplification")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (oracle default {DEFAULT_SEED})")
    common.add_argument("--out", help="write the result here instead of stdout")
    helps = {
        "validate": "check a complex or spec file", "mmf": "minimal missing faces",
        "decompose": "join decomposition of a complex with disjoint minimal missing faces",
        "classify-mac": "classify (D^n, S^{n-1})^K", "classify-cone": "classify (CA, A)^K",
        "classify-general": "classify (X, A)^K from fibre metadata", "polyjoin": "build a polyhedral join",
        "polyjoin-classify": "hyperbolicity of (X, *) over a polyhedral join",
        "loops": "emit and simplify a loop-space decomposition", "growth": "rational homotopy ranks of Ω of a wedge of spheres",
        "oracle": "run brute-force cross-checks, JSON lines",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        if name in ("classify-mac", "growth"):
            p.add_argument("--dims", help="comma-separated dimensions (one, or one per vertex)")
        if name == "classify-general":
            p.add_argument("--ambient-elliptic", help="true/false, one or one per vertex (default true)")
        if name == "loops":
            p.add_argument("--variant", choices=("cone", "polyjoin", "expr", *PUSHOUT_VARIANTS))
            p.add_argument("--atoms", help="';'-separated expressions, one or one per vertex (default S^1)")
            p.add_argument("--expr", help="expression to simplify")
        if name == "oracle":
            p.add_argument("--count", type=int, default=100, help="corpus size")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        if args.max_degree > MAX_DEGREE:
            raise GuardExceeded(f"--max-degree {args.max_degree} exceeds {MAX_DEGREE}")
        if args.max_degree < 1:
            raise ValidationError("--max-degree must be >= 1")
        if args.command == "oracle":
            if args.seed is None:
                args.seed = DEFAULT_SEED
            return run_oracle(args, out)
        result, text = COMMANDS[args.command](args)
        if args.format == "json":
            out.write(io.dumps({"command": args.command, "result": result}))
        else:
            out.write(text + "\n")
        return EXIT_OK
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
