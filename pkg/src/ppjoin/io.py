"""JSON formats for complexes, specs and space metadata.

Writers are canonical (sorted vertices and faces, fixed key order, one
trailing newline), so read -> write -> read is byte-stable.  Readers
validate against the shipped JSON Schemas first and report the offending
location as a JSON pointer.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from ppjoin.classify import FLAG_FIELDS, SpaceMeta
from ppjoin.complexes import SimplicialComplex, build_complex
from ppjoin.errors import ValidationError
from ppjoin.polyjoin import ComplexPair, PolyJoinSpec


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("ppjoin.schemas").joinpath(f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def schema_names() -> list[str]:
    return sorted(p.name.removesuffix(".schema.json")
                  for p in resources.files("ppjoin.schemas").iterdir() if p.name.endswith(".schema.json"))


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def check_schema(obj, name: str) -> None:
    """Raise ValidationError at the first (deepest, then leftmost) violation."""
    validator = jsonschema.Draft202012Validator(load_schema(name))
    errors = sorted(validator.iter_errors(obj), key=lambda e: (-len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise ValidationError(err.message, _pointer(err.absolute_path) or "/")


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def read_json(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path} is not UTF-8") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


# ---------------------------------------------------------------- complexes

def complex_to_json(K: SimplicialComplex) -> dict:
    return {"vertices": list(K.vertices), "maximal_faces": [list(f) for f in K.maximal_faces if f]}


def _complex_from_checked(obj: dict, where: str) -> SimplicialComplex:
    try:
        return build_complex(obj["vertices"], obj["maximal_faces"])
    except ValidationError as exc:
        raise ValidationError(exc.message, where + (exc.pointer or "")) from exc


def complex_from_json(obj) -> SimplicialComplex:
    check_schema(obj, "complex")
    return _complex_from_checked(obj, "")


def dumps_complex(K: SimplicialComplex) -> str:
    return dumps(complex_to_json(K))


def loads_complex(text: str) -> SimplicialComplex:
    return complex_from_json(json.loads(text))


# ---------------------------------------------------------------- specs

def spec_to_json(spec: PolyJoinSpec) -> dict:
    return {"base": complex_to_json(spec.base),
            "pairs": [{"big": complex_to_json(p.big), "small": complex_to_json(p.small)} for p in spec.pairs]}


def spec_from_json(obj) -> PolyJoinSpec:
    check_schema(obj, "spec")
    base = _complex_from_checked(obj["base"], "/base")
    pairs = []
    for k, item in enumerate(obj["pairs"]):
        big = _complex_from_checked(item["big"], f"/pairs/{k}/big")
        small = _complex_from_checked(item["small"], f"/pairs/{k}/small")
        try:
            pairs.append(ComplexPair(big, small))
        except ValidationError as exc:
            raise ValidationError(exc.message, f"/pairs/{k}") from exc
    # pairs follow base vertices in the order written; PolyJoinSpec wants canonical order
    written = obj["base"]["vertices"]
    if len(pairs) == len(written):
        by_label = dict(zip(written, pairs))
        pairs = [by_label[v] for v in base.vertices]
    try:
        return PolyJoinSpec(base, tuple(pairs))
    except ValidationError as exc:
        raise ValidationError(exc.message, exc.pointer or "/pairs") from exc


def dumps_spec(spec: PolyJoinSpec) -> str:
    return dumps(spec_to_json(spec))


def loads_spec(text: str) -> PolyJoinSpec:
    return spec_from_json(json.loads(text))


def is_spec_json(obj) -> bool:
    return isinstance(obj, dict) and "base" in obj


# ---------------------------------------------------------------- metadata

def meta_to_json(meta: SpaceMeta) -> dict:
    out = {f: getattr(meta, f) for f in FLAG_FIELDS}
    for f in ("dimension", "connectivity"):
        if getattr(meta, f) is not None:
            out[f] = getattr(meta, f)
    if meta.torsion_primes is not None:
        out["torsion_primes"] = list(meta.torsion_primes)
    return out


def metas_from_json(obj) -> dict[str, SpaceMeta]:
    check_schema(obj, "meta")
    out = {}
    for name, entry in obj.items():
        try:
            tp = entry.get("torsion_primes")
            out[name] = SpaceMeta(name=name, **{**entry, "torsion_primes": None if tp is None else tuple(tp)})
        except ValidationError as exc:
            raise ValidationError(exc.message, _pointer([name])) from exc
    return out


def dumps_metas(metas: dict[str, SpaceMeta]) -> str:
    return dumps({name: meta_to_json(m) for name, m in metas.items()})
