"""Polyhedral join products (K, L)^{*M} and their structural pieces.

Output vertices are namespaced ``"i.v"``: base vertex ``i``, inner vertex ``v``
of the pair ``(K_i, L_i)``.  Faces are built from the support
characterisation: ``τ = ⊔ τ_i`` is a face iff every ``τ_i ∈ K_i`` and
``{i : τ_i ∉ L_i}`` is a face of ``M``.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ppjoin.complexes import (
    SimplicialComplex,
    deletion,
    empty,
    face_key,
    full_subcomplex,
    is_full_subcomplex,
    is_subcomplex,
    join,
    link,
    simplex,
)
from ppjoin.errors import GuardExceeded, ValidationError

ENUMERATION_GUARD = 12


def namespaced(i: str, v: str) -> str:
    return f"{i}.{v}"


@dataclass(frozen=True)
class ComplexPair:
    big: SimplicialComplex
    small: SimplicialComplex

    def __post_init__(self):
        if not is_subcomplex(self.big, self.small):
            raise ValidationError("malformed pair: small is not a subcomplex of big")

    @property
    def proper(self) -> bool:
        return self.small.faces != self.big.faces

    @property
    def full(self) -> bool:
        return is_full_subcomplex(self.big, self.small)

    def namespaced(self, i: str) -> tuple[SimplicialComplex, SimplicialComplex]:
        """Both members relabelled ``v -> i.v``, each on the vertex set of big."""
        m = {v: namespaced(i, v) for v in self.big.vertices}
        big = self.big.relabel(m)
        small = SimplicialComplex(big.vertices, frozenset(frozenset(m[v] for v in f) for f in self.small.faces))
        return big, small


def _check_namespaces(labels: Sequence[str], pairs: Sequence[ComplexPair]) -> None:
    seen: dict[str, str] = {}
    for i, pair in zip(labels, pairs):
        for v in pair.big.vertices:
            name = namespaced(i, v)
            if name in seen:
                raise ValidationError(f"namespace collision: {name!r} from base vertices {seen[name]!r} and {i!r}")
            seen[name] = i


@dataclass(frozen=True)
class PolyJoinSpec:
    """Base complex M plus one pair per base vertex, in base vertex order."""

    base: SimplicialComplex
    pairs: tuple[ComplexPair, ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.base.ghost_vertices:
            raise ValidationError(f"base complex has ghost vertices {list(self.base.ghost_vertices)}")
        if len(self.pairs) != len(self.base.vertices):
            raise ValidationError(
                f"expected {len(self.base.vertices)} pairs (one per base vertex), got {len(self.pairs)}")
        for p in self.pairs:
            if not isinstance(p, ComplexPair):
                raise ValidationError("malformed pair")
        _check_namespaces(self.base.vertices, self.pairs)

    @property
    def pair_map(self) -> dict[str, ComplexPair]:
        return dict(zip(self.base.vertices, self.pairs))

    def pair(self, i: str) -> ComplexPair:
        try:
            return self.pair_map[i]
        except KeyError:
            raise ValidationError(f"unknown base vertex {i!r}") from None

    @property
    def total_vertices(self) -> int:
        return sum(len(p.big.vertices) for p in self.pairs)


def poly_join_over(base: SimplicialComplex, pairs: Mapping[str, ComplexPair] | Sequence[ComplexPair]) -> SimplicialComplex:
    """Polyhedral join over an arbitrary base, ghost vertices allowed.

    A ghost base vertex never enters a support set, so its factor is always L_i.
    """
    if not isinstance(pairs, Mapping):
        pairs = dict(zip(base.vertices, pairs))
    if set(pairs) != set(base.vertices):
        raise ValidationError("pairs must be given for exactly the base vertices")
    labels = base.vertices
    _check_namespaces(labels, [pairs[i] for i in labels])

    # per base vertex: (namespaced face, lies outside small)
    options = []
    vertex_set: list[str] = []
    for i in labels:
        big, small = pairs[i].namespaced(i)
        vertex_set.extend(big.vertices)
        options.append([(f, f not in small.faces) for f in sorted(big.faces, key=face_key)])

    faces = set()

    def extend(k: int, acc: frozenset, support: frozenset) -> None:
        if k == len(labels):
            faces.add(acc)
            return
        i = labels[k]
        for f, outside in options[k]:
            s = support | {i} if outside else support
            if s in base.faces:
                extend(k + 1, acc | f, s)

    extend(0, frozenset(), frozenset())
    return SimplicialComplex(tuple(vertex_set), frozenset(faces))


def build_poly_join(spec: PolyJoinSpec) -> SimplicialComplex:
    return poly_join_over(spec.base, spec.pair_map)


def _parts_spec(M: SimplicialComplex, parts: Sequence[SimplicialComplex], make_pair) -> PolyJoinSpec:
    parts = list(parts)
    if len(parts) != len(M.vertices):
        raise ValidationError(f"arity mismatch: {len(M.vertices)} base vertices, {len(parts)} parts")
    return PolyJoinSpec(M, tuple(make_pair(K) for K in parts))


def substitution_complex(M: SimplicialComplex, parts: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """M(K_1, ..., K_m): polyhedral join on the pairs (K_i, {∅})."""
    return build_poly_join(_parts_spec(M, parts, lambda K: ComplexPair(K, empty(K.vertices))))


def composition_complex(M: SimplicialComplex, parts: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """M<K_1, ..., K_m>: polyhedral join on the pairs (full simplex on V(K_i), K_i)."""
    return build_poly_join(_parts_spec(M, parts, lambda K: ComplexPair(simplex(K.vertices), K)))


@dataclass(frozen=True)
class PushoutPieces:
    """The square (K,L)^{*lk} * L_i -> (K,L)^{*lk} * K_i, (K,L)^{*M∖i} * L_i -> (K,L)^{*M}."""

    vertex: str
    link_small: SimplicialComplex
    link_big: SimplicialComplex
    deletion_small: SimplicialComplex
    whole: SimplicialComplex

    def is_pushout(self) -> bool:
        return (self.link_big.faces | self.deletion_small.faces == self.whole.faces
                and self.link_big.faces & self.deletion_small.faces == self.link_small.faces)


def polyjoin_pushout_pieces(spec: PolyJoinSpec, i: str) -> PushoutPieces:
    pair = spec.pair(i)
    lk, dl = link(spec.base, i), deletion(spec.base, i)  # lk carries ghosts on V(M)∖i
    rest = {j: p for j, p in spec.pair_map.items() if j != i}
    over_lk = poly_join_over(lk, rest)
    over_dl = poly_join_over(dl, rest)
    big, small = pair.namespaced(i)
    return PushoutPieces(
        vertex=i,
        link_small=join(over_lk, small),
        link_big=join(over_lk, big),
        deletion_small=join(over_dl, small),
        whole=build_poly_join(spec),
    )


@dataclass(frozen=True)
class FullSubcomplexForm:
    """A full subcomplex presented as (P, Q)^{*N}."""

    vertex_subset: frozenset
    base: SimplicialComplex
    pairs: tuple[tuple[str, ComplexPair], ...]

    def complex(self) -> SimplicialComplex:
        return poly_join_over(self.base, dict(self.pairs))


def full_subcomplex_form(spec: PolyJoinSpec, S) -> FullSubcomplexForm:
    S = frozenset(S)
    parts = []
    for i, pair in spec.pair_map.items():
        inner = frozenset(v for v in pair.big.vertices if namespaced(i, v) in S)
        if not inner:
            continue
        P = full_subcomplex(pair.big, inner)
        Q = SimplicialComplex(P.vertices, frozenset(f for f in pair.small.faces if f <= inner))
        parts.append((i, ComplexPair(P, Q)))
    N = full_subcomplex(spec.base, [i for i, _ in parts])
    return FullSubcomplexForm(S, N, tuple(parts))


def enumerate_full_subcomplexes(spec: PolyJoinSpec, max_count: int = 2 ** ENUMERATION_GUARD) -> list[FullSubcomplexForm]:
    """(N, P, Q) data for every vertex subset of the polyhedral join."""
    n = spec.total_vertices
    if n > ENUMERATION_GUARD or 2 ** n > max_count:
        raise GuardExceeded(f"{n} vertices gives {2 ** n} subsets (limit {min(max_count, 2 ** ENUMERATION_GUARD)})")
    verts = [namespaced(i, v) for i, p in spec.pair_map.items() for v in p.big.vertices]
    out = []
    for r in range(n + 1):
        for S in itertools.combinations(verts, r):
            out.append(full_subcomplex_form(spec, S))
    return out


def hyperbolicity_witnesses(spec: PolyJoinSpec) -> list[str]:
    """Base vertices i with L_i a proper full subcomplex of K_i and lk_M(i) ≠ M∖i."""
    out = []
    for i, pair in spec.pair_map.items():
        if pair.proper and pair.full and link(spec.base, i).faces != deletion(spec.base, i).faces:
            out.append(i)
    return out
