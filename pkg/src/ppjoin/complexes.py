"""Finite abstract simplicial complexes with ghost vertices.

A complex is a declared vertex set plus a downward-closed family of faces.
The empty face is always present, so the "empty complex" is ``{∅}``; the
void complex (no faces at all) cannot be built.  Vertices that occur in no
face are ghost vertices.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from ppjoin.errors import GuardExceeded, ValidationError

Face = frozenset  # frozenset[str]

_DIGITS = re.compile(r"(\d+)")
_WHITESPACE = re.compile(r"\s")

ISOMORPHISM_GUARD = 8


def vertex_key(label: str):
    """Numeric-aware sort key: "2" < "10", "a2" < "a10"; ties broken by the raw label."""
    parts = _DIGITS.split(label)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), label


def sorted_face(face: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(face, key=vertex_key))


def face_key(face: Iterable[str]):
    verts = sorted_face(face)
    return len(verts), tuple(vertex_key(v) for v in verts)


def check_label(label) -> str:
    if not isinstance(label, str) or not label or _WHITESPACE.search(label):
        raise ValidationError(f"invalid vertex label {label!r}")
    return label


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable simplicial complex; equality compares vertex sets and face families."""

    vertices: tuple[str, ...]
    faces: frozenset

    def __post_init__(self):
        verts = tuple(self.vertices)
        for v in verts:
            check_label(v)
        if len(set(verts)) != len(verts):
            dup = sorted({v for v in verts if verts.count(v) > 1}, key=vertex_key)
            raise ValidationError(f"duplicate vertex labels {dup}")
        faces = frozenset(frozenset(f) for f in self.faces)
        if frozenset() not in faces:
            raise ValidationError("the empty face must be present")
        declared = set(verts)
        for f in faces:
            extra = f - declared
            if extra:
                raise ValidationError(
                    f"face {list(sorted_face(f))} uses undeclared vertices {sorted(extra)}")
            for v in f:
                if f - {v} not in faces:
                    raise ValidationError(f"face family not downward closed at {list(sorted_face(f))}")
        object.__setattr__(self, "vertices", tuple(sorted(verts, key=vertex_key)))
        object.__setattr__(self, "faces", faces)

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __repr__(self) -> str:
        facets = ",".join("".join(f) if all(len(v) == 1 for v in f) else "{" + " ".join(f) + "}"
                          for f in self.maximal_faces)
        return f"SimplicialComplex(V={list(self.vertices)}, max=[{facets}])"

    @cached_property
    def maximal_faces(self) -> tuple[tuple[str, ...], ...]:
        maximal = [f for f in self.faces if not any(f < g for g in self.faces if len(g) == len(f) + 1)]
        return tuple(sorted_face(f) for f in sorted(maximal, key=face_key))

    @cached_property
    def used_vertices(self) -> tuple[str, ...]:
        used = set().union(*self.faces)
        return tuple(v for v in self.vertices if v in used)

    @property
    def ghost_vertices(self) -> tuple[str, ...]:
        used = set(self.used_vertices)
        return tuple(v for v in self.vertices if v not in used)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def sorted_faces(self) -> list[tuple[str, ...]]:
        return [sorted_face(f) for f in sorted(self.faces, key=face_key)]

    def is_simplex(self) -> bool:
        return not self.ghost_vertices and frozenset(self.vertices) in self.faces

    def relabel(self, mapping: Mapping[str, str]) -> SimplicialComplex:
        new = [mapping.get(v, v) for v in self.vertices]
        if len(set(new)) != len(new):
            raise ValidationError("relabelling is not injective")
        return SimplicialComplex(tuple(new),
                                 frozenset(frozenset(mapping.get(v, v) for v in f) for f in self.faces))

    def same_faces(self, other: SimplicialComplex) -> bool:
        return self.faces == other.faces


def _closure(generators: Iterable[frozenset]) -> set[frozenset]:
    out = {frozenset()}
    for g in sorted(generators, key=len, reverse=True):
        if g in out:
            continue
        items = sorted(g)
        for r in range(len(items) + 1):
            out.update(frozenset(c) for c in itertools.combinations(items, r))
    return out


def build_complex(vertex_set: Iterable[str], generators: Iterable[Iterable[str]] = ()) -> SimplicialComplex:
    """Downward closure of ``generators`` on the declared vertex set."""
    verts = [check_label(v) for v in vertex_set]
    if len(set(verts)) != len(verts):
        raise ValidationError("duplicate vertex labels")
    declared = set(verts)
    gens = []
    for g in generators:
        g = frozenset(g)
        if not g <= declared:
            raise ValidationError(f"face {sorted_face(g)} references undeclared vertices {sorted(g - declared)}")
        gens.append(g)
    return SimplicialComplex(tuple(verts), frozenset(_closure(gens)))


def _labels(vertices) -> list[str]:
    if isinstance(vertices, int):
        return [str(i) for i in range(1, vertices + 1)]
    return [str(v) for v in vertices]


def empty(vertices=()) -> SimplicialComplex:
    """The complex ``{∅}``; every declared vertex is a ghost."""
    return build_complex(_labels(vertices), [])


def point(label: str = "1") -> SimplicialComplex:
    return build_complex([label], [[label]])


def simplex(vertices) -> SimplicialComplex:
    """Full simplex; ``simplex(3)`` is Δ² on 1,2,3."""
    vs = _labels(vertices)
    return build_complex(vs, [vs])


def boundary(vertices) -> SimplicialComplex:
    """Boundary of the simplex on the given vertices."""
    vs = _labels(vertices)
    return build_complex(vs, [[w for w in vs if w != v] for v in vs])


def cycle(n: int) -> SimplicialComplex:
    vs = _labels(n)
    return build_complex(vs, [[vs[i], vs[(i + 1) % n]] for i in range(n)])


def path(n: int) -> SimplicialComplex:
    vs = _labels(n)
    return build_complex(vs, [[vs[i], vs[i + 1]] for i in range(n - 1)] or [vs])


def _require_vertex(K: SimplicialComplex, v: str) -> None:
    if v not in K.vertices:
        raise ValidationError(f"unknown vertex {v!r}")


def _require_face_vertex(K: SimplicialComplex, v: str) -> None:
    _require_vertex(K, v)
    if frozenset([v]) not in K.faces:
        raise ValidationError(f"vertex {v!r} is a ghost vertex, {{{v}}} is not a face")


def link(K: SimplicialComplex, v: str) -> SimplicialComplex:
    _require_face_vertex(K, v)
    faces = frozenset(t for t in K.faces if v not in t and t | {v} in K.faces)
    return SimplicialComplex(tuple(w for w in K.vertices if w != v), faces)


def star(K: SimplicialComplex, v: str) -> SimplicialComplex:
    """Faces whose union with ``v`` is a face; declared on all of V(K)."""
    _require_face_vertex(K, v)
    return SimplicialComplex(K.vertices, frozenset(s for s in K.faces if s | {v} in K.faces))


def deletion(K: SimplicialComplex, v: str) -> SimplicialComplex:
    _require_vertex(K, v)
    return SimplicialComplex(tuple(w for w in K.vertices if w != v),
                             frozenset(s for s in K.faces if v not in s))


def delete_vertices(K: SimplicialComplex, vs: Iterable[str]) -> SimplicialComplex:
    for v in vs:
        K = deletion(K, v)
    return K


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    common = set(K1.vertices) & set(K2.vertices)
    if common:
        raise ValidationError(f"join operands share vertex labels {sorted(common, key=vertex_key)}")
    faces = frozenset(s | t for s in K1.faces for t in K2.faces)
    return SimplicialComplex(K1.vertices + K2.vertices, faces)


def join_all(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    out = empty()
    for K in complexes:
        out = join(out, K)
    return out


def full_subcomplex(K: SimplicialComplex, S: Iterable[str]) -> SimplicialComplex:
    S = frozenset(S)
    unknown = S - set(K.vertices)
    if unknown:
        raise ValidationError(f"unknown vertices {sorted(unknown, key=vertex_key)}")
    return SimplicialComplex(tuple(S), frozenset(f for f in K.faces if f <= S))


def is_subcomplex(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    return set(L.vertices) <= set(K.vertices) and L.faces <= K.faces


def is_full_subcomplex(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Whether L is the restriction of K to the vertices L actually uses.

    Ghost vertices of L are ignored, so a subcomplex declared on the vertex
    set of K can still be full.
    """
    if not is_subcomplex(K, L):
        raise ValidationError("L is not a subcomplex of K")
    used = frozenset(L.used_vertices)
    return all(f in L.faces for f in K.faces if f <= used)


@dataclass(frozen=True)
class MissingFaceSet:
    """Inclusion-minimal non-faces, canonically ordered.

    ``ghost_vertices`` lists the vertices responsible for singleton members.
    """

    faces: tuple[frozenset, ...]
    ghost_vertices: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def as_sets(self) -> set[frozenset]:
        return set(self.faces)

    def mutually_disjoint(self) -> bool:
        seen: set[str] = set()
        for f in self.faces:
            if seen & f:
                return False
            seen |= f
        return True


def minimal_missing_faces(K: SimplicialComplex) -> MissingFaceSet:
    # every MMF is a face plus one vertex whose facets are all faces
    found = set()
    for tau in K.faces:
        for v in K.vertices:
            if v in tau:
                continue
            sigma = tau | {v}
            if sigma in K.faces or sigma in found:
                continue
            if all(sigma - {w} in K.faces for w in tau):
                found.add(sigma)
    faces = tuple(sorted(found, key=face_key))
    return MissingFaceSet(faces, K.ghost_vertices)


def mmf_mutually_disjoint(K: SimplicialComplex) -> bool:
    return minimal_missing_faces(K).mutually_disjoint()


@dataclass(frozen=True)
class JoinDecomposition:
    """K ≅ Δ(simplex_part) * ∂σ_1 * ... * ∂σ_n."""

    simplex_part: tuple[str, ...]
    boundary_parts: tuple[frozenset, ...]

    def reconstruct(self) -> SimplicialComplex:
        out = simplex(self.simplex_part)
        for sigma in self.boundary_parts:
            out = join(out, boundary(sorted_face(sigma)))
        return out


def join_decomposition(K: SimplicialComplex) -> JoinDecomposition:
    if K.ghost_vertices:
        raise ValidationError(f"ghost vertices present: {list(K.ghost_vertices)}")
    mmf = minimal_missing_faces(K)
    if not mmf.mutually_disjoint():
        raise ValidationError("minimal missing faces are not mutually disjoint")
    covered = set().union(*mmf.faces)
    return JoinDecomposition(tuple(v for v in K.vertices if v not in covered), mmf.faces)


def star_link_deletion_pushout_check(K: SimplicialComplex, v: str) -> bool:
    """Witness that K = st(v) ∪ (K∖v) glued along lk(v), and st(v) = lk(v) * v."""
    st, lk, dl = star(K, v), link(K, v), deletion(K, v)
    cone = join(lk, point(v))
    return (st.faces == cone.faces
            and K.faces == st.faces | dl.faces
            and st.faces & dl.faces == lk.faces)


def is_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex) -> bool:
    """Exhaustive search over bijections of non-ghost vertices; ghost counts must agree."""
    u1, u2 = K1.used_vertices, K2.used_vertices
    if max(len(u1), len(u2)) > ISOMORPHISM_GUARD:
        raise GuardExceeded(f"isomorphism test limited to {ISOMORPHISM_GUARD} non-ghost vertices")
    if (len(u1), len(K1.ghost_vertices), len(K1.faces)) != (len(u2), len(K2.ghost_vertices), len(K2.faces)):
        return False
    if sorted(map(len, K1.faces)) != sorted(map(len, K2.faces)):
        return False
    for perm in itertools.permutations(u2):
        m = dict(zip(u1, perm))
        if all(frozenset(m[v] for v in f) in K2.faces for f in K1.faces):
            return True
    return False
