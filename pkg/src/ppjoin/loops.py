"""Emit loop-space decompositions of polyhedral products as expressions.

The emitters build the formulas literally, leaving every leaf whose
homotopy type is not determined combinatorially as an opaque ``Atom``.
They never check topological hypotheses; callers assert those.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ppjoin.complexes import SimplicialComplex, delete_vertices, link, minimal_missing_faces
from ppjoin.errors import ValidationError
from ppjoin.expr import (
    POINT,
    Atom,
    Expr,
    Join2,
    Loop,
    Product,
    RightHalfSmash,
    Smash,
    Susp,
    Wedge,
)
from ppjoin.polyjoin import PolyJoinSpec, poly_join_over


def loop_decomposition_cone(K: SimplicialComplex, atoms: Sequence[Expr]) -> Expr:
    """ΩZ_K(CA, A) ≃ ∏_j Ω Σ^{|σ_j|-1} ∧_{v∈σ_j} A_v over the (disjoint) minimal missing faces."""
    if K.ghost_vertices:
        raise ValidationError(f"ghost vertices present: {list(K.ghost_vertices)}")
    if len(atoms) != len(K.vertices):
        raise ValidationError(f"expected {len(K.vertices)} atoms, got {len(atoms)}")
    mmf = minimal_missing_faces(K)
    if not mmf.mutually_disjoint():
        raise ValidationError("minimal missing faces are not mutually disjoint")
    if not mmf.faces:
        return POINT
    by_vertex = dict(zip(K.vertices, atoms))
    factors = []
    for sigma in mmf.faces:
        verts = [v for v in K.vertices if v in sigma]
        sm = Smash(tuple(by_vertex[v] for v in verts))
        factors.append(Loop(Susp(len(verts) - 1, sm) if len(verts) > 1 else sm))
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


PUSHOUT_VARIANTS = ("generic", "full-subcomplex", "null-inclusion")

DEFAULT_NAMES = {"M": "PP[M]", "L": "PP[L]", "K": "PP[K]", "F": "F", "G": "G", "H": "H"}


def loop_decomposition_pushout(variant: str, names: Mapping[str, str] | None = None) -> Expr:
    """Loop decomposition of (X, A) over M̄ = (N*K) ∪_{N*L} (M*L).

    ``generic``          ΩM̄ ≃ ΩM × ΩF
    ``full-subcomplex``  ΩM̄ ≃ ΩM × ΩL × ΩH × Ω(ΣG ∧ ΩH), pair (X, *), L full in K
    ``null-inclusion``   F ≃ (L ∗ G) ∨ (K ⋊ G) when (X,A)^L -> (X,A)^K is null
    """
    n = dict(DEFAULT_NAMES)
    n.update(names or {})
    M, L, K, F, G, H = (Atom(n[k]) for k in ("M", "L", "K", "F", "G", "H"))
    if variant == "generic":
        return Product((Loop(M), Loop(F)))
    if variant == "full-subcomplex":
        return Product((Loop(M), Loop(L), Loop(H), Loop(Smash((Susp(1, G), Loop(H))))))
    if variant == "null-inclusion":
        return Product((Loop(M), Loop(Wedge((Join2(L, G), RightHalfSmash(K, G))))))
    raise ValidationError(f"unknown variant {variant!r}; expected one of {', '.join(PUSHOUT_VARIANTS)}")


@dataclass(frozen=True)
class FibreTag:
    """Provenance of an atom: the homotopy fibre of (X,*)^source -> (X,*)^target."""

    role: str  # "G", "H" or "PP"
    vertex: str
    source: SimplicialComplex
    target: SimplicialComplex | None = None
    base_source: SimplicialComplex | None = None
    base_target: SimplicialComplex | None = None

    @property
    def trivial(self) -> bool:
        """Fibre of an identity map."""
        return self.target is not None and self.source.faces == self.target.faces


def loop_decomposition_polyjoin(spec: PolyJoinSpec) -> Expr:
    """∏_i Ω(X,*)^{L_i} × ΩH_i × Ω(ΣG_i ∧ ΩH_i), eliminating base vertices last to first.

    G_i is the fibre over lk_{M∖{m..i+1}}(i) -> M∖{m..i}, H_i the fibre of
    (X,*)^{K_i} -> (X,*)^{L_i}.  When K_i = L_i the fibre H_i is contractible
    and is emitted as a point.
    """
    labels = spec.base.vertices
    pairs = spec.pair_map
    for i in labels:
        if not pairs[i].full:
            raise ValidationError(f"L_{i} is not a full subcomplex of K_{i}")
    factors: list[Expr] = []
    for idx, i in enumerate(labels):
        later = labels[idx + 1:]
        trimmed = delete_vertices(spec.base, later)
        lk = link(trimmed, i)
        target = delete_vertices(trimmed, [i])
        rest = {j: pairs[j] for j in lk.vertices}
        G = Atom(f"G[{i}]", tag=FibreTag("G", i, poly_join_over(lk, rest), poly_join_over(target, rest), lk, target))
        big, small = pairs[i].namespaced(i)
        if pairs[i].proper:
            H: Expr = Atom(f"H[{i}]", tag=FibreTag("H", i, big, small))
        else:
            H = POINT
        PL = Atom(f"PP[L{i}]", tag=FibreTag("PP", i, small))
        factors += [Loop(PL), Loop(H), Loop(Smash((Susp(1, G), Loop(H))))]
    return Product(tuple(factors))
