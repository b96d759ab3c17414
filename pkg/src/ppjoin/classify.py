"""Rational type, exponent and mod-p^r verdicts for polyhedral products.

Every homotopy-theoretic fact about the input spaces arrives as a
:class:`SpaceMeta` assertion; nothing here tries to infer one.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, fields
from fractions import Fraction

from ppjoin.complexes import SimplicialComplex, minimal_missing_faces
from ppjoin.errors import ValidationError
from ppjoin.polyjoin import PolyJoinSpec, hyperbolicity_witnesses

# citation tags
MOMENT_ANGLE = "moment-angle"  # generalised moment-angle complexes (D^n, S^{n-1})
FIBRE_CRITERION = "fibre-criterion"  # ellipticity criterion via fibres Y_i of A_i -> X_i
CONE_MOORE = "cone-moore"  # (CA, A) with ΣA_i a wedge of spheres
CONE_ODD_PRIMES = "cone-odd-primes"  # (CA, A) with torsion-free A_i
FIBRE_HYPERBOLIC = "pushout-hyperbolic"  # (X, *) over a pushout with a full subcomplex
POLYJOIN_HYPERBOLIC = "polyjoin-hyperbolic"  # polyhedral join witness vertex
SUSPENSION_PRIMES = "suspension-primes"  # explicit exceptional primes for suspensions


class RationalType(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"
    INDETERMINATE = "Indeterminate"


class MooreStatus(str, enum.Enum):
    HOLDS = "Holds"
    HOLDS_AT_ODD_PRIMES = "HoldsAtOddPrimes"
    UNKNOWN = "Unknown"


class ClaimKind(str, enum.Enum):
    NO_EXPONENT = "NoExponent"
    FINITE_EXPONENT = "FiniteExponent"
    MOD_PR_HYPERBOLIC = "ModPrHyperbolicAllR"


class ScopeKind(str, enum.Enum):
    ALL_PRIMES = "AllPrimes"
    ALL_ODD_PRIMES = "AllOddPrimes"
    COFINITE_UNSPECIFIED = "AllButFinitelyManyUnspecified"
    EXPLICIT_COMPLEMENT = "ExplicitComplement"
    SOME_PRIME = "SomePrime"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeScope:
    kind: ScopeKind
    exceptions: tuple[int, ...] = ()

    def __post_init__(self):
        kind = ScopeKind(self.kind)
        exc = tuple(sorted(set(self.exceptions)))
        if any(not is_prime(p) for p in exc):
            raise ValidationError(f"exceptions must be primes, got {list(exc)}")
        if kind is not ScopeKind.EXPLICIT_COMPLEMENT and exc:
            raise ValidationError(f"{kind.value} carries no exception list")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "exceptions", exc)

    @classmethod
    def complement(cls, primes: Iterable[int]) -> PrimeScope:
        """Normalised: ∅ -> AllPrimes, {2} -> AllOddPrimes."""
        primes = tuple(sorted(set(primes)))
        if not primes:
            return ALL_PRIMES
        if primes == (2,):
            return ALL_ODD_PRIMES
        return cls(ScopeKind.EXPLICIT_COMPLEMENT, primes)

    def excluded(self) -> tuple[int, ...] | None:
        """Excluded primes when the scope is an explicit complement, else None."""
        if self.kind is ScopeKind.ALL_PRIMES:
            return ()
        if self.kind is ScopeKind.ALL_ODD_PRIMES:
            return (2,)
        if self.kind is ScopeKind.EXPLICIT_COMPLEMENT:
            return self.exceptions
        return None

    def describe(self) -> str:
        return {
            ScopeKind.ALL_PRIMES: "every prime",
            ScopeKind.ALL_ODD_PRIMES: "every odd prime",
            ScopeKind.COFINITE_UNSPECIFIED: "all but finitely many primes",
            ScopeKind.SOME_PRIME: "some prime",
        }.get(self.kind) or "every prime except " + ",".join(map(str, self.exceptions))

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is ScopeKind.EXPLICIT_COMPLEMENT:
            out["exceptions"] = list(self.exceptions)
        return out


ALL_PRIMES = PrimeScope(ScopeKind.ALL_PRIMES)
ALL_ODD_PRIMES = PrimeScope(ScopeKind.ALL_ODD_PRIMES)
COFINITE = PrimeScope(ScopeKind.COFINITE_UNSPECIFIED)
SOME_PRIME = PrimeScope(ScopeKind.SOME_PRIME)


def combine_prime_scopes(scopes: Sequence[PrimeScope]) -> PrimeScope:
    """Intersection of prime scopes.

    AllPrimes is the identity, explicit complements union their exceptions,
    an unspecified cofinite scope swallows any explicit one, and SomePrime
    (no guarantee about which prime) is the weakest of all.
    """
    kinds = {s.kind for s in scopes}
    if ScopeKind.SOME_PRIME in kinds:
        return SOME_PRIME
    if ScopeKind.COFINITE_UNSPECIFIED in kinds:
        return COFINITE
    excluded: set[int] = set()
    for s in scopes:
        excluded.update(s.excluded())
    return PrimeScope.complement(excluded)


@dataclass(frozen=True)
class SpaceMeta:
    name: str
    finite_cw: bool
    rationally_nontrivial: bool
    rationally_sphere: bool
    torsion_free_homology: bool
    susp_in_W: bool
    rationally_elliptic: bool
    loop_rationally_sphere: bool
    dimension: int | None = None
    connectivity: int | None = None
    torsion_primes: tuple[int, ...] | None = None

    def __post_init__(self):
        for f in FLAG_FIELDS:
            if not isinstance(getattr(self, f), bool):
                raise ValidationError(f"flag {f!r} of {self.name!r} must be a boolean")
        for f in ("dimension", "connectivity"):
            v = getattr(self, f)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int) or v < 0):
                raise ValidationError(f"{f} of {self.name!r} must be a nonnegative integer")
        if self.torsion_primes is not None:
            tp = tuple(sorted(set(self.torsion_primes)))
            if any(not is_prime(p) for p in tp):
                raise ValidationError(f"torsion_primes of {self.name!r} must be primes")
            object.__setattr__(self, "torsion_primes", tp)

    @classmethod
    def sphere(cls, n: int, name: str | None = None) -> SpaceMeta:
        """Flags for S^n (n ≥ 1).

        ΩS^n is never rationally a sphere: ΩS^{2k+1} ≃_Q K(Q, 2k) and
        ΩS^{2k} ≃_Q S^{2k-1} × ΩS^{4k-1}.
        """
        return cls(
            name=name or f"S{n}", finite_cw=True, rationally_nontrivial=True, rationally_sphere=True,
            torsion_free_homology=True, susp_in_W=True, rationally_elliptic=True,
            loop_rationally_sphere=False, dimension=n, connectivity=n - 1, torsion_primes=(),
        )

    def replace(self, **changes) -> SpaceMeta:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data.update(changes)
        return SpaceMeta(**data)


FLAG_FIELDS = ("finite_cw", "rationally_nontrivial", "rationally_sphere", "torsion_free_homology",
               "susp_in_W", "rationally_elliptic", "loop_rationally_sphere")


@dataclass(frozen=True)
class Claim:
    kind: ClaimKind
    scope: PrimeScope
    citations: tuple[str, ...]

    def __post_init__(self):
        if not self.citations:
            raise ValueError("every claim needs a citation")

    def describe(self) -> str:
        text = {
            ClaimKind.NO_EXPONENT: "no exponent at",
            ClaimKind.FINITE_EXPONENT: "finite exponent at",
            ClaimKind.MOD_PR_HYPERBOLIC: "mod-p^r hyperbolic for all r >= 1 at",
        }[self.kind]
        return f"{text} {self.scope.describe()}"


@dataclass(frozen=True)
class Verdict:
    rational_type: RationalType
    claims: tuple[Claim, ...] = ()
    moore_status: MooreStatus = MooreStatus.UNKNOWN
    citations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "rational_type": self.rational_type.value,
            "claims": [{"kind": c.kind.value, "scope": c.scope.to_json(), "citations": list(c.citations)}
                       for c in self.claims],
            "moore_status": self.moore_status.value,
            "citations": list(self.citations),
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        head = self.rational_type.value
        if self.citations:
            head += " — Theorem " + ", ".join(f"[{c}]" for c in self.citations)
        parts = [head] + [c.describe() for c in self.claims]
        lines = ["; ".join(parts), f"Moore's conjecture: {self.moore_status.value}"]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def _ghost_free(K: SimplicialComplex) -> None:
    if K.ghost_vertices:
        raise ValidationError(f"ghost vertices present: {list(K.ghost_vertices)}; classification needs a ghost-free complex")


def _arity(K: SimplicialComplex, items: Sequence, what: str) -> None:
    if len(items) != len(K.vertices):
        raise ValidationError(f"{what}: expected {len(K.vertices)} entries (one per vertex), got {len(items)}")


def _sphere_criterion(K: SimplicialComplex, sphere_flags: Sequence[bool]) -> tuple[bool, list[str]]:
    """Disjoint minimal missing faces and rational spheres at every vertex they cover."""
    mmf = minimal_missing_faces(K)
    reasons = []
    if not mmf.mutually_disjoint():
        reasons.append("minimal missing faces overlap")
    index = {v: k for k, v in enumerate(K.vertices)}
    bad = sorted({v for f in mmf for v in f if not sphere_flags[index[v]]}, key=index.get)
    if bad:
        reasons.append("vertices " + ",".join(bad) + " lie in a minimal missing face but are not rational spheres")
    return not reasons, reasons


def classify_moment_angle(K: SimplicialComplex, dims: Sequence[int]) -> Verdict:
    """Polyhedral product on (D^{n_i}, S^{n_i - 1}), n_i ≥ 1."""
    _ghost_free(K)
    _arity(K, dims, "dims")
    if any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in dims):
        raise ValidationError("every disk dimension must be an integer >= 1")
    mmf = minimal_missing_faces(K)
    cite = (MOMENT_ANGLE,)
    if mmf.mutually_disjoint():
        return Verdict(RationalType.ELLIPTIC, (Claim(ClaimKind.FINITE_EXPONENT, ALL_PRIMES, cite),),
                       MooreStatus.HOLDS, cite, ("minimal missing faces are mutually disjoint",))
    return Verdict(RationalType.HYPERBOLIC, (Claim(ClaimKind.NO_EXPONENT, ALL_PRIMES, cite),),
                   MooreStatus.HOLDS, cite, ("minimal missing faces overlap",))


def classify_cone_pair(K: SimplicialComplex, metas: Sequence[SpaceMeta]) -> Verdict:
    """Polyhedral product on (CA_i, A_i)."""
    _ghost_free(K)
    _arity(K, metas, "metas")
    not_finite = [m.name for m in metas if not m.finite_cw]
    if not_finite:
        raise ValidationError(f"finite_cw must hold for every A_i; fails for {not_finite}")

    if not all(m.rationally_nontrivial for m in metas):
        trivial = [m.name for m in metas if not m.rationally_nontrivial]
        return Verdict(RationalType.INDETERMINATE,
                       notes=(f"rationally_nontrivial fails for {trivial}; no criterion applies",))

    elliptic, reasons = _sphere_criterion(K, [m.rationally_sphere for m in metas])
    rtype = RationalType.ELLIPTIC if elliptic else RationalType.HYPERBOLIC
    notes = reasons or ["minimal missing faces are disjoint and cover only rational spheres"]
    claims: list[Claim] = []
    citations: list[str] = []
    moore = MooreStatus.UNKNOWN

    if all(m.susp_in_W for m in metas):
        cite = (CONE_MOORE,)
        citations.append(CONE_MOORE)
        kind = ClaimKind.FINITE_EXPONENT if elliptic else ClaimKind.NO_EXPONENT
        claims.append(Claim(kind, ALL_PRIMES, cite))
        moore = MooreStatus.HOLDS
    else:
        citations.append(FIBRE_CRITERION)
        notes.append("cones CA_i are rationally elliptic, fibres are the A_i")
        notes.append("susp_in_W fails for " + ",".join(m.name for m in metas if not m.susp_in_W))

    if rtype is RationalType.HYPERBOLIC:
        if all(m.torsion_free_homology for m in metas):
            citations.append(CONE_ODD_PRIMES)
            if moore is not MooreStatus.HOLDS:
                claims.append(Claim(ClaimKind.NO_EXPONENT, ALL_ODD_PRIMES, (CONE_ODD_PRIMES,)))
                moore = MooreStatus.HOLDS_AT_ODD_PRIMES
        elif moore is not MooreStatus.HOLDS:
            notes.append("torsion_free_homology fails; no exponent conclusion")
    return Verdict(rtype, tuple(claims), moore, tuple(citations), tuple(notes))


def classify_general(K: SimplicialComplex, fibre_metas: Sequence[SpaceMeta],
                     ambient_elliptic: Sequence[bool]) -> Verdict:
    """Rational type of (X, A)^K from the fibres Y_i of A_i -> X_i."""
    _ghost_free(K)
    _arity(K, fibre_metas, "fibre_metas")
    _arity(K, ambient_elliptic, "ambient_elliptic")
    trivial = [m.name for m in fibre_metas if not m.rationally_nontrivial]
    if trivial:
        raise ValidationError(f"precondition rationally_nontrivial fails for fibres {trivial}")
    elliptic, reasons = _sphere_criterion(K, [m.rationally_sphere for m in fibre_metas])
    not_elliptic = [v for v, e in zip(K.vertices, ambient_elliptic) if not e]
    if not_elliptic:
        reasons.insert(0, "X_i not rationally elliptic at vertices " + ",".join(not_elliptic))
    rtype = RationalType.ELLIPTIC if elliptic and not not_elliptic else RationalType.HYPERBOLIC
    return Verdict(rtype, (), MooreStatus.UNKNOWN, (FIBRE_CRITERION,),
                   tuple(reasons) or ("all three conditions hold",))


def suspension_prime_set(meta: SpaceMeta) -> tuple[int, ...]:
    """Primes q ≤ (1 + d - s)/2 together with the torsion primes of H_*(X; Z)."""
    missing = [f for f in ("dimension", "connectivity", "torsion_primes") if getattr(meta, f) is None]
    if missing:
        raise ValidationError(f"{meta.name!r} lacks {', '.join(missing)}")
    bound = Fraction(1 + meta.dimension - meta.connectivity, 2)
    small = [q for q in range(2, int(bound) + 1) if is_prime(q)]
    return tuple(sorted(set(small) | set(meta.torsion_primes)))


def _check_x_metas(x_metas: Sequence[SpaceMeta]) -> None:
    for m in x_metas:
        for flag, want in (("rationally_elliptic", True), ("rationally_nontrivial", True),
                           ("loop_rationally_sphere", False)):
            if getattr(m, flag) is not want:
                raise ValidationError(f"precondition {flag}={str(want).lower()} fails for {m.name!r}")


def classify_poly_join(spec: PolyJoinSpec, x_metas: Sequence[SpaceMeta]) -> Verdict:
    """(X, *) over a polyhedral join; sufficient criterion for hyperbolicity only.

    ``x_metas`` holds one entry per vertex of the polyhedral join, or a single
    entry used for all of them.
    """
    n = spec.total_vertices
    if len(x_metas) not in (1, n):
        raise ValidationError(f"expected 1 or {n} x_metas, got {len(x_metas)}")
    _check_x_metas(x_metas)
    witnesses = hyperbolicity_witnesses(spec)
    if not witnesses:
        return Verdict(RationalType.INDETERMINATE, notes=(
            "no base vertex i with L_i a proper full subcomplex of K_i and lk_M(i) != M\\i; "
            "the criterion is sufficient only",))
    cite = (POLYJOIN_HYPERBOLIC, FIBRE_HYPERBOLIC)
    claims = (Claim(ClaimKind.MOD_PR_HYPERBOLIC, COFINITE, cite), Claim(ClaimKind.NO_EXPONENT, COFINITE, cite))
    notes = [f"witness base vertices: {','.join(witnesses)}"]
    if all(m.dimension is not None and m.connectivity is not None and m.torsion_primes is not None
           for m in x_metas):
        primes = sorted(set().union(*(suspension_prime_set(m) for m in x_metas)))
        notes.append("if every X_i is a finite suspension, the exceptional primes lie in {"
                     + ",".join(map(str, primes)) + "} [" + SUSPENSION_PRIMES + "]")
    return Verdict(RationalType.HYPERBOLIC, claims, MooreStatus.UNKNOWN, cite, tuple(notes))


def expand_metas(K: SimplicialComplex, metas: dict[str, SpaceMeta], default: str = "*") -> list[SpaceMeta]:
    """One meta per vertex of K, looked up by label with a fallback entry."""
    out = []
    for v in K.vertices:
        m = metas.get(v) or metas.get(default)
        if m is None:
            raise ValidationError(f"no metadata for vertex {v!r} and no {default!r} entry")
        out.append(m)
    return out

