"""Brute-force reference implementations and a seeded corpus.

Nothing here reuses the construction logic of the main modules; only the
SimplicialComplex container and label helpers are shared.  Guards fail
loudly instead of truncating.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ppjoin.complexes import SimplicialComplex, boundary, build_complex, cycle, path, point, simplex
from ppjoin.errors import GuardExceeded, ValidationError
from ppjoin.polyjoin import ComplexPair, PolyJoinSpec

POLYJOIN_GUARD = 14
MMF_GUARD = 16
FULL_SUBCOMPLEX_GUARD = 12


def _subsets(items):
    items = list(items)
    return itertools.chain.from_iterable(itertools.combinations(items, r) for r in range(len(items) + 1))


def brute_polyjoin_over(base: SimplicialComplex, pairs: dict) -> SimplicialComplex:
    """Literal union over σ ∈ M of the joins Y_1 * ... * Y_m (Y_i = K_i on σ, L_i off σ)."""
    labels = list(base.vertices)
    total = sum(len(pairs[i].big.vertices) for i in labels)
    if total > POLYJOIN_GUARD:
        raise GuardExceeded(f"{total} output vertices exceeds {POLYJOIN_GUARD}")
    renamed = {}
    for i in labels:
        pair = pairs[i]
        renamed[i] = (
            [frozenset(f"{i}.{v}" for v in f) for f in pair.big.faces],
            [frozenset(f"{i}.{v}" for v in f) for f in pair.small.faces],
        )
    faces = set()
    for sigma in base.faces:
        factors = [renamed[i][0] if i in sigma else renamed[i][1] for i in labels]
        for combo in itertools.product(*factors):
            faces.add(frozenset().union(*combo))
    verts = [f"{i}.{v}" for i in labels for v in pairs[i].big.vertices]
    return SimplicialComplex(tuple(verts), frozenset(faces))


def brute_polyjoin(spec: PolyJoinSpec) -> SimplicialComplex:
    return brute_polyjoin_over(spec.base, dict(zip(spec.base.vertices, spec.pairs)))


def brute_mmf(K: SimplicialComplex) -> set[frozenset]:
    """Every non-face all of whose codimension-one subsets are faces."""
    if len(K.vertices) > MMF_GUARD:
        raise GuardExceeded(f"{len(K.vertices)} vertices exceeds {MMF_GUARD}")
    out = set()
    for sub in _subsets(K.vertices):
        s = frozenset(sub)
        if s in K.faces:
            continue
        if all(s - {v} in K.faces for v in s):
            out.add(s)
    return out


def brute_full_subcomplexes(spec: PolyJoinSpec) -> list[tuple[frozenset, SimplicialComplex]]:
    whole = brute_polyjoin(spec)
    if len(whole.vertices) > FULL_SUBCOMPLEX_GUARD:
        raise GuardExceeded(f"{len(whole.vertices)} vertices exceeds {FULL_SUBCOMPLEX_GUARD}")
    out = []
    for sub in _subsets(whole.vertices):
        S = frozenset(sub)
        out.append((S, SimplicialComplex(tuple(sub), frozenset(f for f in whole.faces if f <= S))))
    return out


def _is_lyndon(word: tuple[int, ...]) -> bool:
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


def lyndon_ranks(num_generators: int, max_word_length: int) -> list[int]:
    """Number of Lyndon words of each length 1..max_word_length, by direct enumeration."""
    if num_generators > 4 or max_word_length > 12:
        raise GuardExceeded("lyndon_ranks limited to 4 generators and length 12")
    if num_generators < 1 or max_word_length < 1:
        raise ValidationError("need at least one generator and length >= 1")
    return [sum(1 for w in itertools.product(range(num_generators), repeat=n) if _is_lyndon(w))
            for n in range(1, max_word_length + 1)]


def witt_count(num_generators: int, length: int) -> int:
    """Necklace formula (1/n) Σ_{d | n} μ(n/d) q^d."""

    def mobius(n: int) -> int:
        result, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                result = -result
            p += 1
        return -result if n > 1 else result

    total = sum(mobius(length // d) * num_generators ** d for d in range(1, length + 1) if length % d == 0)
    return total // length


# ---------------------------------------------------------------- corpus

@dataclass(frozen=True)
class CorpusSpec:
    max_base_vertices: int = 4
    max_pair_vertices: int = 3
    seed: int = 20240917
    count: int = 500


def named_complexes() -> dict[str, SimplicialComplex]:
    out = {
        "C4": cycle(4), "C5": cycle(5), "C6": cycle(6),
        "P3": path(3), "P4": path(4),
        "D0": simplex(1), "D1": simplex(2), "D2": simplex(3), "D3": simplex(4),
        "dD1": boundary(2), "dD2": boundary(3), "dD3": boundary(4),
        "pt": point("1"),
    }
    return out


def random_complex(rng: random.Random, n_vertices: int, ghosts: bool = True, prefix: str = "") -> SimplicialComplex:
    labels = [f"{prefix}{k}" for k in range(1, n_vertices + 1)]
    gens = []
    for _ in range(rng.randint(0, max(1, n_vertices + 1))):
        size = rng.randint(1, n_vertices) if n_vertices else 0
        gens.append(rng.sample(labels, size))
    if not ghosts:
        gens += [[v] for v in labels]
    return build_complex(labels, gens)


def random_subcomplex(rng: random.Random, K: SimplicialComplex) -> SimplicialComplex:
    faces = [f for f in K.faces if f]
    picks = [f for f in faces if rng.random() < 0.4]
    return build_complex(K.vertices, picks)


def complex_corpus(count: int, max_vertices: int = 6, seed: int = 20240917, ghosts: bool = True) -> list[SimplicialComplex]:
    """Named complexes first, then seeded random ones."""
    rng = random.Random(seed)
    out = [K for K in named_complexes().values() if len(K.vertices) <= max_vertices]
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        out.append(random_complex(rng, n, ghosts=ghosts and rng.random() < 0.2))
    return out[:count]


def random_spec(rng: random.Random, corpus: CorpusSpec) -> PolyJoinSpec:
    m = rng.randint(1, corpus.max_base_vertices)
    base = random_complex(rng, m, ghosts=False)
    pairs = []
    for _ in range(m):
        k = rng.randint(1, corpus.max_pair_vertices)
        big = random_complex(rng, k, ghosts=rng.random() < 0.2, prefix="v")
        roll = rng.random()
        if roll < 0.15:
            small = build_complex(big.vertices, [])
        elif roll < 0.3:
            small = big
        elif roll < 0.5:
            used = [v for v in big.used_vertices if rng.random() < 0.6]
            small = SimplicialComplex(big.vertices, frozenset(f for f in big.faces if f <= set(used)))
        else:
            small = random_subcomplex(rng, big)
        pairs.append(ComplexPair(big, small))
    return PolyJoinSpec(base, tuple(pairs))


def named_specs() -> list[PolyJoinSpec]:
    edge = build_complex(["a", "b"], [["a", "b"]])
    a = build_complex(["a", "b"], [["a"]])
    m3 = path(3)
    return [
        PolyJoinSpec(boundary(2), (ComplexPair(edge, a), ComplexPair(point("x"), point("x")))),
        PolyJoinSpec(m3, tuple(ComplexPair(point("x"), build_complex(["x"])) for _ in m3.vertices)),
        PolyJoinSpec(m3, tuple(ComplexPair(point("x"), point("x")) for _ in m3.vertices)),
        PolyJoinSpec(boundary(2), (ComplexPair(edge, a), ComplexPair(edge, a))),
        PolyJoinSpec(simplex(2), (ComplexPair(boundary(["a", "b"]), build_complex(["a", "b"], [["a"]])),
                                  ComplexPair(edge, build_complex(["a", "b"], [["a"], ["b"]])))),
    ]


def spec_corpus(corpus: CorpusSpec) -> list[PolyJoinSpec]:
    """Named specs first, then seeded random ones; deterministic in the seed."""
    rng = random.Random(corpus.seed)
    out = [s for s in named_specs()
           if len(s.base.vertices) <= corpus.max_base_vertices
           and all(len(p.big.vertices) <= corpus.max_pair_vertices for p in s.pairs)]
    while len(out) < corpus.count:
        out.append(random_spec(rng, corpus))
    return out[:corpus.count]
