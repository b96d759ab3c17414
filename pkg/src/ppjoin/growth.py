"""Ranks of rational homotopy of loops on a wedge of spheres.

H_*(Ω(S^{n_1} ∨ ... ∨ S^{n_r}); Q) is the tensor algebra on generators of
degree n_i - 1, the universal enveloping algebra of the free graded Lie
algebra of rational homotopy.  The ranks d_k are recovered from the graded
Poincaré–Birkhoff–Witt identity

    ∏_{k odd} (1 + t^k)^{d_k} · ∏_{k even} (1 - t^k)^{-d_k} = 1 / (1 - Σ_i t^{n_i - 1})

one degree at a time, in exact integer arithmetic.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from math import comb

from ppjoin.errors import GuardExceeded, ValidationError

MAX_DEGREE = 64


def tensor_series(generator_degrees: Sequence[int], max_degree: int) -> list[int]:
    """Coefficients of 1/(1 - Σ t^{g_i}) for degrees 0..max_degree."""
    coeffs = [1] + [0] * max_degree
    for k in range(1, max_degree + 1):
        coeffs[k] = sum(coeffs[k - g] for g in generator_degrees if g <= k)
    return coeffs


def _mul_factor(poly: list[int], degree: int, rank: int) -> list[int]:
    """Multiply by (1 + t^degree)^rank (odd degree) or (1 - t^degree)^(-rank) (even), truncated."""
    top = len(poly) - 1
    if rank == 0:
        return poly
    if degree % 2:
        factor = [comb(rank, j) for j in range(top // degree + 1)]
    else:
        factor = [comb(rank + j - 1, j) for j in range(top // degree + 1)]
    out = [0] * (top + 1)
    for a, ca in enumerate(poly):
        if not ca:
            continue
        for j, cj in enumerate(factor):
            b = a + j * degree
            if b > top:
                break
            out[b] += ca * cj
    return out


def pbw_series(ranks: Sequence[int], max_degree: int) -> list[int]:
    """The PBW product for ranks d_1, d_2, ... as coefficients 0..max_degree."""
    poly = [1] + [0] * max_degree
    for k, d in enumerate(ranks, start=1):
        if k > max_degree:
            break
        poly = _mul_factor(poly, k, d)
    return poly


def _generator_degrees(sphere_dims: Iterable[int]) -> list[int]:
    dims = list(sphere_dims)
    if not dims:
        raise ValidationError("need at least one sphere")
    if any(isinstance(n, bool) or not isinstance(n, int) or n < 2 for n in dims):
        raise ValidationError(f"sphere dimensions must be integers >= 2, got {dims}")
    return [n - 1 for n in dims]


def rational_rank_series(sphere_dims: Iterable[int], max_degree: int) -> list[int]:
    """dim π_k(Ω ⋁ S^{n_i}) ⊗ Q for k = 1..max_degree."""
    if max_degree > MAX_DEGREE:
        raise GuardExceeded(f"max_degree {max_degree} exceeds {MAX_DEGREE}")
    if max_degree < 1:
        raise ValidationError("max_degree must be >= 1")
    target = tensor_series(_generator_degrees(sphere_dims), max_degree)
    poly = [1] + [0] * max_degree
    ranks = []
    for k in range(1, max_degree + 1):
        d = target[k] - poly[k]
        if d < 0:
            raise ArithmeticError(f"negative rank {d} in degree {k}")
        ranks.append(d)
        poly = _mul_factor(poly, k, d)
    return ranks


def reconstruction_residual(sphere_dims: Iterable[int], ranks: Sequence[int], max_degree: int) -> list[int]:
    """Tensor-algebra series minus PBW product, degree by degree; all zero when ranks are right."""
    target = tensor_series(_generator_degrees(sphere_dims), max_degree)
    got = pbw_series(ranks, max_degree)
    return [a - b for a, b in zip(target, got)]


def cumulative(ranks: Sequence[int], upto: int) -> int:
    return sum(ranks[:upto])
