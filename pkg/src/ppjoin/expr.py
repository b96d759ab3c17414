"""Pointed-space expressions, their text grammar, and a rewriting simplifier.

Grammar (whitespace ignored by the parser, never emitted by the printer)::

    e := S^n | pt | atom:NAME | W(e,...) | P(e,...) | Sm(e,...) | J(e,e)
       | Susp^k(e) | Om(e) | RHS(e,e) | Cone(e) | Tail^d(e)

``Tail^d(e)`` marks the summands of dimension > d dropped when a James
splitting is truncated at ``d``; the rewriter treats it as opaque.
"""

from __future__ import annotations

import itertools
import random
import re
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field

from ppjoin.errors import ValidationError

_NAME = re.compile(r"[^\s(),]+")


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()

    def children(self) -> tuple[Expr, ...]:
        return ()

    def with_children(self, kids: tuple[Expr, ...]) -> Expr:
        return self

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Point(Expr):
    pass


@dataclass(frozen=True)
class Sphere(Expr):
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValidationError(f"sphere dimension must be >= 1, got {self.n!r}")


@dataclass(frozen=True)
class Atom(Expr):
    """Opaque named space.  ``tag`` carries provenance and is ignored by equality."""

    name: str
    tag: object = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME.fullmatch(self.name):
            raise ValidationError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class _NAry(Expr):
    items: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ValidationError(f"{type(self).__name__} needs at least one operand")

    def children(self):
        return self.items

    def with_children(self, kids):
        return type(self)(tuple(kids))


class Wedge(_NAry):
    pass


class Product(_NAry):
    pass


class Smash(_NAry):
    pass


@dataclass(frozen=True)
class Join2(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def with_children(self, kids):
        return Join2(*kids)


@dataclass(frozen=True)
class RightHalfSmash(Expr):
    """A ⋊ B = (A × B) / ({*} × B)."""

    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)

    def with_children(self, kids):
        return RightHalfSmash(*kids)


@dataclass(frozen=True)
class Susp(Expr):
    k: int
    expr: Expr

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ValidationError(f"suspension order must be >= 1, got {self.k!r}")

    def children(self):
        return (self.expr,)

    def with_children(self, kids):
        return Susp(self.k, kids[0])


@dataclass(frozen=True)
class Loop(Expr):
    expr: Expr

    def children(self):
        return (self.expr,)

    def with_children(self, kids):
        return Loop(kids[0])


@dataclass(frozen=True)
class Cone(Expr):
    expr: Expr

    def children(self):
        return (self.expr,)

    def with_children(self, kids):
        return Cone(kids[0])


@dataclass(frozen=True)
class Tail(Expr):
    degree: int
    expr: Expr

    def __post_init__(self):
        if isinstance(self.degree, bool) or not isinstance(self.degree, int) or self.degree < 1:
            raise ValidationError(f"tail degree must be >= 1, got {self.degree!r}")

    # opaque: the rewriter never looks inside


POINT = Point()


def wedge(*items: Expr) -> Wedge:
    return Wedge(items)


def product(*items: Expr) -> Product:
    return Product(items)


def smash(*items: Expr) -> Smash:
    return Smash(items)


def susp(e: Expr, k: int = 1) -> Susp:
    return Susp(k, e)


# ---------------------------------------------------------------- printing

def to_text(e: Expr) -> str:
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Sphere):
        return f"S^{e.n}"
    if isinstance(e, Atom):
        return f"atom:{e.name}"
    if isinstance(e, _NAry):
        head = {Wedge: "W", Product: "P", Smash: "Sm"}[type(e)]
        return f"{head}({','.join(map(to_text, e.items))})"
    if isinstance(e, Join2):
        return f"J({to_text(e.left)},{to_text(e.right)})"
    if isinstance(e, RightHalfSmash):
        return f"RHS({to_text(e.left)},{to_text(e.right)})"
    if isinstance(e, Susp):
        return f"Susp^{e.k}({to_text(e.expr)})"
    if isinstance(e, Loop):
        return f"Om({to_text(e.expr)})"
    if isinstance(e, Cone):
        return f"Cone({to_text(e.expr)})"
    if isinstance(e, Tail):
        return f"Tail^{e.degree}({to_text(e.expr)})"
    raise TypeError(f"not an expression: {e!r}")


def to_unicode(e: Expr) -> str:
    """Human-readable rendering, e.g. ``ΩS^3 × ΩS^3``."""

    def wrap(x: Expr) -> str:
        s = to_unicode(x)
        return f"({s})" if isinstance(x, (_NAry, Join2, RightHalfSmash)) and len(x.children()) > 1 else s

    if isinstance(e, Point):
        return "*"
    if isinstance(e, Sphere):
        return f"S^{e.n}"
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, _NAry):
        sep = {Wedge: " ∨ ", Product: " × ", Smash: " ∧ "}[type(e)]
        return sep.join(map(wrap, e.items))
    if isinstance(e, Join2):
        return f"{wrap(e.left)} ∗ {wrap(e.right)}"
    if isinstance(e, RightHalfSmash):
        return f"{wrap(e.left)} ⋊ {wrap(e.right)}"
    if isinstance(e, Susp):
        return ("Σ" if e.k == 1 else f"Σ^{e.k}") + wrap(e.expr)
    if isinstance(e, Loop):
        return "Ω" + wrap(e.expr)
    if isinstance(e, Cone):
        return "C" + wrap(e.expr)
    if isinstance(e, Tail):
        return f"[>{e.degree}: {to_unicode(e.expr)}]"
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<punct>[(),])|(?P<word>[^\s(),]+))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValidationError(f"cannot tokenize expression at offset {pos}")
        out.append(m.group("punct") or m.group("word"))
        pos = m.end()
    return out


def parse(text: str) -> Expr:
    tokens = _tokenize(text)
    pos = 0

    def expect(tok: str) -> None:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise ValidationError(f"expected {tok!r}, got {got!r}")
        pos += 1

    def args() -> list[Expr]:
        nonlocal pos
        expect("(")
        out = [expr()]
        while pos < len(tokens) and tokens[pos] == ",":
            pos += 1
            out.append(expr())
        expect(")")
        return out

    def exactly(n: int, head: str) -> list[Expr]:
        xs = args()
        if len(xs) != n:
            raise ValidationError(f"{head} takes {n} argument(s), got {len(xs)}")
        return xs

    def expr() -> Expr:
        nonlocal pos
        if pos >= len(tokens):
            raise ValidationError("unexpected end of expression")
        word = tokens[pos]
        pos += 1
        if word == "pt":
            return POINT
        if word.startswith("atom:"):
            return Atom(word[5:])
        m = re.fullmatch(r"(S|Susp|Tail)\^(\d+)", word)
        if m:
            head, num = m.group(1), int(m.group(2))
            if head == "S":
                return Sphere(num)
            inner = exactly(1, head)[0]
            return Susp(num, inner) if head == "Susp" else Tail(num, inner)
        if word in ("W", "P", "Sm"):
            return {"W": Wedge, "P": Product, "Sm": Smash}[word](tuple(args()))
        if word == "J":
            return Join2(*exactly(2, word))
        if word == "RHS":
            return RightHalfSmash(*exactly(2, word))
        if word == "Om":
            return Loop(exactly(1, word)[0])
        if word == "Cone":
            return Cone(exactly(1, word)[0])
        raise ValidationError(f"unknown token {word!r}")

    e = expr()
    if pos != len(tokens):
        raise ValidationError(f"trailing tokens after expression: {' '.join(tokens[pos:])}")
    return e


# ---------------------------------------------------------------- canonical form

_RANK = {Point: 0, Sphere: 1, Atom: 2, Tail: 3, Susp: 4, Loop: 5, Cone: 6, Smash: 7,
         Product: 8, Wedge: 9, Join2: 10, RightHalfSmash: 11}


def struct_key(e: Expr):
    """Total structural order: node kind, then parameters, then children."""
    if isinstance(e, Sphere):
        param = e.n
    elif isinstance(e, Atom):
        param = e.name
    elif isinstance(e, Susp):
        param = e.k
    elif isinstance(e, Tail):
        return (_RANK[Tail], e.degree, (struct_key(e.expr),))
    else:
        param = 0
    return (_RANK[type(e)], param, tuple(struct_key(c) for c in e.children()))


def canonical(e: Expr) -> Expr:
    """Flatten and sort commutative operands, drop units, merge nested suspensions."""
    if isinstance(e, Tail):
        return e
    kids = tuple(canonical(c) for c in e.children())
    if isinstance(e, _NAry):
        flat: list[Expr] = []
        for c in kids:
            flat.extend(c.items if type(c) is type(e) else (c,))
        if isinstance(e, (Wedge, Product)):
            flat = [c for c in flat if not isinstance(c, Point)]
            if not flat:
                return POINT
        if len(flat) == 1:
            return flat[0]
        return type(e)(tuple(sorted(flat, key=struct_key)))
    if isinstance(e, Join2):
        return Join2(*sorted(kids, key=struct_key))
    if isinstance(e, Susp) and isinstance(kids[0], Susp):
        return Susp(e.k + kids[0].k, kids[0].expr)
    return e.with_children(kids)


# ---------------------------------------------------------------- rules

Rule = Callable[[Expr, int], "Expr | None"]


def _sphere_smash(e, cap):
    if isinstance(e, Smash):
        spheres = [c for c in e.items if isinstance(c, Sphere)]
        if len(spheres) >= 2:
            rest = [c for c in e.items if not isinstance(c, Sphere)]
            return Smash(tuple(rest) + (Sphere(sum(s.n for s in spheres)),))
    return None


def _sphere_susp(e, cap):
    if isinstance(e, Susp) and isinstance(e.expr, Sphere):
        return Sphere(e.expr.n + e.k)
    return None


def _smash_point(e, cap):
    if isinstance(e, Smash) and any(isinstance(c, Point) for c in e.items):
        return POINT
    return None


def _susp_point(e, cap):
    if isinstance(e, Susp) and isinstance(e.expr, Point):
        return POINT
    return None


def _loop_point(e, cap):
    if isinstance(e, Loop) and isinstance(e.expr, Point):
        return POINT
    return None


def _cone_contract(e, cap):
    return POINT if isinstance(e, Cone) else None


def _half_smash_point(e, cap):
    if isinstance(e, RightHalfSmash):
        if isinstance(e.left, Point):
            return POINT
        if isinstance(e.right, Point):
            return e.left
    return None


def _susp_wedge(e, cap):
    if isinstance(e, Susp) and isinstance(e.expr, Wedge):
        return Wedge(tuple(Susp(e.k, c) for c in e.expr.items))
    return None


def _smash_wedge(e, cap):
    if isinstance(e, Smash) and any(isinstance(c, Wedge) for c in e.items):
        choices = [c.items if isinstance(c, Wedge) else (c,) for c in e.items]
        return Wedge(tuple(Smash(combo) for combo in itertools.product(*choices)))
    return None


def _join_smash(e, cap):
    if isinstance(e, Join2):
        return Susp(1, Smash((e.left, e.right)))
    return None


def _loop_half_smash(e, cap):
    # Ω(H ⋊ G) ≃ ΩH × Ω(ΣG ∧ ΩH)
    if isinstance(e, Loop) and isinstance(e.expr, RightHalfSmash):
        H, G = e.expr.left, e.expr.right
        return Product((Loop(H), Loop(Smash((Susp(1, G), Loop(H))))))
    return None


def _susp_product(e, cap):
    # Σ(A_1 × ... × A_r) ≃ ⋁_{∅ ≠ S} Σ(∧_{i∈S} A_i)
    if isinstance(e, Susp) and isinstance(e.expr, Product):
        items = e.expr.items
        parts = []
        for r in range(1, len(items) + 1):
            for combo in itertools.combinations(items, r):
                parts.append(Susp(e.k, combo[0] if r == 1 else Smash(combo)))
        return Wedge(tuple(parts))
    return None


def _loop_product(e, cap):
    if isinstance(e, Loop) and isinstance(e.expr, Product):
        return Product(tuple(Loop(c) for c in e.expr.items))
    return None


def _james(e, cap):
    # Σ^k ΩS^n ≃ ⋁_{j ≥ 1} S^{j(n-1)+k}, truncated at dimension cap
    if isinstance(e, Susp) and isinstance(e.expr, Loop) and isinstance(e.expr.expr, Sphere):
        n = e.expr.expr.n
        if n < 2:
            return None
        dims = [j * (n - 1) + e.k for j in range(1, cap + 1) if j * (n - 1) + e.k <= cap]
        return Wedge(tuple(Sphere(d) for d in dims) + (Tail(cap, e),))
    return None


RULES: dict[str, Rule] = {
    "sphere-smash": _sphere_smash,
    "sphere-susp": _sphere_susp,
    "smash-point": _smash_point,
    "susp-point": _susp_point,
    "loop-point": _loop_point,
    "cone-contract": _cone_contract,
    "half-smash-point": _half_smash_point,
    "susp-wedge": _susp_wedge,
    "smash-wedge": _smash_wedge,
    "join-smash": _join_smash,
    "loop-half-smash": _loop_half_smash,
    "susp-product": _susp_product,
    "loop-product": _loop_product,
    "james": _james,
}

# James splitting fires only once everything else is in normal form, so that
# suspensions have been merged and the truncation degree is applied once.
DEFERRED = ("james",)


def positions(e: Expr, prefix: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Expr]]:
    """Post-order (innermost first) traversal; never enters a Tail."""
    for i, c in enumerate(e.children()):
        yield from positions(c, prefix + (i,))
    yield prefix, e


def subterm(e: Expr, path: tuple[int, ...]) -> Expr:
    for i in path:
        e = e.children()[i]
    return e


def replace_at(e: Expr, path: tuple[int, ...], new: Expr) -> Expr:
    if not path:
        return new
    kids = list(e.children())
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return e.with_children(tuple(kids))


@dataclass(frozen=True)
class Step:
    rule: str
    path: tuple[int, ...]
    before: Expr
    after: Expr


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple[Step, ...]
    degree_cap: int
    partial: bool
    exhausted: bool = False
    assumptions: tuple[str, ...] = ()

    def rules_used(self) -> list[str]:
        return [s.rule for s in self.steps]


def contains_tail(e: Expr) -> bool:
    return isinstance(e, Tail) or any(contains_tail(c) for c in e.children())


def _redexes(e: Expr, names, cap):
    for path, sub in positions(e):
        for name in names:
            new = RULES[name](sub, cap)
            if new is not None:
                yield name, path, new


def simplify(e: Expr, degree_cap: int = 16, *, seed: int | None = None,
             max_steps: int = 20000, assumptions: tuple[str, ...] = ()) -> tuple[Expr, RewriteTrace]:
    """Rewrite to normal form.

    The default strategy is leftmost-innermost; with ``seed`` a random redex
    is chosen at every step instead.  Both reach the same normal form.
    """
    if degree_cap < 1:
        raise ValidationError("degree_cap must be >= 1")
    rng = random.Random(seed) if seed is not None else None
    eager = [n for n in RULES if n not in DEFERRED]
    steps: list[Step] = []
    cur = canonical(e)
    if cur != e:
        steps.append(Step("canonical", (), e, cur))
    exhausted = False
    while True:
        if len(steps) >= max_steps:
            exhausted = True
            break
        if rng is None:
            hit = next(_redexes(cur, eager, degree_cap), None)
            found = [hit] if hit else []
        else:
            found = list(_redexes(cur, eager, degree_cap))
        if not found:
            found = list(_redexes(cur, DEFERRED, degree_cap))
            if not found:
                break
        name, path, new = rng.choice(found) if rng else found[0]
        after = canonical(replace_at(cur, path, new))
        steps.append(Step(name, path, cur, after))
        cur = after
    trace = RewriteTrace(tuple(steps), degree_cap, exhausted or contains_tail(cur), exhausted, assumptions)
    return cur, trace


def replay(start: Expr, trace: RewriteTrace) -> Expr:
    """Re-apply every recorded step, checking each intermediate expression."""
    cur = start
    for step in trace.steps:
        if step.before != cur:
            raise AssertionError(f"trace diverges before {step.rule}")
        if step.rule == "canonical":
            cur = canonical(cur)
        else:
            new = RULES[step.rule](subterm(cur, step.path), trace.degree_cap)
            if new is None:
                raise AssertionError(f"rule {step.rule} does not apply at {step.path}")
            cur = canonical(replace_at(cur, step.path, new))
        if cur != step.after:
            raise AssertionError(f"replaying {step.rule} gives a different expression")
    return cur


def substitute(e: Expr, mapping: Mapping[Expr, Expr]) -> Expr:
    """Replace whole subexpressions, outermost match first."""
    if e in mapping:
        return mapping[e]
    kids = e.children()
    if not kids:
        return e
    return e.with_children(tuple(substitute(c, mapping) for c in kids))


def atoms(e: Expr) -> list[Atom]:
    out = []
    if isinstance(e, Atom):
        out.append(e)
    for c in e.children():
        out.extend(atoms(c))
    return out
