from __future__ import annotations

from hypothesis import settings
from hypothesis import strategies as st

from ppjoin.complexes import build_complex
from ppjoin.expr import POINT, Atom, Cone, Join2, Loop, Product, RightHalfSmash, Smash, Sphere, Susp, Wedge
from ppjoin.polyjoin import ComplexPair, PolyJoinSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def complexes(draw, max_vertices: int = 5, ghosts: bool = True, prefix: str = "", min_vertices: int = 1):
    n = draw(st.integers(min_vertices, max_vertices))
    labels = [f"{prefix}{k}" for k in range(1, n + 1)]
    gens = draw(st.lists(st.sets(st.sampled_from(labels), min_size=1), max_size=6)) if labels else []
    if not ghosts:
        gens += [{v} for v in labels]
    return build_complex(labels, gens)


@st.composite
def subcomplexes(draw, K):
    faces = sorted((tuple(sorted(f)) for f in K.faces if f), key=lambda f: (len(f), f))
    picks = draw(st.lists(st.sampled_from(faces), max_size=4)) if faces else []
    return build_complex(K.vertices, picks)


@st.composite
def specs(draw, max_base: int = 3, max_pair: int = 3):
    base = draw(complexes(max_base, ghosts=False))
    pairs = []
    for _ in base.vertices:
        big = draw(complexes(max_pair, prefix="v"))
        pairs.append(ComplexPair(big, draw(subcomplexes(big))))
    return PolyJoinSpec(base, tuple(pairs))


_leaves = st.one_of(
    st.just(POINT),
    st.integers(1, 4).map(Sphere),
    st.sampled_from(["A", "B", "X1"]).map(Atom),
)


def _grow(children):
    small = st.lists(children, min_size=1, max_size=3).map(tuple)
    return st.one_of(
        small.map(Wedge), small.map(Product), small.map(Smash),
        st.tuples(children, children).map(lambda p: Join2(*p)),
        st.tuples(children, children).map(lambda p: RightHalfSmash(*p)),
        st.tuples(st.integers(1, 3), children).map(lambda p: Susp(*p)),
        children.map(Loop), children.map(Cone),
    )


expressions = st.recursive(_leaves, _grow, max_leaves=8)
