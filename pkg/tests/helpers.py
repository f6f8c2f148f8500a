"""Random quivers and representations shared by the property and acceptance suites."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from gqpa.quiver import Arrow, GradedQuiver
from gqpa.repcat import ExactField, GradedRep


def random_quiver(rng: random.Random, n_vertices: int, extra: int = 0, degrees=(-2, 2),
                  parallel: bool = True) -> GradedQuiver:
    """Connected acyclic quiver: a random spanning tree plus ``extra`` arrows.

    Arrows go from lower to higher position in a shuffled order, so the
    result is acyclic but not topologically labelled.
    """
    names = [str(i) for i in range(1, n_vertices + 1)]
    order = names[:]
    rng.shuffle(order)
    pos = {v: k for k, v in enumerate(order)}
    pairs = []
    for k in range(1, n_vertices):
        pairs.append((order[rng.randrange(k)], order[k]))
    for _ in range(extra):
        a, b = rng.sample(names, 2) if n_vertices > 1 else (names[0], names[0])
        if a == b:
            continue
        if not parallel and ((a, b) in pairs or (b, a) in pairs):
            continue
        pairs.append((a, b))
    arrows = []
    for k, (a, b) in enumerate(pairs):
        s, t = (a, b) if pos[a] < pos[b] else (b, a)
        arrows.append(Arrow(f"x{k}", s, t, rng.randint(*degrees)))
    return GradedQuiver(tuple(names), tuple(arrows))


def tree_quiver(rng: random.Random, edges: list[tuple[str, str]], degrees=(-3, 3)) -> GradedQuiver:
    """Random orientation and grading of an undirected simple graph."""
    verts = sorted({v for e in edges for v in e})
    arrows = []
    for k, (a, b) in enumerate(edges):
        s, t = (a, b) if rng.random() < 0.5 else (b, a)
        arrows.append(Arrow(f"e{k}", s, t, rng.randint(*degrees)))
    return GradedQuiver(tuple(verts), tuple(arrows))


def random_rep(rng: random.Random, q: GradedQuiver, field: ExactField, max_dim: int = 2,
               window: tuple[int, int] = (-2, 0), density: float = 0.6) -> GradedRep:
    spaces = {}
    for v in q.vertices:
        for d in range(window[0], window[1] + 1):
            if rng.random() < density:
                spaces[(v, d)] = rng.randint(1, max_dim)
    maps = {}
    vals = [-2, -1, 0, 0, 1, 1, 2, 3] if field.p is None else list(range(min(field.p, 5)))
    for a in q.arrows:
        for (v, d), n in spaces.items():
            if v != a.source:
                continue
            m = spaces.get((a.target, d + a.degree), 0)
            if m:
                maps[(a.name, d)] = [[rng.choice(vals) for _ in range(n)] for _ in range(m)]
    return GradedRep(q, field, spaces, maps)


@st.composite
def quivers(draw, min_vertices: int = 1, max_vertices: int = 6, max_extra: int = 3, degrees=(-2, 2)):
    n = draw(st.integers(min_vertices, max_vertices))
    extra = draw(st.integers(0, max_extra))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_quiver(random.Random(seed), n, extra, degrees)


@st.composite
def potentials(draw, q: GradedQuiver, bound: int = 5):
    return {v: draw(st.integers(-bound, bound)) for v in q.vertices}


@st.composite
def quiver_with_reps(draw, count: int = 2, field: ExactField | None = None, max_vertices: int = 4):
    field = field or ExactField()
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    q = random_quiver(rng, rng.randint(1, max_vertices), rng.randint(0, 2), (-1, 0))
    return q, [random_rep(rng, q, field) for _ in range(count)]
