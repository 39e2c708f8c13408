"""Hypothesis strategies for lattice walks and the tree systems built on them."""
from hypothesis import strategies as st

from app.core.fixtures import chain, path_at, tree_system

MOVES = [(1, 0), (-1, 0), (0, 1), (0, -1)]


@st.composite
def walks(draw, max_moves: int = 12):
    """A self-avoiding walk from the origin whose first step goes east."""
    moves = draw(st.lists(st.sampled_from(MOVES), max_size=max_moves))
    walk = [(0, 0), (1, 0)]
    for dx, dy in moves:
        nxt = (walk[-1][0] + dx, walk[-1][1] + dy)
        if nxt not in walk:
            walk.append(nxt)
    return walk


@st.composite
def walk_systems(draw, max_moves: int = 12):
    """(system, path): the walk's first cell is the seed, the rest is the only producible path."""
    walk = draw(walks(max_moves))
    system = tree_system([walk[0]], chain(walk))
    return system, path_at(system, walk[1:])
