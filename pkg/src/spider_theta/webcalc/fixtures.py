"""Small closed webs used by tests, the confluence sweep and the CLI."""

from __future__ import annotations

from typing import Callable

from .clasps import closure_web, theta_web
from .web import Web, free_loops


def single_loop() -> Web:
    return free_loops(1, 0)


def double_loop() -> Web:
    return free_loops(0, 1)


def two_single_loops() -> Web:
    return free_loops(2, 0)


def tadpole() -> Web:
    """Two trivalent vertices on a double edge, each with its single legs looped."""
    return Web.build({0: "T", 1: "T"}, [((0, 0), (1, 0)), ((0, 1), (0, 2)), ((1, 1), (1, 2))])


def double_digon() -> Web:
    """A single-single bigon between two trivalent vertices, closed along the double edge."""
    return Web.build({0: "T", 1: "T"}, [((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))])


def figure_eight() -> Web:
    """One tetravalent vertex with two capped pairs of legs."""
    return Web.build({0: "X"}, [((0, 0), (0, 1)), ((0, 2), (0, 3))])


def x_digon() -> Web:
    """Two tetravalent vertices joined by four parallel edges."""
    return Web.build({0: "X", 1: "X"}, [((0, i), (1, (-i) % 4)) for i in range(4)])


def medial(rotation: dict[int, list[int]]) -> Web:
    """Medial graph of a simple plane graph given by counterclockwise neighbour lists.

    Each edge of the graph becomes a tetravalent vertex and each corner
    between consecutive edges at a vertex becomes an edge.
    """
    edges = sorted({tuple(sorted((u, w))) for u, nbrs in rotation.items() for w in nbrs})
    index = {e: i for i, e in enumerate(edges)}

    def first_slot(u, w):
        # leaving edge {u, w} on the counterclockwise side at u
        return 3 if u < w else 1

    def second_slot(u, w):
        return 0 if u < w else 2

    pairs = []
    for u, nbrs in rotation.items():
        k = len(nbrs)
        for t in range(k):
            x, y = nbrs[t], nbrs[(t + 1) % k]
            ex, ey = index[tuple(sorted((u, x)))], index[tuple(sorted((u, y)))]
            pairs.append(((ex, first_slot(u, x)), (ey, second_slot(u, y))))
    return Web.build({i: "X" for i in range(len(edges))}, pairs)


def medial_triangle() -> Web:
    return medial({0: [1, 2], 1: [2, 0], 2: [0, 1]})


def medial_square() -> Web:
    return medial({0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2]})


def octahedron() -> Web:
    """Medial graph of the tetrahedron."""
    return medial({0: [1, 2, 3], 1: [2, 0, 3], 2: [3, 0, 1], 3: [1, 0, 2]})


def closed_square() -> Web:
    """Four trivalent vertices around a single-edged square, double legs joined in pairs."""
    a, b, c, d = range(4)
    edges = [((a, 1), (b, 2)), ((b, 1), (c, 2)), ((c, 1), (d, 2)), ((d, 1), (a, 2)),
             ((a, 0), (b, 0)), ((c, 0), (d, 0))]
    return Web.build({v: "T" for v in range(4)}, edges)


def clasp_trace_3() -> Web:
    return closure_web("P", 3)


def theta_222() -> Web:
    return theta_web(2, 2, 2)


FIXTURES: dict[str, Callable[[], Web]] = {
    "single_loop": single_loop,
    "double_loop": double_loop,
    "two_single_loops": two_single_loops,
    "tadpole": tadpole,
    "double_digon": double_digon,
    "figure_eight": figure_eight,
    "x_digon": x_digon,
    "medial_triangle": medial_triangle,
    "medial_square": medial_square,
    "octahedron": octahedron,
    "closed_square": closed_square,
    "clasp_trace_3": clasp_trace_3,
    "theta_222": theta_222,
}

CONFLUENCE_FIXTURES = (
    "double_digon", "tadpole", "figure_eight", "x_digon", "medial_triangle",
    "medial_square", "octahedron", "closed_square", "clasp_trace_3", "theta_222",
)
