"""Planar C2 webs stored as rotation systems.

A web is a set of vertices, each with a counterclockwise list of slots, plus a
pairing of slots (half-edges).  The disk boundary is the pseudo-vertex
``BOUNDARY`` whose slots are the boundary points, numbered counterclockwise
around the disk.  Seen from the inside of the disk that vertex turns the other
way, which is what :meth:`Web.next_dart` encodes.

Vertex kinds
    ``"X"``        tetravalent vertex, four single slots
    ``"T"``        trivalent vertex, slot 0 double, slots 1 and 2 single
    ``("P", n)``   single clasp box; slots 0..n-1 along the bottom left to
                   right, slots n..2n-1 along the top right to left
    ``("Q", n)``   double clasp box, same slot layout with double strands
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

from ..errors import MalformedWeb

SINGLE = 1
DOUBLE = 2
BOUNDARY = -1

Kind = Union[str, tuple]
Dart = tuple[int, int]


def degree(kind: Kind) -> int:
    if kind == "X":
        return 4
    if kind == "T":
        return 3
    if isinstance(kind, tuple) and kind[0] in ("P", "Q") and kind[1] >= 0:
        return 2 * kind[1]
    raise MalformedWeb(f"unknown vertex kind {kind!r}")


def slot_type(kind: Kind, slot: int) -> int:
    if kind == "T":
        return DOUBLE if slot == 0 else SINGLE
    if isinstance(kind, tuple) and kind[0] == "Q":
        return DOUBLE
    return SINGLE


def is_box(kind: Kind) -> bool:
    return isinstance(kind, tuple)


def box_top(size: int, pos: int) -> int:
    """Slot of the ``pos``-th top strand counted from the left."""
    return 2 * size - 1 - pos


def kind_code(kind: Kind) -> tuple:
    if kind == "X":
        return (0, 0)
    if kind == "T":
        return (1, 0)
    return (2 if kind[0] == "P" else 3, kind[1])


def kind_to_str(kind: Kind) -> str:
    return kind if isinstance(kind, str) else f"{kind[0]}{kind[1]}"


def kind_from_str(s: str) -> Kind:
    if s in ("X", "T"):
        return s
    if len(s) >= 2 and s[0] in "PQ" and s[1:].isdigit():
        return (s[0], int(s[1:]))
    raise MalformedWeb(f"unknown vertex kind {s!r}")


@dataclass(frozen=True)
class BoundarySignature:
    """Cyclic sequence of strand types (1 single, 2 double) around the disk."""

    types: tuple[int, ...] = ()

    def __post_init__(self):
        if any(t not in (SINGLE, DOUBLE) for t in self.types):
            raise MalformedWeb(f"boundary types must be 1 or 2, got {self.types}")

    def __len__(self) -> int:
        return len(self.types)

    @property
    def closed(self) -> bool:
        return not self.types


class Web:
    """Immutable planar web.  Build with :meth:`build` or the fixture helpers."""

    __slots__ = ("kinds", "adj", "boundary", "loops", "_key")

    def __init__(self, kinds: dict, adj: dict, boundary: BoundarySignature = BoundarySignature(),
                 loops: tuple[int, int] = (0, 0), _trusted: bool = False):
        self.kinds = kinds
        self.adj = adj
        self.boundary = boundary
        self.loops = loops
        self._key = None
        if not _trusted:
            self.validate()

    @classmethod
    def build(cls, vertices: dict, edges: Iterable[tuple[Dart, Dart]],
              boundary: Iterable[int] = (), loops: tuple[int, int] = (0, 0)) -> "Web":
        adj: dict = {}
        for h1, h2 in edges:
            h1, h2 = tuple(h1), tuple(h2)
            for h in (h1, h2):
                if h in adj:
                    raise MalformedWeb(f"half-edge {h} paired twice")
            if h1 == h2:
                raise MalformedWeb(f"half-edge {h1} paired with itself")
            adj[h1] = h2
            adj[h2] = h1
        return cls(dict(vertices), adj, BoundarySignature(tuple(boundary)), tuple(loops))

    # -- structure -------------------------------------------------------

    def slot_count(self, v: int) -> int:
        return len(self.boundary) if v == BOUNDARY else degree(self.kinds[v])

    def type_of(self, h: Dart) -> int:
        v, i = h
        return self.boundary.types[i] if v == BOUNDARY else slot_type(self.kinds[v], i)

    def darts(self) -> Iterator[Dart]:
        for v, kind in self.kinds.items():
            for i in range(degree(kind)):
                yield (v, i)
        for i in range(len(self.boundary)):
            yield (BOUNDARY, i)

    def next_dart(self, h: Dart) -> Dart:
        v, i = h
        if v == BOUNDARY:
            return (v, (i - 1) % len(self.boundary))
        return (v, (i + 1) % degree(self.kinds[v]))

    def face_step(self, h: Dart) -> Dart:
        return self.next_dart(self.adj[h])

    def faces(self) -> list[list[Dart]]:
        seen: set = set()
        out = []
        for h in self.darts():
            if h in seen:
                continue
            orbit = []
            while h not in seen:
                seen.add(h)
                orbit.append(h)
                h = self.face_step(h)
            out.append(orbit)
        return out

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components; the one holding ``BOUNDARY`` comes first."""
        parent = {v: v for v in self.kinds}
        if self.boundary.types:
            parent[BOUNDARY] = BOUNDARY

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (v, _), (w, _) in self.adj.items():
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
        groups: dict = {}
        for v in parent:
            groups.setdefault(find(v), []).append(v)
        comps = list(groups.values())
        comps.sort(key=lambda c: (BOUNDARY not in c, min(c)))
        return comps

    @property
    def vertex_count(self) -> int:
        return len(self.kinds)

    @property
    def edge_count(self) -> int:
        return len(self.adj) // 2

    @property
    def is_closed(self) -> bool:
        return self.boundary.closed

    @property
    def is_empty(self) -> bool:
        return not self.kinds and not self.boundary.types

    def count_kind(self, pred) -> int:
        return sum(1 for k in self.kinds.values() if pred(k))

    # -- validation ------------------------------------------------------

    def validate(self) -> None:
        if len(self.loops) != 2 or min(self.loops) < 0:
            raise MalformedWeb(f"bad loop counts {self.loops}")
        for v, kind in self.kinds.items():
            if not isinstance(v, int) or v < 0:
                raise MalformedWeb(f"vertex ids must be nonnegative ints, got {v!r}")
            degree(kind)
        darts = set(self.darts())
        for h in darts:
            if h not in self.adj:
                raise MalformedWeb(f"half-edge {h} is unpaired")
        for h, g in self.adj.items():
            if h not in darts:
                raise MalformedWeb(f"pairing mentions unknown half-edge {h}")
            if self.adj.get(g) != h:
                raise MalformedWeb(f"pairing is not an involution at {h}")
            if self.type_of(h) != self.type_of(g):
                raise MalformedWeb(f"strand types differ along edge {h}-{g}")
        self.check_euler()

    def check_euler(self) -> None:
        """Each component embeds in a sphere: V - E + F = 2 per component."""
        comps = self.components()
        # a vertex without slots bounds one face of its own
        F = len(self.faces()) + sum(1 for k in self.kinds.values() if degree(k) == 0)
        V = len(self.kinds) + (1 if self.boundary.types else 0)
        E = self.edge_count
        if V - E + F != 2 * len(comps):
            raise MalformedWeb(f"rotation system is not planar (V={V}, E={E}, F={F}, C={len(comps)})")

    # -- identity --------------------------------------------------------

    @property
    def key(self) -> tuple:
        if self._key is None:
            from .canon import canonical_key

            self._key = canonical_key(self)
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Web) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        kinds = ", ".join(f"{v}:{kind_to_str(k)}" for v, k in sorted(self.kinds.items()))
        return f"Web(boundary={self.boundary.types}, vertices=[{kinds}], loops={self.loops})"

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        edges = sorted({tuple(sorted((h, g))) for h, g in self.adj.items()})
        return {
            "boundary": list(self.boundary.types),
            "vertices": [
                {
                    "id": v,
                    "kind": kind_to_str(k),
                    "rotation": [list(self.adj[(v, i)]) for i in range(degree(k))],
                }
                for v, k in sorted(self.kinds.items())
            ],
            "edges": [[list(h), list(g)] for h, g in edges],
            "loops": {"single": self.loops[0], "double": self.loops[1]},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Web":
        try:
            vertices = {int(d["id"]): kind_from_str(d["kind"]) for d in data.get("vertices", [])}
            edges = [(tuple(h), tuple(g)) for h, g in data.get("edges", [])]
            loops = data.get("loops", {})
            web = cls.build(vertices, edges, data.get("boundary", []),
                            (int(loops.get("single", 0)), int(loops.get("double", 0))))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedWeb):
                raise
            raise MalformedWeb(f"cannot parse web dump: {exc}") from exc
        for d in data.get("vertices", []):
            rot = d.get("rotation")
            if rot is None:
                continue
            v = int(d["id"])
            if [tuple(x) for x in rot] != [web.adj[(v, i)] for i in range(degree(web.kinds[v]))]:
                raise MalformedWeb(f"rotation of vertex {v} disagrees with the edge list")
        return web

    @classmethod
    def loads(cls, text: str) -> "Web":
        return cls.from_dict(json.loads(text))


def free_loops(single: int = 0, double: int = 0) -> Web:
    return Web({}, {}, BoundarySignature(), (single, double))


def next_id(kinds: dict) -> int:
    return max(kinds, default=-1) + 1


def partner_vertex(web: Web, v: int, i: int) -> Optional[int]:
    w, _ = web.adj[(v, i)]
    return w
