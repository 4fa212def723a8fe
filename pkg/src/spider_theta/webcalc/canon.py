"""Canonical labelling of webs by rooted breadth-first traversal.

From a root dart the traversal numbers vertices in discovery order and writes
each vertex's neighbours in counterclockwise slot order.  Tetravalent vertices
are rotationally symmetric, so their slots are read starting from the slot they
were entered through; every other vertex kind has absolute slot labels.  The
code is minimised over an isomorphism-invariant set of root darts.
"""

from __future__ import annotations

from collections import deque

from .web import BOUNDARY, BoundarySignature, Web, degree, kind_code


def _rooted_code(web: Web, root: int, root_slot: int) -> tuple[tuple, list[int], dict]:
    kinds, adj = web.kinds, web.adj
    order = {root: 0}
    entry = {root: root_slot}
    seq = [root]
    queue = deque([root])
    code = []

    def rel(w: int, j: int) -> int:
        if w != BOUNDARY and kinds[w] == "X":
            return (j - entry[w]) % 4
        return j

    while queue:
        v = queue.popleft()
        if v == BOUNDARY:
            n, start, kc = len(web.boundary), 0, (-1, web.boundary.types)
        else:
            kind = kinds[v]
            n, kc = degree(kind), kind_code(kind)
            start = entry[v] if kind == "X" else 0
        row = []
        for t in range(n):
            w, j = adj[(v, (start + t) % n)]
            if w not in order:
                order[w] = len(seq)
                entry[w] = j
                seq.append(w)
                queue.append(w)
            row.append((order[w], rel(w, j)))
        code.append((kc, tuple(row)))
    return tuple(code), seq, entry


def _root_candidates(web: Web, comp: list[int]) -> list[tuple[int, int]]:
    kinds = web.kinds
    boxes = [v for v in comp if isinstance(kinds[v], tuple)]
    if boxes:
        best = min(kind_code(kinds[v]) for v in boxes)
        return [(v, 0) for v in boxes if kind_code(kinds[v]) == best]
    tri = [v for v in comp if kinds[v] == "T"]
    if tri:
        return [(v, 0) for v in tri]
    return [(v, i) for v in comp for i in range(4)]


def _component_code(web: Web, comp: list[int]) -> tuple[tuple, list[int], dict]:
    if BOUNDARY in comp:
        return _rooted_code(web, BOUNDARY, 0)
    best = None
    for v, i in _root_candidates(web, comp):
        cand = _rooted_code(web, v, i)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def component_codes(web: Web) -> list[tuple[tuple, list[int], dict]]:
    return [_component_code(web, comp) for comp in web.components()]


def canonical_key(web: Web) -> tuple:
    codes = component_codes(web)
    if web.boundary.types:
        open_part, closed = codes[0][0], sorted(c[0] for c in codes[1:])
    else:
        open_part, closed = (), sorted(c[0] for c in codes)
    return (web.boundary.types, open_part, tuple(closed), web.loops)


def canonicalize(web: Web) -> Web:
    """Relabel ``web`` so that isomorphic embedded webs become identical.

    Vertices are numbered in canonical traversal order and each tetravalent
    vertex is rotated so that its entry slot becomes slot 0.
    """
    codes = component_codes(web)
    if web.boundary.types:
        codes = [codes[0]] + sorted(codes[1:], key=lambda c: c[0])
    else:
        codes = sorted(codes, key=lambda c: c[0])
    relabel: dict = {}
    shift: dict = {BOUNDARY: 0}
    for _, seq, entry in codes:
        for v in seq:
            if v == BOUNDARY:
                relabel[v] = BOUNDARY
                continue
            relabel[v] = len(relabel) - (1 if BOUNDARY in relabel else 0)
            shift[v] = entry[v] if web.kinds[v] == "X" else 0
    kinds = {relabel[v]: k for v, k in web.kinds.items()}

    def move(h):
        v, i = h
        if v == BOUNDARY:
            return h
        return (relabel[v], (i - shift[v]) % degree(web.kinds[v]))

    adj = {move(h): move(g) for h, g in web.adj.items()}
    out = Web(kinds, adj, BoundarySignature(web.boundary.types), web.loops, _trusted=True)
    out._key = web.key
    return out
