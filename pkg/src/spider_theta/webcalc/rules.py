"""Local rewrite rules for C2 webs.

Every rule removes a set of vertices and glues a small replacement (a linear
combination of templates) onto the freed half-edges.  A template is a list of
new vertex kinds plus links between endpoints, where an endpoint is either
``("p", k)``, the k-th port of the removed region, or ``("n", idx, slot)``.

Rules in the tetravalent basis (X := H - S with S the turnback that joins
the legs sharing a trivalent vertex of H).  Legs are listed counterclockwise
around the removed region.

* H-configuration (two trivalent vertices on a double edge) = X + S
* monogon:  X with two adjacent legs capped      = mu * (other legs joined),
  mu = [6][2]/[3]
* digon:    X-X digon = -[2]^2 X - [2][4] E, where E joins each vertex's
  pair of outer legs
* triangle: X-X-X triangle = [2]^2 (X_uv E_w + X_vw E_u + X_uw E_v)
  + (2[2]^2 + [2][4]) E_u E_v E_w, where E_w joins w's two outer legs and
  X_uv is a tetravalent vertex on the outer legs of u and v

The monogon, digon and triangle coefficients follow from the double-edge
relations after substituting H = X + S; docs/derivations.md has the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..qscalar import ONE, Q, QScalar, qfrac
from .web import BOUNDARY, DOUBLE, SINGLE, BoundarySignature, Web, box_top, degree, is_box, next_id, slot_type

MU = qfrac([6, 2], [3])
DIGON_X = -(Q(2) * Q(2))
DIGON_E = -(Q(2) * Q(4))
TRIANGLE_XE = Q(2) * Q(2)
TRIANGLE_EEE = 2 * Q(2) * Q(2) + Q(2) * Q(4)


@dataclass(frozen=True)
class Template:
    kinds: tuple = ()
    links: tuple = ()


@dataclass
class Rewrite:
    """Replace ``removed`` by ``sum(coeff * template)`` glued along ``ports``."""

    name: str
    removed: frozenset
    ports: tuple
    terms: list = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return not self.terms


def splice(web: Web, removed, ports, template: Template) -> Web:
    """Glue ``template`` into ``web`` in place of the vertices ``removed``.

    Strands that run through several ports (because ports are joined to each
    other outside the region) are followed to their ends; chains that close up
    become free loops.
    """
    adj = web.adj
    port_index = {h: k for k, h in enumerate(ports)}
    base = next_id(web.kinds)
    link: dict = {}
    for e1, e2 in template.links:
        link[e1] = e2
        link[e2] = e1

    kinds = {v: k for v, k in web.kinds.items() if v not in removed}
    for idx, kind in enumerate(template.kinds):
        kinds[base + idx] = kind
    new_adj = {h: g for h, g in adj.items() if h[0] not in removed and g[0] not in removed}
    visited: set = set()

    def new_dart(e):
        return (base + e[1], e[2])

    def exit_through(k: int):
        # the strand leaves the template through port k; return where it ends up
        while True:
            visited.add(k)
            o = adj[ports[k]]
            m = port_index.get(o)
            if m is None:
                return o
            visited.add(m)
            e = link[("p", m)]
            if e[0] == "n":
                return new_dart(e)
            k = e[1]

    def join(h, g):
        new_adj[h] = g
        new_adj[g] = h

    for e1 in link:
        if e1[0] != "n":
            continue
        h = new_dart(e1)
        if h in new_adj:
            continue
        e2 = link[e1]
        join(h, new_dart(e2) if e2[0] == "n" else exit_through(e2[1]))

    for k, h in enumerate(ports):
        if k in visited:
            continue
        o = adj[h]
        if o in port_index:
            continue
        visited.add(k)
        e = link[("p", k)]
        if e[0] == "n":
            continue
        join(o, exit_through(e[1]))

    single, double = web.loops
    for k, h in enumerate(ports):
        if k in visited:
            continue
        strand = web.type_of(h)
        cur = k
        while cur not in visited:
            visited.add(cur)
            nxt = link[("p", cur)][1]
            visited.add(nxt)
            cur = port_index[adj[ports[nxt]]]
        if strand == SINGLE:
            single += 1
        else:
            double += 1

    return Web(kinds, new_adj, BoundarySignature(web.boundary.types), (single, double), _trusted=True)


def apply(web: Web, rw: Rewrite) -> list[tuple[QScalar, Web]]:
    return [(c, splice(web, rw.removed, rw.ports, t)) for c, t in rw.terms]


def _links(*pairs) -> tuple:
    return tuple((("p", a), ("p", b)) for a, b in pairs)


def _x_on(port_order) -> Template:
    return Template(("X",), tuple((("n", 0, s), ("p", p)) for s, p in enumerate(port_order)))


def _x_plus(port_order, pairs) -> Template:
    t = _x_on(port_order)
    return Template(t.kinds, t.links + _links(*pairs))


# -- rule finders ------------------------------------------------------------

def tadpoles(web: Web) -> Iterator[Rewrite]:
    for v, kind in web.kinds.items():
        if kind == "T" and web.adj[(v, 1)] == (v, 2):
            yield Rewrite("tadpole", frozenset([v]), ())


def trivial_boxes(web: Web) -> Iterator[Rewrite]:
    for v, kind in web.kinds.items():
        if is_box(kind) and kind[1] <= 1:
            if kind[1] == 0:
                yield Rewrite("trivial-box", frozenset([v]), (), [(ONE, Template())])
            else:
                yield Rewrite("trivial-box", frozenset([v]), ((v, 0), (v, 1)), [(ONE, Template((), _links((0, 1))))])


def _same_side(size: int, s: int, t: int) -> bool:
    return 0 <= s < 2 * size and 0 <= t < 2 * size and (s < size) == (t < size)


def box_kills(web: Web) -> Iterator[Rewrite]:
    """Caps and merges on two adjacent strands of one side of a clasp."""
    adj, kinds = web.adj, web.kinds
    for v, kind in kinds.items():
        if not is_box(kind) or kind[1] < 2:
            continue
        n = kind[1]
        for s in range(1, 2 * n):
            if s == n:
                continue
            w, a = adj[(v, s)]
            if (w, a) == (v, s - 1):
                yield Rewrite("clasp-cap", frozenset([v]), ())
                continue
            if kind[0] != "P" or w == BOUNDARY or w == v:
                continue
            wk = kinds[w]
            if adj[(v, s - 1)] != (w, (a + 1) % degree(wk)):
                continue
            if wk == "X" or (wk == "T" and a == 1):
                yield Rewrite("clasp-merge", frozenset([v]), ())


def absorptions(web: Web) -> Iterator[Rewrite]:
    """A smaller clasp whose whole side feeds one side of a bigger clasp disappears."""
    adj, kinds = web.adj, web.kinds
    for u, ku in kinds.items():
        if not is_box(ku) or ku[1] < 2:
            continue
        k = ku[1]
        for a in (0, k):
            v, c = adj[(u, a)]
            if v == BOUNDARY or v == u or not is_box(kinds[v]) or kinds[v][0] != ku[0] or kinds[v][1] < k:
                continue
            n = kinds[v][1]
            if not _same_side(n, c, c - k + 1):
                continue
            if all(adj[(u, a + j)] == (v, c - j) for j in range(k)):
                ports = tuple((u, s) for s in range(2 * k))
                pairs = [(i, box_top(k, i)) for i in range(k)]
                yield Rewrite("absorb", frozenset([u]), ports, [(ONE, Template((), _links(*pairs)))])


def h_moves(web: Web) -> Iterator[Rewrite]:
    adj, kinds = web.adj, web.kinds
    for v, kind in kinds.items():
        if kind != "T":
            continue
        w, j = adj[(v, 0)]
        if w == BOUNDARY or w <= v or kinds[w] != "T":
            continue
        ports = ((v, 1), (v, 2), (w, 1), (w, 2))
        yield Rewrite("H", frozenset([v, w]), ports,
                      [(ONE, _x_on(range(4))), (ONE, Template((), _links((0, 1), (2, 3))))])


def monogons(web: Web) -> Iterator[Rewrite]:
    adj = web.adj
    for v, kind in web.kinds.items():
        if kind != "X":
            continue
        for i in range(4):
            if adj[(v, i)] == (v, (i - 1) % 4):
                ports = ((v, (i + 1) % 4), (v, (i + 2) % 4))
                yield Rewrite("monogon", frozenset([v]), ports, [(MU, Template((), _links((0, 1))))])
                break


def digons(web: Web) -> Iterator[Rewrite]:
    adj, kinds = web.adj, web.kinds
    for u, kind in kinds.items():
        if kind != "X":
            continue
        for i in range(4):
            v, j = adj[(u, i)]
            if v == BOUNDARY or v == u or kinds[v] != "X":
                continue
            if adj[(v, (j + 1) % 4)] != (u, (i - 1) % 4):
                continue
            ports = ((u, (i + 1) % 4), (u, (i + 2) % 4), (v, (j + 2) % 4), (v, (j + 3) % 4))
            yield Rewrite("digon", frozenset([u, v]), ports,
                          [(DIGON_X, _x_on(range(4))), (DIGON_E, Template((), _links((0, 1), (2, 3))))])


def triangles(web: Web) -> Iterator[Rewrite]:
    adj, kinds = web.adj, web.kinds
    for u, kind in kinds.items():
        if kind != "X":
            continue
        for i in range(4):
            v, j = adj[(u, i)]
            if v == BOUNDARY or v == u or kinds[v] != "X":
                continue
            w, k = adj[(v, (j + 1) % 4)]
            if w == BOUNDARY or w in (u, v) or kinds[w] != "X":
                continue
            if adj[(w, (k + 1) % 4)] != (u, (i - 1) % 4):
                continue
            ports = ((u, (i + 1) % 4), (u, (i + 2) % 4), (w, (k + 2) % 4), (w, (k + 3) % 4),
                     (v, (j + 2) % 4), (v, (j + 3) % 4))
            # legs 0,1 belong to u, 2,3 to w, 4,5 to v
            yield Rewrite("triangle", frozenset([u, v, w]), ports, [
                (TRIANGLE_XE, _x_plus((0, 1, 4, 5), [(2, 3)])),
                (TRIANGLE_XE, _x_plus((2, 3, 4, 5), [(0, 1)])),
                (TRIANGLE_XE, _x_plus((0, 1, 2, 3), [(4, 5)])),
                (TRIANGLE_EEE, Template((), _links((0, 1), (2, 3), (4, 5)))),
            ])


# -- clasp expansion templates -------------------------------------------------

def single_clasp_coefficients(n: int) -> tuple[QScalar, QScalar]:
    return qfrac([2 * n, n + 1, n - 1], [2 * n + 2, n, n]), qfrac([n - 1], [n, 2])


def double_clasp_coefficients(n: int) -> tuple[QScalar, QScalar]:
    return qfrac([2 * n - 1, 2 * n - 2], [2 * n + 1, 2]), qfrac([2 * n - 2], [2 * n, 2, 2])


def _stack_links(n: int, with_upper: bool) -> list:
    """Links shared by the recursive templates.  New vertex 0 is the lower
    (n-1)-clasp L, vertex 1 the upper one U; ports are the 2n slots of the box."""
    m = n - 1
    links = [(("p", i), ("n", 0, i)) for i in range(m)]
    if not with_upper:
        links += [(("n", 0, box_top(m, i)), ("p", box_top(n, i))) for i in range(m)]
        links.append((("p", n - 1), ("p", box_top(n, n - 1))))
        return links
    links += [(("n", 0, box_top(m, i)), ("n", 1, i)) for i in range(m - 1)]
    links += [(("n", 1, box_top(m, i)), ("p", box_top(n, i))) for i in range(m)]
    return links


def clasp_templates(kind) -> list[tuple[QScalar, Template]]:
    """One level of the clasp recursion for a box of the given kind.

    P_n = P_{n-1} (x) 1 + alpha_n * (turnback between two stacked P_{n-1})
        + beta_n * (tetravalent vertex between two stacked P_{n-1});
    the double clasp uses a square of four trivalent vertices in place of the
    tetravalent vertex.
    """
    letter, n = kind
    m = n - 1
    sub = (letter, m)
    c_turn, c_vertex = single_clasp_coefficients(n) if letter == "P" else double_clasp_coefficients(n)
    ident = Template((sub,), tuple(_stack_links(n, False)))
    stacked = _stack_links(n, True)
    sw, se, ne, nw = ("n", 0, box_top(m, m - 1)), ("p", n - 1), ("p", box_top(n, n - 1)), ("n", 1, m - 1)
    turn = Template((sub, sub), tuple(stacked + [(sw, se), (nw, ne)]))
    if letter == "P":
        vertex = Template((sub, sub, "X"), tuple(stacked + [(sw, ("n", 2, 0)), (se, ("n", 2, 1)),
                                                              (ne, ("n", 2, 2)), (nw, ("n", 2, 3))]))
    else:
        # corners A (SW), B (SE), C (NE), D (NW); each trivalent vertex lists
        # its double leg first, then the single sides counterclockwise
        a, b, c, d = 2, 3, 4, 5
        sq = [(("n", a, 1), ("n", b, 2)), (("n", b, 1), ("n", c, 2)),
              (("n", c, 1), ("n", d, 2)), (("n", d, 1), ("n", a, 2))]
        legs = [(sw, ("n", a, 0)), (se, ("n", b, 0)), (ne, ("n", c, 0)), (nw, ("n", d, 0))]
        vertex = Template((sub, sub, "T", "T", "T", "T"), tuple(stacked + sq + legs))
    return [(ONE, ident), (c_turn, turn), (c_vertex, vertex)]


def box_expansion(web: Web, v: int) -> Rewrite:
    kind = web.kinds[v]
    ports = tuple((v, s) for s in range(2 * kind[1]))
    return Rewrite("expand", frozenset([v]), ports, clasp_templates(kind))


def box_weight(kind) -> int:
    return 3 ** kind[1] if is_box(kind) else 0


def local_rules(web: Web, clasp_rules: bool):
    """Rule finders in priority order (box expansion excluded)."""
    finders = [tadpoles, trivial_boxes]
    if clasp_rules:
        finders += [box_kills, absorptions]
    finders += [h_moves, monogons, digons, triangles]
    return finders


def first_rewrite(web: Web, clasp_rules: bool) -> Optional[Rewrite]:
    for finder in local_rules(web, clasp_rules):
        for rw in finder(web):
            return rw
    return None


def all_rewrites(web: Web, clasp_rules: bool) -> list[Rewrite]:
    out: list = []
    for finder in local_rules(web, clasp_rules):
        out.extend(finder(web))
    return out


__all__ = [
    "MU", "DIGON_X", "DIGON_E", "TRIANGLE_XE", "TRIANGLE_EEE", "Template", "Rewrite", "splice", "apply",
    "box_expansion", "clasp_templates", "box_weight", "first_rewrite", "all_rewrites",
    "single_clasp_coefficients", "double_clasp_coefficients", "DOUBLE", "SINGLE", "slot_type",
]
