"""Clasp expansions, theta webs and the brute-force theta oracle."""

from __future__ import annotations

from typing import Optional

from ..errors import InadmissibleTriple
from ..qscalar import ONE, QScalar
from .reduce import LOOP_DOUBLE, LOOP_SINGLE, ReductionConfig, Reducer, reduce_closed
from .rules import Template, splice
from .web import BOUNDARY, DOUBLE, SINGLE, BoundarySignature, Web, box_top, degree
from .websum import WebSum


def box_web(letter: str, n: int) -> Web:
    """A lone clasp box wired straight to 2n boundary points."""
    strand = SINGLE if letter == "P" else DOUBLE
    if n == 0:
        return Web({}, {}, BoundarySignature(), (0, 0), _trusted=True)
    edges = [((0, i), (BOUNDARY, i)) for i in range(2 * n)]
    return Web.build({0: (letter, n)}, edges, [strand] * (2 * n))


def _to_template(open_web: Web) -> Template:
    ids = {v: i for i, v in enumerate(sorted(open_web.kinds))}

    def endpoint(h):
        v, i = h
        return ("p", i) if v == BOUNDARY else ("n", ids[v], i)

    links = {tuple(sorted((endpoint(h), endpoint(g)), key=repr)) for h, g in open_web.adj.items()}
    return Template(tuple(open_web.kinds[v] for v in sorted(open_web.kinds)), tuple(links))


def substitute(web: Web, v: int, open_web: Web) -> tuple[QScalar, Web]:
    """Glue ``open_web`` in place of the box vertex ``v``, boundary point i on slot i.

    Returns the scalar from the free loops of ``open_web`` and the glued web.
    """
    if degree(web.kinds[v]) != len(open_web.boundary):
        raise ValueError("open web does not fit the box")
    ports = tuple((v, i) for i in range(degree(web.kinds[v])))
    single, double = open_web.loops
    scale = LOOP_SINGLE ** single * LOOP_DOUBLE ** double if (single or double) else ONE
    return scale, splice(web, frozenset([v]), ports, _to_template(open_web))


def _expand(letter: str, n: int, config: ReductionConfig, reducer: Optional[Reducer]) -> WebSum:
    if n < 0:
        raise ValueError("clasp size must be nonnegative")
    web = box_web(letter, n)
    red = reducer if reducer is not None else Reducer(config)
    return WebSum(web.boundary, red.normalize(web))


def expand_clasp_single(n: int, config: ReductionConfig = ReductionConfig(clasp_rules=False),
                        reducer: Optional[Reducer] = None) -> WebSum:
    """The single clasp on n strands fully expanded into vertex-bearing webs."""
    return _expand("P", n, config, reducer)


def expand_clasp_double(n: int, config: ReductionConfig = ReductionConfig(clasp_rules=False),
                        reducer: Optional[Reducer] = None) -> WebSum:
    return _expand("Q", n, config, reducer)


def one_level(letter: str, n: int) -> WebSum:
    """A single recursion step of the clasp, sub-clasps left as boxes."""
    from .rules import box_expansion

    web = box_web(letter, n)
    rw = box_expansion(web, 0)
    return WebSum.from_terms(web.boundary, [(c, splice(web, rw.removed, rw.ports, t)) for c, t in rw.terms])


def closure_web(letter: str, n: int) -> Web:
    """The trace closure of a lone n-clasp: top position i joined to bottom position i."""
    if n == 0:
        return Web({}, {}, BoundarySignature(), (0, 0), _trusted=True)
    edges = [((0, i), (0, box_top(n, i))) for i in range(n)]
    return Web.build({0: (letter, n)}, edges)


def close_open_web(open_web: Web) -> tuple[QScalar, Web]:
    """Trace closure of a web on 2n points laid out like a clasp."""
    n = len(open_web.boundary) // 2
    frame = closure_web("P" if open_web.boundary.types[0] == SINGLE else "Q", n)
    return substitute(frame, 0, open_web)


def stacked_trace_web(n: int) -> Web:
    """Two n-clasps composed end to end and closed up."""
    if n == 0:
        return Web({}, {}, BoundarySignature(), (0, 0), _trusted=True)
    edges = [((0, box_top(n, i)), (1, i)) for i in range(n)]
    edges += [((1, box_top(n, i)), (0, i)) for i in range(n)]
    return Web.build({0: ("P", n), 1: ("P", n)}, edges)


def theta_web(a: int, b: int, c: int) -> Web:
    """Three clasps P_a (left), P_b (middle), P_c (right) wired as a theta net.

    m = (a+b-c)/2 strands join a and b, n = (b+c-a)/2 join b and c and
    p = (a+c-b)/2 run around the outside from a to c, on both the top and the
    bottom sides.
    """
    from ..netforms import inadmissibility_reason

    reason = inadmissibility_reason((a, b, c))
    if reason:
        raise InadmissibleTriple((a, b, c), reason)
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    A, B, C = 0, 1, 2
    vertices = {v: ("P", size) for v, size in ((A, a), (B, b), (C, c)) if size}

    def top(size, pos):
        return box_top(size, pos)

    def bottom(size, pos):
        return pos

    edges = []
    for side in (top, bottom):
        edges += [((A, side(a, a - 1 - t)), (B, side(b, t))) for t in range(m)]
        edges += [((B, side(b, b - 1 - t)), (C, side(c, t))) for t in range(n)]
        edges += [((A, side(a, t)), (C, side(c, c - 1 - t))) for t in range(p)]
    return Web.build(vertices, edges)


def glue_theta(a: int, b: int, c: int, expand: bool = False,
               config: ReductionConfig = ReductionConfig()) -> WebSum:
    """The closed theta web sum.

    By default the three clasps stay as box vertices, which the reducer expands
    lazily through the same recursion.  ``expand=True`` substitutes the fully
    expanded clasps and is only practical for small labels.
    """
    web = theta_web(a, b, c)
    if not expand:
        return WebSum.of(web)
    red = Reducer(ReductionConfig(term_budget=config.term_budget, clasp_rules=False))
    terms = [(ONE, web)]
    for v in sorted(web.kinds):
        size = web.kinds[v][1]
        if size <= 1:
            continue
        exp = expand_clasp_single(size, reducer=red)
        nxt = []
        for coeff, w in terms:
            for ow, oc in exp.items():
                scale, glued = substitute(w, v, ow)
                nxt.append((coeff * oc * scale, glued))
                if len(nxt) > config.term_budget:
                    from ..errors import TermBudgetExceeded

                    raise TermBudgetExceeded(config.term_budget)
        terms = nxt
    return WebSum.from_terms(BoundarySignature(), terms, budget=config.term_budget)


def theta_oracle(a: int, b: int, c: int, config: ReductionConfig = ReductionConfig(),
                 reducer: Optional[Reducer] = None) -> QScalar:
    return reduce_closed(glue_theta(a, b, c), config, reducer)


def annihilation_frame(n: int) -> Web:
    """An n-clasp whose two rightmost top strands are capped together, the
    remaining 2n-2 strands closed off by nested arcs."""
    if not 2 <= n:
        raise ValueError("annihilation frame needs n >= 2")
    rest = [(n + 2 + i) % (2 * n) for i in range(2 * n - 2)]
    edges = [((0, n), (0, n + 1))]
    edges += [((0, rest[i]), (0, rest[-1 - i])) for i in range(n - 1)]
    return Web.build({0: ("P", n)}, edges)


def annihilation_witness(n: int, config: ReductionConfig = ReductionConfig(clasp_rules=False)) -> QScalar:
    """Scalar of the capped, closed n-clasp; zero for a genuine clasp.

    The clasp is reduced with the clasp kill rules disabled, so the zero comes
    from the expansion itself.
    """
    if not 2 <= n <= 5:
        raise ValueError("annihilation witness is defined for 2 <= n <= 5")
    cfg = ReductionConfig(term_budget=config.term_budget, clasp_rules=False, memo=config.memo,
                          seed=config.seed, check_invariants=config.check_invariants)
    return reduce_closed(annihilation_frame(n), cfg)


def trace_oracle(n: int, config: ReductionConfig = ReductionConfig(clasp_rules=False)) -> QScalar:
    return reduce_closed(closure_web("P", n), config)
