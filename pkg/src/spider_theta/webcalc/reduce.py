"""Exhaustive reduction of webs.

Closed webs are evaluated to a scalar by recursive rewriting: free loops and
disconnected components are split off multiplicatively, local rules are
applied while any matches, and clasp boxes are expanded one recursion level
at a time when nothing else applies.  Connected components are memoised on
their canonical form.  Open webs are normalised the same way into a sum of
webs with no reducible interior face.

Each rewrite is checked to strictly decrease the measure
``(box weight, trivalent count, E - V, V, E)``.  ``E - V`` is the number of
bounded faces minus the number of components, so it plays the role of the
face count without jumping when a component splits off.  Every closed
tetravalent component is also checked to have a face with fewer than four
sides, which Euler's formula guarantees for plane 4-regular graphs.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from typing import Optional

from ..errors import NonClosedWeb, StuckState, TermBudgetExceeded
from ..qscalar import ONE, ZERO, QScalar, qfrac
from . import rules
from .web import BOUNDARY, BoundarySignature, Web, is_box

LOOP_SINGLE = -qfrac([2, 6], [3])
LOOP_DOUBLE = qfrac([6, 5], [3, 2])

DEFAULT_TERM_BUDGET = 10**6


@dataclass(frozen=True)
class ReductionConfig:
    term_budget: int = DEFAULT_TERM_BUDGET
    clasp_rules: bool = True
    memo: bool = True
    seed: Optional[int] = None
    check_invariants: bool = True

    def __post_init__(self):
        if self.term_budget < 1:
            raise ValueError("term budget must be positive")

    @property
    def randomized(self) -> bool:
        return self.seed is not None


@dataclass
class ReductionStats:
    steps: int = 0
    terms_generated: int = 0
    pending: int = 0
    high_water: int = 0
    measure_checks: int = 0
    euler_checks: int = 0
    rule_counts: dict = field(default_factory=dict)


def measure(web: Web) -> tuple[int, int, int, int, int]:
    kinds = web.kinds.values()
    V, E = web.vertex_count, web.edge_count
    return (sum(rules.box_weight(k) for k in kinds), sum(1 for k in kinds if k == "T"), E - V, V, E)


def _subweb(web: Web, comp) -> Web:
    cs = set(comp)
    kinds = {v: web.kinds[v] for v in comp if v != BOUNDARY}
    adj = {h: g for h, g in web.adj.items() if h[0] in cs}
    boundary = web.boundary if BOUNDARY in cs else BoundarySignature()
    return Web(kinds, adj, boundary, (0, 0), _trusted=True)


def _is_tetravalent_only(web: Web) -> bool:
    return all(k == "X" for k in web.kinds.values())


class Reducer:
    def __init__(self, config: ReductionConfig = ReductionConfig()):
        self.config = config
        self.stats = ReductionStats()
        self.rng = random.Random(config.seed) if config.randomized else None
        self._closed_memo: dict = {}
        self._open_memo: dict = {}

    # -- bookkeeping ----------------------------------------------------

    def _charge(self, n: int) -> None:
        s = self.stats
        s.terms_generated += n
        s.pending += n
        s.high_water = max(s.high_water, s.pending)
        if s.terms_generated > self.config.term_budget:
            raise TermBudgetExceeded(self.config.term_budget)

    def _choose(self, web: Web) -> Optional[rules.Rewrite]:
        cr = self.config.clasp_rules
        if self.rng is None:
            rw = rules.first_rewrite(web, cr)
            if rw is not None:
                return rw
            boxes = [v for v, k in web.kinds.items() if is_box(k)]
            if not boxes:
                return None
            v = max(boxes, key=lambda b: (web.kinds[b][1], -b))
            return rules.box_expansion(web, v)
        cands = rules.all_rewrites(web, cr)
        if cands:
            return self.rng.choice(cands)
        boxes = sorted(v for v, k in web.kinds.items() if is_box(k))
        if not boxes:
            return None
        return rules.box_expansion(web, self.rng.choice(boxes))

    def _step(self, web: Web, rw: rules.Rewrite) -> list[tuple[QScalar, Web]]:
        self.stats.steps += 1
        self.stats.rule_counts[rw.name] = self.stats.rule_counts.get(rw.name, 0) + 1
        out = rules.apply(web, rw)
        if self.config.check_invariants:
            before = measure(web)
            for _, new in out:
                self.stats.measure_checks += 1
                if not measure(new) < before:
                    raise StuckState(f"rule {rw.name} did not decrease the measure: {before} -> {measure(new)}")
        self._charge(len(out))
        return out

    def _euler_filter(self, web: Web) -> None:
        if not self.config.check_invariants or not web.kinds or not _is_tetravalent_only(web):
            return
        self.stats.euler_checks += 1
        if not any(len(f) < 4 for f in web.faces()):
            raise StuckState("closed tetravalent component without a face of fewer than four sides")

    # -- closed webs ----------------------------------------------------

    def scalar(self, web: Web) -> QScalar:
        if not web.is_closed:
            raise NonClosedWeb(f"expected a closed web, boundary is {web.boundary.types}")
        single, double = web.loops
        val = LOOP_SINGLE ** single * LOOP_DOUBLE ** double if (single or double) else ONE
        comps = web.components()
        if len(comps) == 1 and web.loops == (0, 0):
            return self._component(web)
        for comp in comps:
            val = val * self._component(_subweb(web, comp))
            if val.is_zero():
                break
        return val

    def _component(self, web: Web) -> QScalar:
        if not web.kinds:
            return ONE
        key = web.key if self.config.memo else None
        if key is not None and key in self._closed_memo:
            return self._closed_memo[key]
        self._euler_filter(web)
        rw = self._choose(web)
        if rw is None:
            raise StuckState(f"no rewrite applies to {web!r}")
        total = ZERO
        for coeff, new in self._step(web, rw):
            total = total + coeff * self.scalar(new)
            self.stats.pending -= 1
        if key is not None:
            self._closed_memo[key] = total
        return total

    # -- open webs ------------------------------------------------------

    def normalize(self, web: Web) -> dict:
        """Reduce ``web`` to ``{key: (web, coeff)}`` over irreducible webs."""
        if web.is_closed:
            val = self.scalar(web)
            empty = Web({}, {}, BoundarySignature(), (0, 0), _trusted=True)
            return {} if val.is_zero() else {empty.key: (empty, val)}
        comps = web.components()
        scale = ONE
        if len(comps) > 1 or web.loops != (0, 0):
            single, double = web.loops
            scale = LOOP_SINGLE ** single * LOOP_DOUBLE ** double
            for comp in comps[1:]:
                scale = scale * self._component(_subweb(web, comp))
            if scale.is_zero():
                return {}
            web = _subweb(web, comps[0])
        result = self._normalize_connected(web)
        if scale == ONE:
            return result
        return {k: (w, c * scale) for k, (w, c) in result.items()}

    def _normalize_connected(self, web: Web) -> dict:
        key = web.key if self.config.memo else None
        if key is not None and key in self._open_memo:
            return self._open_memo[key]
        rw = self._choose(web)
        if rw is None:
            result = {web.key: (web, ONE)}
        else:
            result: dict = {}
            for coeff, new in self._step(web, rw):
                for k, (w, c) in self.normalize(new).items():
                    prev = result.get(k)
                    val = coeff * c if prev is None else prev[1] + coeff * c
                    if val.is_zero():
                        result.pop(k, None)
                    else:
                        result[k] = (w, val)
                self.stats.pending -= 1
                if len(result) > self.config.term_budget:
                    raise TermBudgetExceeded(self.config.term_budget)
        if key is not None:
            self._open_memo[key] = result
        return result


def reduce_closed(ws, config: ReductionConfig = ReductionConfig(), reducer: Optional[Reducer] = None) -> QScalar:
    """Evaluate a closed web or closed WebSum to a scalar."""
    from .websum import WebSum

    red = reducer if reducer is not None else Reducer(config)
    if isinstance(ws, Web):
        ws = WebSum.of(ws)
    if not ws.signature.closed:
        raise NonClosedWeb(f"expected a closed web sum, boundary is {ws.signature.types}")
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        total = ZERO
        for web, coeff in ws.items():
            total = total + coeff * red.scalar(web)
    finally:
        sys.setrecursionlimit(limit)
    return total
