"""Linear combinations of webs keyed by canonical form."""

from __future__ import annotations

from typing import Iterable, Iterator

from ..errors import MalformedWeb, TermBudgetExceeded
from ..qscalar import ONE, QScalar, qs
from .web import BoundarySignature, Web


class WebSum:
    """Immutable map from canonical webs to nonzero QScalar coefficients."""

    __slots__ = ("signature", "_terms")

    def __init__(self, signature: BoundarySignature, terms: dict | None = None):
        self.signature = signature
        self._terms = {}
        for key, (web, coeff) in (terms or {}).items():
            if web.boundary != signature:
                raise MalformedWeb(f"term boundary {web.boundary.types} differs from {signature.types}")
            if not coeff.is_zero():
                self._terms[key] = (web, coeff)

    @classmethod
    def of(cls, web: Web, coeff=ONE) -> "WebSum":
        return cls(web.boundary, {web.key: (web, qs(coeff))})

    @classmethod
    def from_terms(cls, signature: BoundarySignature, terms: Iterable[tuple[QScalar, Web]],
                   budget: int | None = None) -> "WebSum":
        acc: dict = {}
        for coeff, web in terms:
            key = web.key
            prev = acc.get(key)
            acc[key] = (web, coeff if prev is None else prev[1] + coeff)
            if budget is not None and len(acc) > budget:
                raise TermBudgetExceeded(budget)
        return cls(signature, acc)

    def items(self) -> Iterator[tuple[Web, QScalar]]:
        for web, coeff in self._terms.values():
            yield web, coeff

    def coefficient(self, web: Web) -> QScalar:
        hit = self._terms.get(web.key)
        return hit[1] if hit else qs(0)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "WebSum") -> "WebSum":
        if other.signature != self.signature:
            raise MalformedWeb("cannot add web sums with different boundaries")
        return WebSum.from_terms(self.signature, [(c, w) for w, c in self.items()] + [(c, w) for w, c in other.items()])

    def scale(self, s) -> "WebSum":
        s = qs(s)
        return WebSum(self.signature, {k: (w, c * s) for k, (w, c) in self._terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, WebSum) and self.signature == other.signature
                and {k: c for k, (_, c) in self._terms.items()} == {k: c for k, (_, c) in other._terms.items()})

    def __repr__(self) -> str:
        return f"WebSum({len(self)} terms, boundary={self.signature.types})"
