"""Tails and heads of the colored Jones polynomial, with stabilization checked at runtime."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cjp import ColoredJonesResult, reduced_cjp
from .diagram import PlanarDiagram, mirror
from .errors import AdequacyError, OrderError, StabilityError
from .laurent import dot_eq_n, format_series, series_expand, RationalFn
from .states import is_adequate

log = logging.getLogger(__name__)

__all__ = ["TailSeries", "StabilizationReport", "tail", "head", "stabilization_report", "tails_equal",
           "prefix"]


@dataclass(frozen=True)
class TailSeries:
    coeffs: tuple
    order: int
    source: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.order:
            raise ValueError("need exactly `order` coefficients")
        if self.coeffs and self.coeffs[0] <= 0:
            raise ValueError("tail must start with a positive constant term")

    @property
    def colors_used(self) -> list:
        return list(self.source.get("colors", []))

    def to_json(self) -> dict:
        return {"coefficients": list(self.coeffs), "order": self.order,
                "colors_used": self.colors_used, "stable": True}

    def __str__(self):
        return format_series(self.coeffs)


def prefix(r: ColoredJonesResult, order: int) -> list:
    """First ``order`` normalized q-coefficients of ``r``, padded with zeros."""
    c = r.normalized()
    return (c + [0] * order)[:order]


def _require_a_adequate(d: PlanarDiagram):
    if not is_adequate(d, "A"):
        raise AdequacyError("diagram is not A-adequate; the tail is not guaranteed to exist")


def tail(d: PlanarDiagram, order: int, name: str = "", budget: int | None = None,
         kernel: str | None = None) -> TailSeries:
    """First ``order`` coefficients of the tail, confirmed by colors ``order`` and ``order + 1``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    _require_a_adequate(d)
    # the larger color first, so an over-budget request fails before any work
    r2 = reduced_cjp(d, order + 1, name=name, budget=budget, kernel=kernel)
    r1 = reduced_cjp(d, order, name=name, budget=budget, kernel=kernel)
    p1, p2 = prefix(r1, order), prefix(r2, order)
    if p1 != p2:
        raise StabilityError(f"colors {order} and {order + 1} disagree in the first {order} coefficients",
                             p1, p2)
    log.debug("tail of %s: shifts %s and %s quarter-units absorbed", name or "diagram", r1.shift, r2.shift)
    return TailSeries(tuple(p1), order, {"name": name, "colors": [order, order + 1],
                                          "shifts": [r1.shift, r2.shift]})


def head(d: PlanarDiagram, order: int, name: str = "", budget: int | None = None,
         kernel: str | None = None) -> TailSeries:
    """The tail of the mirror image."""
    return tail(mirror(d), order, name=name, budget=budget, kernel=kernel)


@dataclass(frozen=True)
class StabilizationReport:
    rows: dict  # N -> normalized coefficients
    agree: dict  # N -> whether rows N and N+1 share their first N coefficients
    unreduced_agree: dict = field(default_factory=dict)

    @property
    def stable(self) -> bool:
        return all(self.agree.values()) and all(self.unreduced_agree.values())

    def to_json(self) -> dict:
        return {
            "rows": {str(k): v for k, v in self.rows.items()},
            "agree": {str(k): v for k, v in self.agree.items()},
            "unreduced_agree": {str(k): v for k, v in self.unreduced_agree.items()},
            "stable": self.stable,
        }


def stabilization_report(d: PlanarDiagram, N_max: int, unreduced: bool = False, budget: int | None = None,
                         kernel: str | None = None) -> StabilizationReport:
    """Compare consecutive colors up to ``N_max``.

    With ``unreduced`` the brackets themselves are also compared from their top
    ``A``-degree, to ``≐_{4(n+1)}`` for ``n = N - 1``.
    """
    _require_a_adequate(d)
    rows, agree, un = {}, {}, {}
    res = {N: reduced_cjp(d, N, budget=budget, kernel=kernel) for N in range(1, N_max + 1)}
    for N, r in res.items():
        rows[N] = r.normalized()
    for N in range(1, N_max):
        agree[N] = prefix(res[N], N) == prefix(res[N + 1], N)
        if unreduced:
            n = N - 1
            order = 4 * (n + 1)
            # the A-adequate end of the bracket is its highest A-degree
            s1 = series_expand(RationalFn(res[N].unreduced.bar()), order)
            s2 = series_expand(RationalFn(res[N + 1].unreduced.bar()), order)
            un[N] = dot_eq_n(s1, s2, order)
    return StabilizationReport(rows, agree, un)


def tails_equal(d1: PlanarDiagram, d2: PlanarDiagram, order: int, budget: int | None = None,
                kernel: str | None = None) -> bool:
    return tail(d1, order, budget=budget, kernel=kernel).coeffs == tail(d2, order, budget=budget,
                                                                          kernel=kernel).coeffs
