"""Colored Jones polynomials, their tails, and the state-diagram moves behind them."""

from __future__ import annotations

from .cjp import ColoredJonesResult, reduced_cjp, unreduced_cjp, verify_mainlemma
from .diagram import PlanarDiagram, connected_sum, mirror, parse_pd, writhe
from .errors import (AdequacyError, CJTailError, MoveError, OrderError, PDSyntaxError, ResourceError,
                     StabilityError)
from .network import KERNEL
from .states import all_state, beta_A, is_adequate, is_fibered_criterion, main_theorem_move, recover_link
from .tail import TailSeries, head, stabilization_report, tail
from .theta import MonomialSpec, theta

__version__ = "0.1.0"

__all__ = [
    "AdequacyError", "CJTailError", "ColoredJonesResult", "KERNEL", "MonomialSpec", "MoveError",
    "OrderError", "PDSyntaxError", "PlanarDiagram", "ResourceError", "StabilityError", "TailSeries",
    "all_state", "beta_A", "connected_sum", "head", "is_adequate", "is_fibered_criterion",
    "main_theorem_move", "mirror", "parse_pd", "recover_link", "reduced_cjp", "stabilization_report",
    "tail", "theta", "unreduced_cjp", "verify_mainlemma", "writhe",
]
