"""Precision plumbing: explicit-precision real values.

All approximate results carry the precision they were computed at and a
heuristic error estimate.  Nothing in the package mutates mpmath's global
precision; every computation runs inside a local ``workprec`` block.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath

DEFAULT_PRECISION_BITS = 256

# Optional override, a decimal bit count, e.g. LFMOMENTS_PRECISION=384.
_ENV_VAR = "LFMOMENTS_PRECISION"


def default_precision() -> int:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        return DEFAULT_PRECISION_BITS
    return bits if bits >= 8 else DEFAULT_PRECISION_BITS


@dataclass(frozen=True)
class RealApprox:
    """A real number with its working precision and an error estimate.

    ``err_estimate`` is a heuristic bound on the absolute error, not a
    certified enclosure.
    """

    value: mpmath.mpf
    precision_bits: int
    err_estimate: float

    def __float__(self) -> float:
        return float(self.value)

    def digits(self, n: int = 15) -> str:
        with mpmath.workprec(max(self.precision_bits, 53)):
            return mpmath.nstr(self.value, n)
