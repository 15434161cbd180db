"""Direct scan of k^(1+eps) * |sin(pi*k*tau + phase)| for irrational side ratios."""

import logging
import math
from dataclasses import dataclass
from decimal import localcontext
from typing import NamedTuple

import numpy as np

from problems.exceptions import InvalidRatioError
from problems.types import RatioValue

from .separation import SeparationBound

logger = logging.getLogger(__name__)

SURD_DIGITS = 50


@dataclass(frozen=True)
class DiophantineScanConfig:
    epsilon: float = 0.5
    k_max: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f'epsilon must lie in (0, 1), got {self.epsilon}')
        if self.k_max < 1:
            raise ValueError(f'k_max must be positive, got {self.k_max}')


class ScanResult(NamedTuple):
    N_hat: float
    worst_k: int
    table: np.ndarray  # columns: k, |Delta_k|, k^(1+eps) |Delta_k|

    def separation_bound(self) -> SeparationBound:
        """Smallest |Delta_k| seen over the scanned k; no claim beyond k_max."""
        index = int(np.argmin(self.table[:, 1]))
        return SeparationBound(
            delta=float(self.table[index, 1]),
            witness_k2=int(self.table[index, 0]),
            kind=SeparationBound.EMPIRICAL_SCAN,
        )


def reduced_multiples(ratio: RatioValue, k_max: int) -> np.ndarray:
    """k*tau mod 2 for k = 1..k_max; surds are reduced in extended precision."""
    ks = np.arange(1, k_max + 1)
    if ratio.kind == RatioValue.QUADRATIC_SURD:
        with localcontext() as ctx:
            ctx.prec = SURD_DIGITS
            tau = ratio.surd.to_decimal(SURD_DIGITS)
            return np.array([float((k * tau) % 2) for k in range(1, k_max + 1)])
    return np.mod(ks * float(ratio), 2.0)


def diophantine_scan(ratio: RatioValue, form, cfg: DiophantineScanConfig = None) -> ScanResult:
    if ratio.kind == RatioValue.EXACT_RATIONAL:
        raise InvalidRatioError('ratio is rational; use separation_bound instead')
    if not form.tabulated:
        raise ValueError('diophantine scan needs a tabulated denominator form')
    cfg = cfg or DiophantineScanConfig()

    ks = np.arange(1, cfg.k_max + 1, dtype=float)
    magnitudes = np.abs(np.sin(math.pi * (reduced_multiples(ratio, cfg.k_max) + float(form.phase))))
    weighted = magnitudes * ks ** (1.0 + cfg.epsilon)
    worst = int(np.argmin(weighted))
    result = ScanResult(
        N_hat=float(weighted[worst]),
        worst_k=worst + 1,
        table=np.column_stack([ks, magnitudes, weighted]),
    )
    logger.info(f'Scanned tau={ratio} up to k={cfg.k_max}: N_hat={result.N_hat!r} at k={result.worst_k}')
    return result
