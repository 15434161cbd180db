"""Characteristic-root geometry of the per-mode ODE and its closed-form solution bases.

For mode k the ODE u^(2n) + (-1)^n sgn(y) lam^(2n) u = 0, lam = pi k / l, has
characteristic roots r = lam * e^(i*theta). Each root in the closed upper half
plane contributes e^(lam cos(theta) y) cos(lam sin(theta) y) and, unless the
root is real, the matching sine function. Their t-th derivatives are
lam^t e^(alpha y) cos(beta y + t*theta), which is all the solver ever needs.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from problems.exceptions import DomainError

UPPER = 'upper'
LOWER = 'lower'

# cos and sin of pi * (j/2) for j = 0..3
_QUARTER_TURNS = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))


def characteristic_turns(n: int, sign: int):
    """Angles in [0, pi] (as multiples of pi) of the roots of w^(2n) = sign."""
    if sign < 0:
        return [Fraction(1 + 2 * j, 2 * n) for j in range(n)]
    return [Fraction(s, n) for s in range(n + 1)]


def _angle(turn: Fraction, n: int, side: str) -> float:
    # Even n: keep the closed forms theta_p = pi/(4m)(1+2p), sigma_s = pi s/(2m) verbatim.
    if n % 2 == 0:
        m = n // 2
        if side == UPPER:
            return math.pi / (4 * m) * (turn * 2 * n).numerator
        return math.pi * (turn * n).numerator / (2 * m)
    return math.pi * turn.numerator / turn.denominator


def _cos_sin(turn: Fraction, angle: float):
    doubled = 2 * turn
    if doubled.denominator == 1:
        return _QUARTER_TURNS[doubled.numerator % 4]
    return math.cos(angle), math.sin(angle)


def shifted_trig(part: str, base, shift: Fraction):
    """cos or sin of (base + pi*shift); exact when base is zero and shift a multiple of 1/2."""
    shift = shift % 2
    if np.ndim(base) == 0 and base == 0.0 and (2 * shift).denominator == 1:
        cos_value, sin_value = _QUARTER_TURNS[(2 * shift).numerator % 4]
        return cos_value if part == 'cos' else sin_value
    phase = np.asarray(base, dtype=float) + math.pi * float(shift)
    return np.cos(phase) if part == 'cos' else np.sin(phase)


@dataclass(frozen=True)
class BasisFunction:
    """e^(lam cos(angle) y) times cos or sin of (lam sin(angle) y)."""
    side: str
    turn: Fraction
    angle: float
    cos_angle: float
    sin_angle: float
    part: str
    label: str


@dataclass(frozen=True)
class RootGeometry:
    n: int
    k: int
    l: float
    lam: float
    upper_turns: tuple
    lower_turns: tuple
    upper_basis: tuple
    lower_basis: tuple

    @property
    def upper_angles(self):
        return tuple(_angle(turn, self.n, UPPER) for turn in self.upper_turns)

    @property
    def lower_angles(self):
        return tuple(_angle(turn, self.n, LOWER) for turn in self.lower_turns)

    @property
    def alpha(self):
        return tuple(self.lam * _cos_sin(t, a)[0] for t, a in zip(self.upper_turns, self.upper_angles))

    @property
    def beta(self):
        return tuple(self.lam * _cos_sin(t, a)[1] for t, a in zip(self.upper_turns, self.upper_angles))

    @property
    def mu(self):
        return tuple(self.lam * _cos_sin(t, a)[0] for t, a in zip(self.lower_turns, self.lower_angles))

    @property
    def nu(self):
        return tuple(self.lam * _cos_sin(t, a)[1] for t, a in zip(self.lower_turns, self.lower_angles))

    @property
    def basis(self):
        return self.upper_basis + self.lower_basis

    def side_basis(self, side):
        return self.upper_basis if side == UPPER else self.lower_basis


def _basis_for(n: int, side: str, turns):
    functions = []
    letter = 'c' if side == UPPER else 'd'
    for index, turn in enumerate(turns):
        angle = _angle(turn, n, side)
        cos_angle, sin_angle = _cos_sin(turn, angle)
        if sin_angle == 0.0:
            functions.append(BasisFunction(side, turn, angle, cos_angle, sin_angle, 'cos', f'{letter}_{index}'))
            continue
        for part, superscript in (('cos', 1), ('sin', 2)):
            functions.append(BasisFunction(
                side, turn, angle, cos_angle, sin_angle, part, f'{letter}_{index}^{superscript}',
            ))
    return tuple(functions)


def compute_root_geometry(n: int, k: int, l: float) -> RootGeometry:
    """Root angles and solution bases on both half-rectangles for mode k."""
    upper_sign = -1 if n % 2 == 0 else 1
    upper_turns = tuple(characteristic_turns(n, upper_sign))
    lower_turns = tuple(characteristic_turns(n, -upper_sign))
    return RootGeometry(
        n=n,
        k=k,
        l=l,
        lam=math.pi * k / l,
        upper_turns=upper_turns,
        lower_turns=lower_turns,
        upper_basis=_basis_for(n, UPPER, upper_turns),
        lower_basis=_basis_for(n, LOWER, lower_turns),
    )


def basis_derivative(function: BasisFunction, lam: float, t: int, y, log_shift: float = 0.0):
    """t-th derivative of a basis function times e^(-log_shift), vectorised over y."""
    y = np.asarray(y, dtype=float)
    growth = np.exp(lam * function.cos_angle * y - log_shift)
    trig = shifted_trig(function.part, lam * function.sin_angle * y, t * function.turn)
    return lam ** t * growth * trig


def basis_value(geom: RootGeometry, side: str, basis_index: int, t: int, y: float) -> float:
    if side not in (UPPER, LOWER):
        raise DomainError(f'unknown side {side!r}')
    if side == UPPER and y < 0 or side == LOWER and y > 0:
        raise DomainError(f'y={y} is not on the {side} half-rectangle')
    if not 0 <= t <= 2 * geom.n:
        raise DomainError(f'derivative order {t} outside 0..{2 * geom.n}')
    function = geom.side_basis(side)[basis_index]
    return float(basis_derivative(function, geom.lam, t, y))
