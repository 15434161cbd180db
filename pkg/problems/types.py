"""Immutable value types describing a mixed-type boundary problem and its data."""

import math
from dataclasses import dataclass, field, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .exceptions import InvalidRatioError


def _is_perfect_square(value: int) -> bool:
    root = math.isqrt(value)
    return root * root == value


def _split_square_factor(d: int):
    """Write d = f**2 * r with r square-free; returns (f, r)."""
    factor, rest = 1, d
    divisor = 2
    while divisor * divisor <= rest:
        while rest % (divisor * divisor) == 0:
            rest //= divisor * divisor
            factor *= divisor
        divisor += 1
    return factor, rest


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number p + q*sqrt(d), d square-free and not a perfect square."""
    p: Fraction
    q: Fraction
    d: int

    def __post_init__(self):
        if self.q == 0:
            raise InvalidRatioError('quadratic surd needs q != 0')
        if self.d <= 1 or _is_perfect_square(self.d):
            raise InvalidRatioError(f'd={self.d} must be a positive non-square integer')
        if _split_square_factor(self.d)[0] != 1:
            raise InvalidRatioError(f'd={self.d} must be square-free')

    def __float__(self):
        return float(self.to_decimal(40))

    def to_decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits
            root = Decimal(self.d).sqrt()
            p = Decimal(self.p.numerator) / Decimal(self.p.denominator)
            q = Decimal(self.q.numerator) / Decimal(self.q.denominator)
            return p + q * root

    def __str__(self):
        return f'{self.p} + {self.q}*sqrt({self.d})'


@dataclass(frozen=True)
class RatioValue:
    """Side ratio a/l in one of three representations."""
    kind: str
    rational: Optional[Fraction] = None
    surd: Optional[QuadraticSurd] = None
    real: Optional[float] = None

    EXACT_RATIONAL = 'exact-rational'
    QUADRATIC_SURD = 'quadratic-surd'
    FLOAT = 'float'

    @classmethod
    def exact(cls, num, den=1):
        if den == 0:
            raise InvalidRatioError('denominator must be nonzero')
        return cls(kind=cls.EXACT_RATIONAL, rational=Fraction(num, den))

    @classmethod
    def from_surd(cls, p, q, d):
        """Build p + q*sqrt(d), falling back to an exact rational when it is one."""
        p, q, d = Fraction(p), Fraction(q), int(d)
        if d < 0:
            raise InvalidRatioError('d must be nonnegative')
        if q == 0 or _is_perfect_square(d):
            return cls.exact(p + q * math.isqrt(d))
        factor, rest = _split_square_factor(d)
        if rest == 1:
            return cls.exact(p + q * factor)
        return cls(kind=cls.QUADRATIC_SURD, surd=QuadraticSurd(p, q * factor, rest))

    @classmethod
    def approximate(cls, value: float):
        return cls(kind=cls.FLOAT, real=float(value))

    def __float__(self):
        if self.kind == self.EXACT_RATIONAL:
            return float(self.rational)
        if self.kind == self.QUADRATIC_SURD:
            return float(self.surd)
        return float(self.real)

    def __str__(self):
        if self.kind == self.EXACT_RATIONAL:
            return str(self.rational)
        if self.kind == self.QUADRATIC_SURD:
            return str(self.surd)
        return repr(self.real)


@dataclass(frozen=True)
class BoundarySchema:
    """Prescribed derivative orders q + gamma*s at y=-a and chi + delta*s at y=+a."""
    gamma: int
    delta: int
    q: int
    chi: int

    def lower_orders(self, n):
        return [self.q + self.gamma * s for s in range(n)]

    def upper_orders(self, n):
        return [self.chi + self.delta * s for s in range(n)]

    @property
    def is_mixed(self):
        return self.gamma != self.delta


@dataclass(frozen=True)
class SinePolynomial:
    """f(x) = sum of coefficient * sin(pi*mode*x/l) over the stored terms."""
    terms: tuple
    length_l: float

    def __post_init__(self):
        modes = [mode for mode, _ in self.terms]
        if any(mode < 1 for mode in modes):
            raise ValueError('sine modes must be positive')
        if any(b <= a for a, b in zip(modes, modes[1:])):
            raise ValueError('sine modes must be strictly increasing')
        object.__setattr__(self, 'terms', tuple((int(m), float(c)) for m, c in self.terms))

    @classmethod
    def from_dict(cls, coefficients: dict, length_l: float):
        terms = tuple(sorted((int(k), float(c)) for k, c in coefficients.items() if c != 0))
        return cls(terms=terms, length_l=length_l)

    def coefficient(self, mode: int) -> float:
        for m, c in self.terms:
            if m == mode:
                return c
        return 0.0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for mode, coeff in self.terms:
            total = total + coeff * np.sin(np.pi * mode * x / self.length_l)
        return total

    def __add__(self, other):
        merged = dict(self.terms)
        for mode, coeff in other.terms:
            merged[mode] = merged.get(mode, 0.0) + coeff
        return SinePolynomial.from_dict(merged, self.length_l)

    def __rmul__(self, alpha):
        return SinePolynomial(tuple((m, alpha * c) for m, c in self.terms), self.length_l)

    def sampled(self, count: int):
        nodes = np.linspace(0.0, self.length_l, count)
        return SampledFunction(tuple(self(nodes)), self.length_l)


@dataclass(frozen=True)
class SampledFunction:
    """Values at count uniform nodes on [0, l], endpoints included."""
    samples: tuple
    length_l: float

    def __post_init__(self):
        count = len(self.samples)
        if count < 17:
            raise ValueError(f'need at least 17 samples, got {count}')
        if count % 2 == 0:
            raise ValueError(f'sample count must be odd for Simpson quadrature, got {count}')
        object.__setattr__(self, 'samples', tuple(float(v) for v in self.samples))

    @property
    def nodes(self):
        return np.linspace(0.0, self.length_l, len(self.samples))

    @property
    def values(self):
        return np.asarray(self.samples)

    def __call__(self, x):
        return np.interp(np.asarray(x, dtype=float), self.nodes, self.values)


BoundaryFunction = Union[SinePolynomial, SampledFunction]


@dataclass(frozen=True)
class Tolerances:
    degeneracy_tol: float = 1e-8
    residual_tol: float = 1e-8
    resonance_tol: float = None


@dataclass(frozen=True)
class ProblemSpec:
    """Full problem statement: order 2n, rectangle (0,l)x(-a,a), schema and data."""
    n: int
    l: float
    a: float
    ratio: RatioValue
    schema: BoundarySchema
    phi: tuple
    psi: tuple
    K: int = 50
    tolerances: Tolerances = field(default_factory=Tolerances)
    kernel_amplitudes: dict = field(default_factory=dict)

    @property
    def order(self):
        return 2 * self.n

    @property
    def tau(self):
        return float(self.ratio)

    def with_data(self, phi, psi):
        return replace(self, phi=tuple(phi), psi=tuple(psi))


@dataclass(frozen=True)
class RatioClass:
    kind: str
    s: Optional[int] = None
    t: Optional[int] = None
    phase: Optional[Fraction] = None
    degree: Optional[int] = None

    INTEGER = 'integer'
    RATIONAL_SEPARATED = 'rational-separated'
    RATIONAL_RESONANT = 'rational-resonant'
    ALGEBRAIC_IRRATIONAL = 'algebraic-irrational'
    FLOAT_UNKNOWN = 'float-unknown'

    @property
    def is_rational(self):
        return self.kind in (self.INTEGER, self.RATIONAL_SEPARATED, self.RATIONAL_RESONANT)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations
