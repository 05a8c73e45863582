"""Exact cosines and sines of constructible rational-turn angles.

Odd parts of supported denominators are restricted to divisors of 15; the
Fermat primes 17, 257 and 65537 are recognised by :func:`is_constructible`
but have no exact base direction here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactfield import ConstructibleNumber, TowerContext

__all__ = [
    "FERMAT_PRIMES",
    "RationalTurn",
    "UnitCircleDirection",
    "UnsupportedAngleError",
    "angle_sum",
    "chord_sq",
    "constructible_factorization",
    "exact_cos_sin",
    "half_angle",
    "is_constructible",
    "supported_ngon",
]

FERMAT_PRIMES = (3, 5, 17, 257, 65537)
SUPPORTED_ODD_PARTS = (1, 3, 5, 15)


class UnsupportedAngleError(ValueError):
    pass


@dataclass(frozen=True)
class RationalTurn:
    """``numerator / denominator`` of a full turn, kept in lowest terms."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        q = Fraction(self.numerator, self.denominator)
        object.__setattr__(self, "numerator", q.numerator)
        object.__setattr__(self, "denominator", q.denominator)

    @property
    def degrees(self) -> Fraction:
        return Fraction(360 * self.numerator, self.denominator)


@dataclass(frozen=True)
class UnitCircleDirection:
    c: ConstructibleNumber
    s: ConstructibleNumber

    def __post_init__(self):
        if self.c * self.c + self.s * self.s != 1:
            raise ValueError("direction is not on the unit circle")

    @classmethod
    def identity(cls, ctx: TowerContext) -> "UnitCircleDirection":
        return cls(ctx.one(), ctx.zero())


def _odd_part(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def constructible_factorization(n: int) -> Optional[tuple[int, tuple[int, ...]]]:
    """``(power_of_two, distinct_fermat_primes)`` when ``n`` is constructible, else None."""
    if n < 3:
        raise ValueError("a polygon needs at least 3 sides")
    k, m = _odd_part(n)
    primes = []
    for p in FERMAT_PRIMES:
        if m % p == 0:
            m //= p
            primes.append(p)
    if m != 1:
        return None
    return k, tuple(primes)


def is_constructible(n: int) -> bool:
    """Regular n-gon constructibility: n is a power of two times distinct Fermat primes."""
    return constructible_factorization(n) is not None


def angle_sum(a: UnitCircleDirection, b: UnitCircleDirection, kind: str = "add") -> UnitCircleDirection:
    if kind == "add":
        return UnitCircleDirection(a.c * b.c - a.s * b.s, a.s * b.c + a.c * b.s)
    if kind == "sub":
        return UnitCircleDirection(a.c * b.c + a.s * b.s, a.s * b.c - a.c * b.s)
    raise ValueError(f"unknown angle operation {kind!r}")


def half_angle(a: UnitCircleDirection) -> UnitCircleDirection:
    """Bisect an angle of the closed upper half plane."""
    if a.s.sign() < 0:
        raise ValueError("half_angle needs a direction with non-negative sine")
    c = ((1 + a.c) / 2).sqrt()
    s = ((1 - a.c) / 2).sqrt()
    return UnitCircleDirection(c, s)


def _base_direction(m: int, ctx: TowerContext) -> UnitCircleDirection:
    """Direction of 1/m turn for m in {3, 5, 15}."""
    if m == 3:
        return UnitCircleDirection(ctx.rational(Fraction(-1, 2)), ctx.rational(3).sqrt() / 2)
    r5 = ctx.rational(5).sqrt()
    fifth = UnitCircleDirection((r5 - 1) / 4, (10 + 2 * r5).sqrt() / 4)
    if m == 5:
        return fifth
    # 1/15 = 2/5 - 1/3
    return angle_sum(angle_sum(fifth, fifth), _base_direction(3, ctx), "sub")


def _check_denominator(q: int) -> tuple[int, int]:
    k, m = _odd_part(q)
    if m in SUPPORTED_ODD_PARTS:
        return k, m
    rest = m
    for p in (3, 5):
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise UnsupportedAngleError(
                    f"denominator {q}: repeated factor {p} is not constructible")
    for p in FERMAT_PRIMES[2:]:
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                raise UnsupportedAngleError(
                    f"denominator {q}: repeated factor {p} is not constructible")
            if rest == 1:
                raise UnsupportedAngleError(
                    f"denominator {q}: Fermat prime {p} is outside the supported base {{3, 5}}")
    raise UnsupportedAngleError(
        f"denominator {q}: factor {rest} is not a product of distinct Fermat primes")


def exact_cos_sin(turn: RationalTurn, context: Optional[TowerContext] = None) -> UnitCircleDirection:
    ctx = context if context is not None else TowerContext()
    q = turn.denominator
    k, m = _check_denominator(q)
    if m == 1:
        if k == 0:
            step = UnitCircleDirection.identity(ctx)
        else:
            step = UnitCircleDirection(ctx.rational(-1), ctx.zero())
            for _ in range(k - 1):
                step = half_angle(step)
    else:
        step = _base_direction(m, ctx)
        for _ in range(k):
            step = half_angle(step)
    # numerator by binary doubling of the 1/q step
    p = turn.numerator % q
    result = UnitCircleDirection.identity(ctx)
    while p:
        if p & 1:
            result = angle_sum(result, step)
        step = angle_sum(step, step)
        p >>= 1
    return result


def supported_ngon(n: int) -> bool:
    """True when chord_sq can handle ``n`` exactly."""
    return n >= 3 and _odd_part(n)[1] in SUPPORTED_ODD_PARTS


def chord_sq(n: int, radius_sq: ConstructibleNumber) -> ConstructibleNumber:
    """Squared edge of the regular n-gon inscribed in a circle of squared radius ``radius_sq``."""
    if not is_constructible(n):
        raise UnsupportedAngleError(f"the regular {n}-gon is not constructible")
    if radius_sq.sign() <= 0:
        raise ValueError("radius_sq must be positive")
    d = exact_cos_sin(RationalTurn(1, n), radius_sq.context)
    return radius_sq * (2 - 2 * d.c)
