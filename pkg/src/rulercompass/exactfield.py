"""Exact arithmetic in towers of real quadratic extensions of Q.

A :class:`TowerContext` owns an extend-only list of square-root generators
``g_0, g_1, ...`` where ``g_k**2`` is a positive non-square element of
``Q(g_0, ..., g_{k-1})``.  A :class:`ConstructibleNumber` is a vector of
rational coefficients over the product basis ``prod(g_i for i in mask)``;
index ``mask`` of the vector carries the coefficient of that product.

Zero testing is a coefficient test and therefore exact.  Signs of nonzero
values are found by outward-rounded interval evaluation, refining the
generator enclosures until the interval excludes zero.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

__all__ = [
    "ConstructibleNumber",
    "ContextMismatchError",
    "Interval",
    "NegativeRadicandError",
    "RefinementLimitError",
    "TowerContext",
    "arith",
    "decimal_digits",
    "equals",
    "format_decimal",
    "format_rational",
    "sign",
    "sqrt",
    "to_decimal",
]

Rational = Union[int, Fraction]
Coeffs = tuple  # tuple[Fraction, ...] of length 2**depth

_ZERO = Fraction(0)
_ONE = Fraction(1)
_context_ids = itertools.count(1)

DEFAULT_REFINEMENT_CAP = 4096


class ContextMismatchError(ValueError):
    """Operands belong to different extension towers."""


class NegativeRadicandError(ValueError):
    """Square root of a negative number was requested."""


class RefinementLimitError(RuntimeError):
    """Interval refinement hit the cap; indicates an internal bug."""


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


# -- dyadic outward rounding -------------------------------------------------

def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    if x.denominator == 1 or x.denominator.bit_length() <= bits:
        return x
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    if x.denominator == 1 or x.denominator.bit_length() <= bits:
        return x
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def _imul(a: tuple, b: tuple, bits: int) -> tuple:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return _floor_dyadic(min(products), bits), _ceil_dyadic(max(products), bits)


# -- coefficient-vector helpers -------------------------------------------

def _is_zero(v: Coeffs) -> bool:
    return not any(v)


def _zeros(n: int) -> Coeffs:
    return (_ZERO,) * n


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def _scale(a: Coeffs, k: Fraction) -> Coeffs:
    return tuple(x * k for x in a)


def _trim(v: Coeffs) -> Coeffs:
    while len(v) > 1:
        h = len(v) // 2
        if any(v[h:]):
            break
        v = v[:h]
    return v


def _lift(v: Coeffs, depth: int) -> Coeffs:
    n = 1 << depth
    if len(v) > n:
        raise ValueError("cannot lift to a smaller depth")
    return v + _zeros(n - len(v))


def _depth_of(v: Coeffs) -> int:
    return len(v).bit_length() - 1


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _square_split(n: int, trial_limit: int = 100_000) -> tuple[int, int]:
    """Write ``n = m*m*f`` pulling out square factors of small primes.

    Primes above ``trial_limit`` are left in ``f`` unless the remaining
    cofactor is itself a perfect square.
    """
    m, f = 1, 1
    p = 2
    while p * p <= n and p <= trial_limit:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        m *= p ** (e // 2)
        f *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        m *= r
    else:
        f *= n
    return m, f


class TowerContext:
    """Extend-only tower ``Q(g_0)(g_1)...`` shared by the values of one scene.

    Mutation (new generators, tighter enclosures, memoised square roots) is
    serialised by an internal re-entrant lock.
    """

    def __init__(self, refinement_cap: int = DEFAULT_REFINEMENT_CAP):
        self.context_id = next(_context_ids)
        self.refinement_cap = refinement_cap
        self._lock = threading.RLock()
        self._radicands: list[Coeffs] = []  # radicand of g_k, lifted to depth k
        self._enclosures: list[tuple[int, Fraction, Fraction]] = []
        self._sqrt_memo: dict[tuple[Coeffs, int], Optional[Coeffs]] = {}

    def __repr__(self) -> str:
        return f"TowerContext(id={self.context_id}, depth={self.depth})"

    @property
    def depth(self) -> int:
        return len(self._radicands)

    @property
    def generators(self) -> tuple["ConstructibleNumber", ...]:
        """Radicands of the generators, in adjunction order."""
        return tuple(ConstructibleNumber(self, r) for r in self._radicands)

    def enclosure(self, k: int) -> Interval:
        """Current rational enclosure of generator ``k``."""
        with self._lock:
            _, lo, hi = self._generator_interval(k, 32)
            return Interval(lo, hi)

    def rational(self, value: Rational) -> "ConstructibleNumber":
        return ConstructibleNumber(self, (Fraction(value),))

    def zero(self) -> "ConstructibleNumber":
        return self.rational(0)

    def one(self) -> "ConstructibleNumber":
        return self.rational(1)

    def generator(self, k: int) -> "ConstructibleNumber":
        """The element ``g_k`` itself."""
        if not 0 <= k < self.depth:
            raise IndexError(f"generator {k} does not exist")
        v = [_ZERO] * (1 << (k + 1))
        v[1 << k] = _ONE
        return ConstructibleNumber(self, tuple(v))

    # -- arithmetic kernels on lifted vectors ---------------------------

    def _mul(self, a: Coeffs, b: Coeffs, d: int) -> Coeffs:
        if d == 0:
            return (a[0] * b[0],)
        h = 1 << (d - 1)
        a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
        a1z, b1z = _is_zero(a1), _is_zero(b1)
        if a1z and b1z:
            return self._mul(a0, b0, d - 1) + _zeros(h)
        if a1z:
            return self._mul(a0, b0, d - 1) + self._mul(a0, b1, d - 1)
        if b1z:
            return self._mul(a0, b0, d - 1) + self._mul(a1, b0, d - 1)
        # g**2 = radicand folds the a1*b1 term back into the lower half
        r = self._radicands[d - 1]
        lo = _add(self._mul(a0, b0, d - 1),
                  self._mul(self._mul(a1, b1, d - 1), r, d - 1))
        hi = _add(self._mul(a0, b1, d - 1), self._mul(a1, b0, d - 1))
        return lo + hi

    def _inv(self, a: Coeffs, d: int) -> Coeffs:
        if d == 0:
            if a[0] == 0:
                raise ZeroDivisionError("division by exact zero")
            return (1 / a[0],)
        h = 1 << (d - 1)
        a0, a1 = a[:h], a[h:]
        if _is_zero(a1):
            return self._inv(a0, d - 1) + _zeros(h)
        r = self._radicands[d - 1]
        norm = _sub(self._mul(a0, a0, d - 1),
                    self._mul(self._mul(a1, a1, d - 1), r, d - 1))
        if _is_zero(norm):
            raise RuntimeError("vanishing norm: generator radicand is a square")
        ninv = self._inv(norm, d - 1)
        return self._mul(a0, ninv, d - 1) + _neg(self._mul(a1, ninv, d - 1))

    # -- interval evaluation ---------------------------------------------

    def _generator_interval(self, k: int, bits: int) -> tuple[int, Fraction, Fraction]:
        cached = self._enclosures[k]
        if cached[0] >= bits:
            return cached
        rlo, rhi = self._eval_interval(self._radicands[k], k, bits + 4)
        scale = 1 << bits
        lo_num = (rlo.numerator << (2 * bits)) // rlo.denominator
        hi_num = -((-rhi.numerator << (2 * bits)) // rhi.denominator)
        lo = Fraction(math.isqrt(max(lo_num, 0)), scale)
        hi = Fraction(math.isqrt(hi_num) + 1, scale)
        # monotone refinement: never loosen a stored bracket
        lo, hi = max(lo, cached[1]), min(hi, cached[2])
        entry = (bits, lo, hi)
        self._enclosures[k] = entry
        return entry

    def _eval_interval(self, v: Coeffs, d: int, bits: int) -> tuple[Fraction, Fraction]:
        if d == 0:
            return v[0], v[0]
        h = 1 << (d - 1)
        v0, v1 = v[:h], v[h:]
        lo0, hi0 = self._eval_interval(v0, d - 1, bits)
        if _is_zero(v1):
            return lo0, hi0
        lo1, hi1 = self._eval_interval(v1, d - 1, bits)
        _, glo, ghi = self._generator_interval(d - 1, bits + 4)
        plo, phi = _imul((lo1, hi1), (glo, ghi), bits + 8)
        return _floor_dyadic(lo0 + plo, bits + 8), _ceil_dyadic(hi0 + phi, bits + 8)

    def _interval(self, v: Coeffs, max_width: Optional[Fraction] = None,
                  exclude_zero: bool = False) -> tuple[Fraction, Fraction]:
        d = _depth_of(v)
        if d == 0:
            return v[0], v[0]
        bits = 32
        with self._lock:
            while True:
                lo, hi = self._eval_interval(v, d, bits)
                if exclude_zero and (lo > 0 or hi < 0):
                    return lo, hi
                if max_width is not None and hi - lo <= max_width:
                    return lo, hi
                if bits >= self.refinement_cap:
                    raise RefinementLimitError(
                        f"interval refinement exceeded {self.refinement_cap} bits")
                bits = min(2 * bits, self.refinement_cap)

    def _sign(self, v: Coeffs) -> int:
        if _is_zero(v):
            return 0
        v = _trim(v)
        if len(v) == 1:
            return 1 if v[0] > 0 else -1
        lo, _ = self._interval(v, exclude_zero=True)
        return 1 if lo > 0 else -1

    # -- square roots ----------------------------------------------------

    def _sqrt_in(self, x: Coeffs, d: int) -> Optional[Coeffs]:
        """Some square root of ``x`` inside ``K_d``, or None if x is not a square there."""
        key = (x, d)
        if key in self._sqrt_memo:
            return self._sqrt_memo[key]
        result = self._sqrt_search(x, d)
        self._sqrt_memo[key] = result
        return result

    def _sqrt_search(self, x: Coeffs, d: int) -> Optional[Coeffs]:
        if d == 0:
            root = _rational_sqrt(x[0])
            return None if root is None else (root,)
        if _is_zero(x):
            return x
        if self._sign(x) < 0:
            return None
        h = 1 << (d - 1)
        a, b = x[:h], x[h:]
        r = self._radicands[d - 1]
        if _is_zero(b):
            # x in K_{d-1}: its root is either in K_{d-1} or a K_{d-1} multiple of g
            root = self._sqrt_in(a, d - 1)
            if root is not None:
                return root + _zeros(h)
            q = self._sqrt_in(self._mul(a, self._inv(r, d - 1), d - 1), d - 1)
            if q is not None:
                return _zeros(h) + q
            return None
        # (p + q g)^2 = a + b g  =>  a^2 - b^2 r = (p^2 - q^2 r)^2 and 2pq = b
        norm = _sub(self._mul(a, a, d - 1),
                    self._mul(self._mul(b, b, d - 1), r, d - 1))
        n = self._sqrt_in(norm, d - 1)
        if n is None:
            return None
        half = Fraction(1, 2)
        for cand in (n, _neg(n)):
            psq = _scale(_add(a, cand), half)
            if _is_zero(psq) or self._sign(psq) < 0:
                continue
            p = self._sqrt_in(psq, d - 1)
            if p is None:
                continue
            q = self._mul(b, self._inv(_scale(p, Fraction(2)), d - 1), d - 1)
            root = p + q
            if self._mul(root, root, d) == x:
                return root
        return None

    def _extend(self, radicand: Coeffs) -> int:
        """Adjoin sqrt(radicand); radicand must be a positive non-square at current depth."""
        k = self.depth
        self._radicands.append(_lift(_trim(radicand), k))
        rlo, rhi = self._eval_interval(self._radicands[k], k, 8) if k else (radicand[0], radicand[0])
        # seed bracket [0, 1 + upper bound of radicand]
        self._enclosures.append((0, _ZERO, _ceil_dyadic(rhi, 8) + 1))
        return k

    def _sqrt(self, x: Coeffs) -> Coeffs:
        with self._lock:
            d = self.depth
            x = _lift(x, d)
            s = self._sign(x)
            if s < 0:
                raise NegativeRadicandError("square root of a negative number")
            if s == 0:
                return (_ZERO,)
            root = self._sqrt_in(x, d)
            if root is not None:
                return _neg(root) if self._sign(root) < 0 else root
            # canonicalise the radicand: strip the square part of its rational content
            nz = [c for c in x if c]
            num = math.gcd(*(c.numerator for c in nz))
            den = math.lcm(*(c.denominator for c in nz))
            content = Fraction(num, den)
            m, f = _square_split(content.numerator * content.denominator)
            radicand = _scale(x, f / content)
            k = self._extend(radicand)
            v = [_ZERO] * (1 << (k + 1))
            v[1 << k] = Fraction(m, content.denominator)
            return tuple(v)

    # -- printing ----------------------------------------------------------

    def generator_str(self, k: int) -> str:
        r = _trim(self._radicands[k])
        if len(r) == 1 and r[0].denominator == 1:
            return f"√{r[0].numerator}"
        return f"√({self.format_coeffs(r)})"

    def format_coeffs(self, v: Coeffs) -> str:
        v = _trim(v)
        terms = []
        for mask, c in enumerate(v):
            if not c:
                continue
            basis = "·".join(self.generator_str(i)
                             for i in range(_depth_of(v)) if mask >> i & 1)
            mag = abs(c)
            if not basis:
                body = str(mag)
            else:
                body = basis if mag.numerator == 1 else f"{mag.numerator}{basis}"
                if mag.denominator != 1:
                    body = f"{body}/{mag.denominator}"
            terms.append((c < 0, body))
        if not terms:
            return "0"
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out


class ConstructibleNumber:
    """Immutable element of a :class:`TowerContext`.

    Supports ``+ - * /`` with other members of the same context and with
    ``int``/``Fraction``; comparisons are exact.
    """

    __slots__ = ("_ctx", "_coeffs")

    def __init__(self, context: TowerContext, coefficients: Iterable[Rational]):
        coeffs = tuple(Fraction(c) for c in coefficients)
        n = len(coeffs)
        if n == 0 or n & (n - 1):
            raise ValueError("coefficient vector length must be a power of two")
        if _depth_of(coeffs) > context.depth:
            raise ValueError("coefficients reference generators outside the tower")
        self._ctx = context
        self._coeffs = _trim(coeffs)

    @property
    def context(self) -> TowerContext:
        return self._ctx

    @property
    def context_id(self) -> int:
        return self._ctx.context_id

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def tower_depth(self) -> int:
        return _depth_of(self._coeffs)

    def lifted(self, depth: int) -> tuple[Fraction, ...]:
        return _lift(self._coeffs, depth)

    def is_rational(self) -> bool:
        return len(self._coeffs) == 1

    def _coerce(self, other) -> Optional["ConstructibleNumber"]:
        if isinstance(other, ConstructibleNumber):
            if other._ctx is not self._ctx:
                raise ContextMismatchError(
                    f"context {other.context_id} does not match {self.context_id}")
            return other
        if isinstance(other, (int, Fraction)):
            return ConstructibleNumber(self._ctx, (other,))
        return None

    def _pair(self, other) -> tuple[Coeffs, Coeffs, int]:
        d = max(self.tower_depth, other.tower_depth)
        return self.lifted(d), other.lifted(d), d

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, _ = self._pair(other)
        return ConstructibleNumber(self._ctx, _add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, _ = self._pair(other)
        return ConstructibleNumber(self._ctx, _sub(a, b))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return ConstructibleNumber(self._ctx, _neg(self._coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, d = self._pair(other)
        with self._ctx._lock:
            return ConstructibleNumber(self._ctx, self._ctx._mul(a, b, d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b, d = self._pair(other)
        if _is_zero(b):
            raise ZeroDivisionError("division by exact zero")
        with self._ctx._lock:
            return ConstructibleNumber(self._ctx, self._ctx._mul(a, self._ctx._inv(b, d), d))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / self ** -n
        result, base = self._ctx.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        return self._ctx._sign(self._coeffs)

    def sqrt(self) -> "ConstructibleNumber":
        return ConstructibleNumber(self._ctx, self._ctx._sqrt(self._coeffs))

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ContextMismatchError:
            return False
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if len(self._coeffs) == 1:
            return hash(self._coeffs[0])
        return hash((self.context_id, self._coeffs))

    def _cmp(self, other) -> int:
        other = self._coerce(other)
        if other is None:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return not _is_zero(self._coeffs)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(to_decimal(self, 60).midpoint)

    def to_radical_str(self) -> str:
        return self._ctx.format_coeffs(self._coeffs)

    def __str__(self):
        return self.to_radical_str()

    def __repr__(self):
        return f"ConstructibleNumber({self.to_radical_str()!r}, context={self.context_id})"


# -- functional API --------------------------------------------------------

_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(a: ConstructibleNumber, b: ConstructibleNumber, kind: str) -> ConstructibleNumber:
    if kind not in _ARITH:
        raise ValueError(f"unknown arithmetic kind {kind!r}")
    if isinstance(b, ConstructibleNumber) and b.context is not a.context:
        raise ContextMismatchError(f"context {b.context_id} does not match {a.context_id}")
    return _ARITH[kind](a, b)


def sqrt(x: ConstructibleNumber) -> ConstructibleNumber:
    """Non-negative square root; denests inside the tower when possible,
    otherwise adjoins a new generator."""
    return x.sqrt()


def sign(x: ConstructibleNumber) -> int:
    return x.sign()


def equals(a: ConstructibleNumber, b: ConstructibleNumber) -> bool:
    if isinstance(b, ConstructibleNumber) and b.context is not a.context:
        raise ContextMismatchError(f"context {b.context_id} does not match {a.context_id}")
    return (a - b).sign() == 0


def to_decimal(x: ConstructibleNumber, precision_bits: int) -> Interval:
    """Rational interval containing ``x`` with width at most ``2**-precision_bits``."""
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    lo, hi = x.context._interval(x.coefficients, max_width=Fraction(1, 1 << precision_bits))
    return Interval(lo, hi)


def decimal_digits(precision_bits: int) -> int:
    """Fractional digits printed for a given precision: floor(bits*log10(2)) - 2."""
    return max(int(precision_bits * math.log10(2)) - 2, 0)


def format_rational(q: Fraction, digits: int) -> str:
    """Fixed-point text of ``q``, rounded half-to-even; locale independent."""
    scaled = round(q * 10 ** digits)
    sign_txt = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign_txt}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign_txt}{whole}.{frac:0{digits}d}"


def format_decimal(x: ConstructibleNumber, precision_bits: int) -> str:
    return format_rational(to_decimal(x, precision_bits).midpoint, decimal_digits(precision_bits))
