"""Truncated polynomial rings R[t]/(t^m), 2 <= m <= p.

Provides exact arithmetic over an abstract coefficient ring, the truncated
exponential and branch logarithm with their coefficient functionals, the
canonical unit decomposition, and Newton/Hensel lifting of simple roots.

A coefficient ring is any handle exposing ``characteristic``, ``zero``,
``one``, ``from_int`` and ``is_unit`` whose elements support +, -, *, and
``inverse()``; :class:`charp_dilog.gf.Fq` and
:class:`charp_dilog.localfield.RatFnRing` both qualify.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence


class TruncError(Exception):
    """Base class for truncated-ring errors."""


class ModulusMismatch(TruncError):
    """Operands live in truncated rings with different data."""


class NonUnitConstantTerm(TruncError):
    """The constant term must be a unit of the coefficient ring."""


class NonzeroConstantTerm(TruncError):
    """The argument must lie in the ideal (t)."""


class IndexOutOfRange(TruncError):
    """Coefficient index outside 1 <= i < m."""


class HenselFailure(TruncError):
    """No simple root to lift (derivative not a unit at the start point)."""


_INV_TABLES: dict[int, list[int]] = {}


def _inv_table(p: int) -> list[int]:
    """Inverses of 1..p-1 modulo p (index 0 unused)."""
    table = _INV_TABLES.get(p)
    if table is None:
        table = [0] * p
        for i in range(1, p):
            table[i] = pow(i, p - 2, p)
        _INV_TABLES[p] = table
    return table


_INV_FACTORIALS: dict[int, list[int]] = {}


def inv_factorials(p: int) -> list[int]:
    """Inverses of n! modulo p for 0 <= n < p."""
    table = _INV_FACTORIALS.get(p)
    if table is None:
        fact = [1] * p
        for n in range(1, p):
            fact[n] = fact[n - 1] * n % p
        table = [pow(f, p - 2, p) for f in fact]
        _INV_FACTORIALS[p] = table
    return table


class Trunc:
    """An element of R[t]/(t^m), held as exactly m coefficients (low first)."""

    __slots__ = ("ring", "m", "coeffs")

    def __init__(self, ring, m: int, coeffs: Sequence):
        if not 2 <= m <= ring.characteristic:
            raise ModulusMismatch(f"modulus m = {m} outside 2 <= m <= p")
        coeffs = [ring.from_int(c) if isinstance(c, int) else c for c in coeffs]
        if len(coeffs) > m:
            raise ValueError("more coefficients than the modulus allows")
        coeffs += [ring.zero] * (m - len(coeffs))
        self.ring = ring
        self.m = m
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, ring, m: int, c) -> "Trunc":
        return cls(ring, m, [c])

    @classmethod
    def zero(cls, ring, m: int) -> "Trunc":
        return cls(ring, m, [])

    @classmethod
    def one(cls, ring, m: int) -> "Trunc":
        return cls(ring, m, [ring.one])

    @classmethod
    def t(cls, ring, m: int) -> "Trunc":
        return cls(ring, m, [ring.zero, ring.one])

    @property
    def c0(self):
        return self.coeffs[0]

    @property
    def is_zero(self) -> bool:
        zero = self.ring.zero
        return all(c == zero for c in self.coeffs)

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coeffs[0])

    def _check(self, other) -> "Trunc":
        if isinstance(other, Trunc):
            if other.ring != self.ring or other.m != self.m:
                raise ModulusMismatch("mixing truncated rings")
            return other
        if isinstance(other, int):
            return Trunc.constant(self.ring, self.m, self.ring.from_int(other))
        return Trunc.constant(self.ring, self.m, other)

    def __add__(self, other):
        other = self._check(other)
        return Trunc(self.ring, self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return Trunc(self.ring, self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return Trunc(self.ring, self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._check(other)
        zero = self.ring.zero
        out = [zero] * self.m
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j in range(self.m - i):
                b = other.coeffs[j]
                if b == zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return Trunc(self.ring, self.m, out)

    __rmul__ = __mul__

    def scaled(self, c) -> "Trunc":
        """Multiply every coefficient by a ring scalar."""
        return Trunc(self.ring, self.m, [a * c for a in self.coeffs])

    def inverse(self) -> "Trunc":
        if not self.is_unit:
            raise NonUnitConstantTerm("inverting a non-unit of R[t]/(t^m)")
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for n in range(1, self.m):
            acc = self.ring.zero
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-inv0 * acc)
        return Trunc(self.ring, self.m, out)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "Trunc":
        if n < 0:
            return self.inverse() ** (-n)
        result = Trunc.one(self.ring, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Trunc):
            return NotImplemented
        return self.ring == other.ring and self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def reduce_to(self, m2: int) -> "Trunc":
        """Truncate to R[t]/(t^m2) for m2 <= m (the a|_{t^m2} operation)."""
        if m2 > self.m:
            raise ModulusMismatch("reduce_to cannot raise the modulus")
        return Trunc(self.ring, m2, self.coeffs[:m2])

    def extended(self, m2: int, tail: Sequence = ()) -> "Trunc":
        """Lift into R[t]/(t^m2), m2 >= m, appending the given tail coefficients."""
        if m2 < self.m:
            raise ModulusMismatch("extended cannot lower the modulus")
        tail = list(tail)
        if len(tail) > m2 - self.m:
            raise ValueError("lift tail too long")
        return Trunc(self.ring, m2, list(self.coeffs) + tail)

    def shifted(self, j: int) -> "Trunc":
        """Multiply by t^j."""
        if j == 0:
            return self
        return Trunc(self.ring, self.m, [self.ring.zero] * j + list(self.coeffs[: self.m - j]))

    def congruent(self, other: "Trunc", m2: int) -> bool:
        """Whether self and other agree modulo t^m2."""
        return self.coeffs[:m2] == other.coeffs[:m2]

    def map_coeffs(self, fn: Callable, ring=None) -> "Trunc":
        return Trunc(ring if ring is not None else self.ring, self.m,
                     [fn(c) for c in self.coeffs])

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            parts.append(f"({c})" + ("" if i == 0 else f"*t^{i}" if i > 1 else "*t"))
        return " + ".join(parts) if parts else "0"


def trunc_exp(alpha: Trunc) -> Trunc:
    """The truncated exponential sum_{n<p} alpha^n / n! for alpha in (t)."""
    ring = alpha.ring
    if alpha.coeffs[0] != ring.zero:
        raise NonzeroConstantTerm("exponent must have zero constant term")
    inv_fact = inv_factorials(ring.characteristic)
    result = Trunc.one(ring, alpha.m)
    power = Trunc.one(ring, alpha.m)
    for n in range(1, alpha.m):
        power = power * alpha
        result = result + power.scaled(ring.from_int(inv_fact[n]))
    return result


def log_circ(u: Trunc) -> Trunc:
    """The branch logarithm log(u / u(0)), defined for units when m <= p."""
    ring = u.ring
    if not u.is_unit:
        raise NonUnitConstantTerm("log of a non-unit")
    inv = _inv_table(ring.characteristic)
    z = u.scaled(u.coeffs[0].inverse()) - Trunc.one(ring, u.m)
    result = Trunc.zero(ring, u.m)
    power = Trunc.one(ring, u.m)
    for n in range(1, u.m):
        power = power * z
        coeff = ring.from_int(inv[n] if n % 2 == 1 else -inv[n] % ring.characteristic)
        result = result + power.scaled(coeff)
    return result


def ell_i(u: Trunc, i: int):
    """The i-th t-coefficient of log_circ(u), for 1 <= i < m."""
    if not 1 <= i < u.m:
        raise IndexOutOfRange(f"ell_{i} undefined on R[t]/(t^{u.m})")
    return log_circ(u).coeffs[i]


def ell_all(u: Trunc) -> tuple:
    """All coefficients (ell_1(u), ..., ell_{m-1}(u)) in one pass."""
    return log_circ(u).coeffs[1:]


@dataclass(frozen=True)
class UnitDecomp:
    """A unit written as a0 * e(exps[0] t) * e(exps[1] t^2) * ...  exactly."""

    ring: object
    m: int
    a0: object
    exps: tuple


def unit_decompose(u: Trunc) -> UnitDecomp:
    if not u.is_unit:
        raise NonUnitConstantTerm("decomposing a non-unit")
    return UnitDecomp(u.ring, u.m, u.coeffs[0], ell_all(u))


def unit_recompose(d: UnitDecomp) -> Trunc:
    ring = d.ring
    acc = Trunc.constant(ring, d.m, d.a0)
    for i, alpha in enumerate(d.exps, start=1):
        if alpha == ring.zero:
            continue
        arg = Trunc(ring, d.m, [ring.zero] * i + [alpha])
        acc = acc * trunc_exp(arg)
    return acc


# -- generic dense polynomials over an arbitrary ring (lists, low first) --

def rp_trim(coeffs: list, zero) -> list:
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return coeffs


def rp_add(a: Sequence, b: Sequence, zero) -> list:
    n = max(len(a), len(b))
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def rp_mul(a: Sequence, b: Sequence, zero) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def rp_eval(coeffs: Sequence, x, zero):
    acc = zero
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def rp_derivative(coeffs: Sequence, ring) -> list:
    return [ring.from_int(i) * c for i, c in enumerate(coeffs)][1:]


def rp_divmod_monic(a: Sequence, b: Sequence, zero) -> tuple[list, list]:
    """Divide by a monic polynomial over any commutative ring."""
    rem = list(a)
    db = len(b) - 1
    if len(rem) <= db:
        return [], rem
    quot = [zero] * (len(rem) - db)
    for k in range(len(rem) - db - 1, -1, -1):
        c = rem[k + db]
        quot[k] = c
        for j in range(db + 1):
            rem[k + j] = rem[k + j] - c * b[j]
    return quot, rem[:db]


def newton_root(f: Callable[[Trunc], Trunc], fprime: Callable[[Trunc], Trunc],
                x0: Trunc) -> Trunc:
    """Solve f(x) = 0 in R[t]/(t^m) by Newton iteration from a simple root mod t."""
    x = x0
    d = fprime(x)
    if not d.is_unit:
        raise HenselFailure("derivative is not a unit at the starting point")
    steps = max(1, (x0.m - 1).bit_length() + 1)
    for _ in range(steps):
        x = x - f(x) * fprime(x).inverse()
    if not f(x).is_zero:
        raise HenselFailure("Newton iteration failed to converge")
    return x


def hensel_root_zpoly(coeffs: Sequence[Trunc], x0) -> Trunc:
    """Lift a simple root x0 (mod t) of a polynomial with Trunc coefficients.

    ``coeffs`` are the z-coefficients, each a Trunc over a field ring; ``x0``
    is a field element with P(x0) = 0 mod t.
    """
    ring = coeffs[0].ring
    m = coeffs[0].m
    zero = Trunc.zero(ring, m)
    dcoeffs = [c.scaled(ring.from_int(i)) for i, c in enumerate(coeffs)][1:]
    start = Trunc.constant(ring, m, x0)
    return newton_root(lambda x: rp_eval(coeffs, x, zero),
                       lambda x: rp_eval(dcoeffs, x, zero) if dcoeffs else zero,
                       start)
