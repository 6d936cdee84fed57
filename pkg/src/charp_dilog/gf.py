"""Exact arithmetic in F_p (p >= 5) and small extensions F_q = F_p[u]/(m(u)).

Fields are value-like handles; elements carry their field and refuse to mix
with elements of another field.  Extensions are built as towers over an
arbitrary base field, which keeps relative traces and residue-field
constructions straightforward.  Raw element data is an int for a prime field
and a tuple of base-field raws for an extension; :class:`FqElem` is a thin
wrapper over that data.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence


class GFError(Exception):
    """Base class for finite-field arithmetic errors."""


class BadPrime(GFError):
    """The characteristic must be a prime >= 5."""


class CtxMismatch(GFError):
    """Operands belong to different field contexts."""


class DivisionByZero(GFError):
    """Division by, or inversion of, zero."""


class ZeroPolynomial(GFError):
    """Operation undefined for the zero polynomial."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Fq:
    """A finite field: F_p when ``base`` is None, else ``base[u]/(modulus)``.

    ``modulus`` is a monic irreducible polynomial over the base field, given
    as a coefficient sequence (constant term first, leading 1 last).  Fields
    compare by value, so two independently constructed copies of the same
    field are interchangeable.
    """

    __slots__ = ("p", "base", "modulus", "degree", "degree_abs", "order", "_zero", "_one")

    def __init__(self, p: int, modulus: Sequence | None = None, base: "Fq | None" = None):
        if base is None:
            if not is_prime(p) or p < 5:
                raise BadPrime(f"p = {p} is not a prime >= 5")
            self.p = p
            self.base = None
            if modulus is not None:
                raise ValueError("a prime field takes no modulus")
            self.modulus = None
            self.degree = 1
            self.degree_abs = 1
            self.order = p
        else:
            if p != base.p:
                raise CtxMismatch("extension characteristic differs from base")
            if modulus is None:
                raise ValueError("an extension field needs a modulus")
            raw = tuple(base(c).raw for c in modulus)
            if len(raw) < 3:
                raise ValueError("extension modulus must have degree >= 2")
            if raw[-1] != base.one.raw:
                raise ValueError("extension modulus must be monic")
            self.p = p
            self.base = base
            self.modulus = raw
            self.degree = len(raw) - 1
            self.degree_abs = self.degree * base.degree_abs
            self.order = base.order ** self.degree
            if not _modulus_is_irreducible(base, raw):
                raise ValueError("extension modulus is not irreducible")
        self._zero = FqElem(self, self._raw_from_int(0))
        self._one = FqElem(self, self._raw_from_int(1))

    # -- ring-handle protocol used by tpoly.Trunc -------------------------

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> "FqElem":
        return self._zero

    @property
    def one(self) -> "FqElem":
        return self._one

    def from_int(self, n: int) -> "FqElem":
        return FqElem(self, self._raw_from_int(n))

    def is_unit(self, x: "FqElem") -> bool:
        return not x.is_zero

    # -- construction and coercion ----------------------------------------

    def __call__(self, x) -> "FqElem":
        if isinstance(x, FqElem):
            if x.field != self:
                raise CtxMismatch(f"element of {x.field} used in {self}")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if self.base is not None and isinstance(x, (tuple, list)):
            return self.from_coeffs(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def from_coeffs(self, coeffs: Sequence) -> "FqElem":
        """Build an extension element from base-field coefficients (low first)."""
        if self.base is None:
            raise ValueError("prime-field elements are built from ints")
        raws = [self.base(c).raw for c in coeffs]
        if len(raws) > self.degree:
            raise ValueError("too many coefficients")
        raws += [self.base._raw_from_int(0)] * (self.degree - len(raws))
        return FqElem(self, tuple(raws))

    def gen(self) -> "FqElem":
        """The residue class of u in base[u]/(m(u))."""
        if self.base is None:
            raise ValueError("a prime field has no extension generator")
        return self.from_coeffs([0, 1])

    def embed(self, x: "FqElem") -> "FqElem":
        """Embed a base-field element (or an element of self) into self."""
        if x.field == self:
            return x
        if self.base is None or x.field != self.base:
            raise CtxMismatch(f"cannot embed element of {x.field} into {self}")
        return self.from_coeffs([x])

    def elements(self) -> Iterator["FqElem"]:
        """Iterate over every element of the field (small fields only)."""
        if self.base is None:
            for n in range(self.p):
                yield FqElem(self, n)
        else:
            for combo in itertools.product([e.raw for e in self.base.elements()],
                                           repeat=self.degree):
                yield FqElem(self, combo)

    def random_element(self, rng) -> "FqElem":
        if self.base is None:
            return FqElem(self, rng.randrange(self.p))
        return FqElem(self, tuple(self.base.random_element(rng).raw
                                  for _ in range(self.degree)))

    # -- raw kernel --------------------------------------------------------

    def _raw_from_int(self, n: int):
        if self.base is None:
            return n % self.p
        zero = self.base._raw_from_int(0)
        return (self.base._raw_from_int(n),) + (zero,) * (self.degree - 1)

    def _raw_add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        badd = self.base._raw_add
        return tuple(badd(x, y) for x, y in zip(a, b))

    def _raw_sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        bsub = self.base._raw_sub
        return tuple(bsub(x, y) for x, y in zip(a, b))

    def _raw_neg(self, a):
        if self.base is None:
            return (-a) % self.p
        bneg = self.base._raw_neg
        return tuple(bneg(x) for x in a)

    def _raw_mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        base = self.base
        d = self.degree
        zero = base._raw_from_int(0)
        acc = [zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                acc[i + j] = base._raw_add(acc[i + j], base._raw_mul(x, y))
        # reduce by the monic modulus
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            top = acc[k]
            if top == zero:
                continue
            acc[k] = zero
            for j in range(d):
                acc[k - d + j] = base._raw_sub(acc[k - d + j], base._raw_mul(top, mod[j]))
        return tuple(acc[:d])

    def _raw_is_zero(self, a) -> bool:
        if self.base is None:
            return a == 0
        return all(self.base._raw_is_zero(x) for x in a)

    def _raw_inv(self, a):
        if self._raw_is_zero(a):
            raise DivisionByZero(f"inverting zero in {self}")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        # extended Euclid for a against the modulus, over the base field
        base = self.base
        zero, one = base._raw_from_int(0), base._raw_from_int(1)
        r0, r1 = list(self.modulus), _rtrim(base, list(a))
        s0, s1 = [zero], [one]
        while len(r1) > 1:
            q, r = _rdivmod(base, r0, r1)
            r0, r1 = r1, _rtrim(base, r)
            s0, s1 = s1, _rtrim(base, _rsub(base, s0, _rmul(base, q, s1)))
        lead_inv = base._raw_inv(r1[0])
        inv = [base._raw_mul(lead_inv, c) for c in s1]
        inv += [zero] * (self.degree - len(inv))
        return tuple(inv[: self.degree])

    def _raw_pow(self, a, n: int):
        if n < 0:
            return self._raw_pow(self._raw_inv(a), -n)
        if self.base is None:
            return pow(a, n, self.p)
        result = self._raw_from_int(1)
        while n:
            if n & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            n >>= 1
        return result

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Fq):
            return NotImplemented
        return (self.p == other.p and self.modulus == other.modulus
                and self.base == other.base)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus, None if self.base is None else hash(self.base)))

    def __repr__(self) -> str:
        if self.base is None:
            return f"F_{self.p}"
        return f"{self.base}[u]/{_modulus_str(self)}"


def _modulus_str(field: Fq) -> str:
    terms = []
    for i, c in enumerate(field.modulus):
        if field.base._raw_is_zero(c):
            continue
        terms.append(f"{c}*u^{i}" if i else f"{c}")
    return "(" + "+".join(terms) + ")"


# raw polynomial helpers over a field (dense low-first lists of raws),
# used by the extension-field kernel before Poly exists

def _rtrim(field: Fq, c: list) -> list:
    while c and field._raw_is_zero(c[-1]):
        c.pop()
    return c or [field._raw_from_int(0)]


def _rsub(field: Fq, a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = field._raw_from_int(0)
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    return [field._raw_sub(x, y) for x, y in zip(a, b)]


def _rmul_packed(a: list, b: list, p: int) -> list:
    """Prime-field polynomial product via integer packing (64-bit limbs).

    Exact as long as convolution sums stay below 2^63, which holds with huge
    margin for p <= 11 and the degree ranges this package meets.
    """
    abuf = b"".join(c.to_bytes(8, "little") for c in a)
    bbuf = b"".join(c.to_bytes(8, "little") for c in b)
    prod = int.from_bytes(abuf, "little") * int.from_bytes(bbuf, "little")
    n = len(a) + len(b) - 1
    raw = prod.to_bytes(8 * n + 8, "little")
    return [int.from_bytes(raw[8 * i: 8 * i + 8], "little") % p for i in range(n)]


def _rmul(field: Fq, a: list, b: list) -> list:
    if field.base is None and len(a) + len(b) > 16:
        return _rmul_packed(a, b, field.p)
    zero = field._raw_from_int(0)
    acc = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if field._raw_is_zero(x):
            continue
        for j, y in enumerate(b):
            acc[i + j] = field._raw_add(acc[i + j], field._raw_mul(x, y))
    return acc


def _rdivmod(field: Fq, a: list, b: list) -> tuple[list, list]:
    zero = field._raw_from_int(0)
    b = list(b)
    while len(b) > 1 and field._raw_is_zero(b[-1]):
        b.pop()
    lead_inv = field._raw_inv(b[-1])
    rem = list(a)
    if len(rem) < len(b):
        return [zero], rem
    quot = [zero] * (len(rem) - len(b) + 1)
    for k in range(len(rem) - len(b), -1, -1):
        c = field._raw_mul(rem[k + len(b) - 1], lead_inv)
        if field._raw_is_zero(c):
            continue
        quot[k] = c
        for j, y in enumerate(b):
            rem[k + j] = field._raw_sub(rem[k + j], field._raw_mul(c, y))
    return quot, rem


def _modulus_is_irreducible(base: Fq, modulus: tuple) -> bool:
    poly = Poly(base, [FqElem(base, c) for c in modulus])
    return is_irreducible(poly)


class FqElem:
    """An element of an :class:`Fq`, carrying its field by value."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Fq, raw):
        self.field = field
        self.raw = raw

    @property
    def is_zero(self) -> bool:
        return self.field._raw_is_zero(self.raw)

    def coeffs(self) -> tuple["FqElem", ...]:
        """Coefficients over the base field (extension elements only)."""
        if self.field.base is None:
            raise ValueError("a prime-field element has no base coefficients")
        return tuple(FqElem(self.field.base, c) for c in self.raw)

    def lift_int(self) -> int:
        """The canonical integer representative (prime-field elements only)."""
        if self.field.base is not None:
            raise ValueError("only prime-field elements lift to ints")
        return self.raw

    def _coerce(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise CtxMismatch(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field._raw_add(self.raw, other.raw))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field._raw_sub(self.raw, other.raw))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field._raw_sub(other.raw, self.raw))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FqElem(self.field, self.field._raw_mul(self.raw, other.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return FqElem(self.field, self.field._raw_neg(self.raw))

    def __pow__(self, n: int):
        return FqElem(self.field, self.field._raw_pow(self.raw, n))

    def inverse(self) -> "FqElem":
        return FqElem(self.field, self.field._raw_inv(self.raw))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.raw == other.raw

    def __hash__(self) -> int:
        return hash((self.field, self.raw))

    def __repr__(self) -> str:
        return str(self.raw)


def frobenius(x: FqElem, power: int = 1) -> FqElem:
    """The absolute Frobenius x -> x^(p^power)."""
    return x ** (x.field.p ** power)


def trace_to_prime(x: FqElem) -> FqElem:
    """Absolute trace to F_p, as the sum of the Frobenius orbit."""
    field = x.field
    if field.base is None:
        return x
    acc = x
    y = x
    for _ in range(field.degree_abs - 1):
        y = frobenius(y)
        acc = acc + y
    # the result is Frobenius-fixed, hence lies in the prime subfield
    prime = field
    while prime.base is not None:
        prime = prime.base
    raw = acc.raw
    f = field
    while f.base is not None:
        assert all(f.base._raw_is_zero(c) for c in raw[1:])
        raw = raw[0]
        f = f.base
    return FqElem(prime, raw)


def trace_to_base(x: FqElem) -> FqElem:
    """Relative trace of an extension element down to its base field."""
    field = x.field
    if field.base is None:
        raise ValueError("a prime-field element has no base field")
    q = field.base.order
    acc = x
    y = x
    for _ in range(field.degree - 1):
        y = y ** q
        acc = acc + y
    assert all(field.base._raw_is_zero(c) for c in acc.raw[1:])
    return FqElem(field.base, acc.raw[0])


class Poly:
    """A dense univariate polynomial over an :class:`Fq` (low coefficients first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs=()):
        raws = []
        for c in coeffs:
            raws.append(field(c).raw if not isinstance(c, FqElem) else field(c).raw)
        while raws and field._raw_is_zero(raws[-1]):
            raws.pop()
        self.field = field
        self.coeffs = tuple(raws)

    @classmethod
    def _from_raw(cls, field: Fq, raws: list) -> "Poly":
        self = object.__new__(cls)
        while raws and field._raw_is_zero(raws[-1]):
            raws.pop()
        self.field = field
        self.coeffs = tuple(raws)
        return self

    @classmethod
    def x(cls, field: Fq) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, c: FqElem) -> "Poly":
        return cls(c.field, [c])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one.raw

    def coeff(self, i: int) -> FqElem:
        if 0 <= i < len(self.coeffs):
            return FqElem(self.field, self.coeffs[i])
        return self.field.zero

    def leading(self) -> FqElem:
        if self.is_zero:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return FqElem(self.field, self.coeffs[-1])

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one.raw

    def _check(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise CtxMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, FqElem)):
            return Poly(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        zero = f._raw_from_int(0)
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return Poly._from_raw(f, [f._raw_add(x, y) for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        f = self.field
        return Poly._from_raw(f, [f._raw_neg(c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FqElem)):
            c = self.field(other) if isinstance(other, int) else self.field(other)
            f = self.field
            return Poly._from_raw(f, [f._raw_mul(c.raw, x) for x in self.coeffs])
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if self.is_zero or other.is_zero:
            return Poly(f)
        return Poly._from_raw(f, _rmul(f, list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = self._check(other)
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        f = self.field
        q, r = _rdivmod(f, list(self.coeffs) or [f._raw_from_int(0)], list(other.coeffs))
        return Poly._from_raw(f, q), Poly._from_raw(f, r)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FqElem)):
            other = Poly(self.field, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def monic(self) -> tuple["Poly", FqElem]:
        """Return (self / lead, lead)."""
        lead = self.leading()
        if lead == self.field.one:
            return self, lead
        inv = lead.inverse()
        f = self.field
        return Poly._from_raw(f, [f._raw_mul(inv.raw, c) for c in self.coeffs]), lead

    def derivative(self) -> "Poly":
        f = self.field
        if len(self.coeffs) <= 1:
            return Poly(f)
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f._raw_mul(f._raw_from_int(i), self.coeffs[i]))
        return Poly._from_raw(f, out)

    def evaluate(self, x: FqElem) -> FqElem:
        f = x.field
        acc = f._raw_from_int(0)
        if self.field != f:
            if f.base != self.field:
                raise CtxMismatch("evaluation point in an unrelated field")
            coeffs = [f.embed(FqElem(self.field, c)).raw for c in self.coeffs]
        else:
            coeffs = list(self.coeffs)
        for c in reversed(coeffs):
            acc = f._raw_add(f._raw_mul(acc, x.raw), c)
        return FqElem(f, acc)

    def shifted(self, theta: FqElem) -> "Poly":
        """The composition self(x + theta), over theta's field."""
        f = theta.field
        acc = Poly(f)
        lin = Poly(f, [theta, 1])
        for c in reversed(list(self.coeffs)):
            cc = FqElem(self.field, c)
            if f != self.field:
                cc = f.embed(cc)
            acc = acc * lin + cc
        return acc

    def reversed(self) -> "Poly":
        """Coefficients reversed: x^deg * self(1/x)."""
        return Poly._from_raw(self.field, list(reversed(self.coeffs)))

    def embedded(self, field: Fq) -> "Poly":
        """The same polynomial with coefficients pushed into an extension."""
        if field == self.field:
            return self
        return Poly(field, [field.embed(FqElem(self.field, c)) for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._check(other)
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()[0]

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, s, t) with g = gcd monic and s*self + t*other = g."""
        f = self.field
        a, b = self, self._check(other)
        s0, s1 = Poly(f, [1]), Poly(f)
        t0, t1 = Poly(f), Poly(f, [1])
        while not b.is_zero:
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero:
            return a, s0, t0
        monic, lead = a.monic()
        inv = lead.inverse()
        return monic, s0 * inv, t0 * inv

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.field._raw_is_zero(c):
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return " + ".join(terms)


def poly_powmod(base: Poly, n: int, mod: Poly) -> Poly:
    result = Poly(base.field, [1])
    base = base % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over F_q."""
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    q = f.field.order
    x = Poly.x(f.field)
    xq = poly_powmod(x, q ** d, f)
    if xq != x % f:
        return False
    for r in _prime_divisors(d):
        h = poly_powmod(x, q ** (d // r), f) - x
        if f.gcd(h).degree != 0:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pth_root_poly(f: Poly) -> Poly:
    """The p-th root of a polynomial with zero derivative (so f = g(x^p))."""
    field = f.field
    p = field.p
    root_pow = field.order // p  # c -> c^(q/p) is the inverse of Frobenius
    out = []
    for i in range(0, f.degree + 1, p):
        out.append(f.coeff(i) ** root_pow)
    return Poly(field, out)


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a squarefree monic f into products of irreducibles of one degree."""
    field = f.field
    q = field.order
    out = []
    x = Poly.x(field)
    h = x
    d = 0
    while f.degree > 0 and f.degree >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles (q odd)."""
    if f.degree == d:
        return [f]
    field = f.field
    exponent = (field.order ** d - 1) // 2
    while True:
        a = Poly(field, [field.random_element(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree < f.degree:
            break
        b = poly_powmod(a, exponent, f) - 1
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor_squarefree_irreducibles(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor f into monic irreducibles with multiplicities.

    The product of the factors times f's leading coefficient equals f.  The
    equal-degree stage draws its splitting polynomials from a generator
    seeded by ``seed``, so runs are reproducible.
    """
    import random as _random

    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = _random.Random(("edf", seed, f.field.order, f.coeffs).__repr__())
    factors: dict[Poly, int] = {}
    _factor_monic(f.monic()[0], factors, rng)
    def key(g: Poly):
        return (g.degree, [_raw_key(g.field, c) for c in g.coeffs])
    return sorted(factors.items(), key=lambda it: key(it[0]))


def _raw_key(field: Fq, raw):
    if field.base is None:
        return raw
    return tuple(_raw_key(field.base, c) for c in raw)


def _factor_monic(f: Poly, out: dict[Poly, int], rng, mult: int = 1) -> None:
    if f.degree <= 0:
        return
    fp = f.derivative()
    if fp.is_zero:
        _factor_monic(_pth_root_poly(f), out, rng, mult * f.field.p)
        return
    squarefree = f // f.gcd(fp)
    rem = f
    for sf, d in _distinct_degree(squarefree):
        for g in _equal_degree(sf, d, rng):
            m = 0
            while True:
                q, r = divmod(rem, g)
                if not r.is_zero:
                    break
                rem = q
                m += 1
            out[g] = out.get(g, 0) + m * mult
    # what remains collects the factors with multiplicity divisible by p
    if rem.degree > 0:
        _factor_monic(_pth_root_poly(rem), out, rng, mult * f.field.p)


def roots_in_field(f: Poly) -> list[FqElem]:
    """All roots of f lying in its coefficient field (without multiplicity)."""
    out = []
    for g, _ in factor_squarefree_irreducibles(f):
        if g.degree == 1:
            out.append(-g.coeff(0))
    return out
