"""Formal wedge presentations of unit groups and the functionals on them.

A :class:`WedgeK` is a formal integer combination of k-tuples of units; no
quotient is taken.  Every consumer here is alternating and multilinear, so
distinct presentations of the same exterior-power class evaluate equally,
which is exactly what the test suite checks.

Also home to the goodness decomposition f = u * s_tilde^n at a local point
and the induced residue map from triples of good elements to wedges of units
of the residue ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .gf import Fq, FqElem
from .localfield import RatFn
from .tpoly import ModulusMismatch, Trunc, ell_all


class WedgeError(Exception):
    """Base class for wedge-functional errors."""


class ModulusTooSmall(WedgeError):
    """The functional needs a deeper truncation than the entries carry."""


class NotGood(WedgeError):
    """The element admits no u * s_tilde^n decomposition at the point."""


@dataclass(frozen=True)
class WedgeK:
    """Formal sum of integer-weighted k-tuples of group elements."""

    terms: tuple

    @property
    def arity(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0

    def __add__(self, other: "WedgeK") -> "WedgeK":
        return WedgeK(self.terms + other.terms)

    def __sub__(self, other: "WedgeK") -> "WedgeK":
        return self + other.scaled(-1)

    def __neg__(self) -> "WedgeK":
        return self.scaled(-1)

    def scaled(self, c: int) -> "WedgeK":
        if c == 0:
            return WedgeK(())
        return WedgeK(tuple((c * k, entries) for k, entries in self.terms))

    def map_entries(self, fn: Callable) -> "WedgeK":
        return WedgeK(tuple((k, tuple(fn(e) for e in entries)) for k, entries in self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{k}*(" + " ^ ".join(map(repr, entries)) + ")"
                          for k, entries in self.terms)


def wedge(*entries, coeff: int = 1) -> WedgeK:
    """A single weighted wedge term."""
    return WedgeK(((coeff, tuple(entries)),))


def ell(w: WedgeK, ring=None):
    """The functional ell_2 ^ ell_1 on wedges of units of R[t]/(t^m), m >= 3."""
    value = None
    for k, (a, b) in w.terms:
        if a.m < 3:
            raise ModulusTooSmall("ell needs modulus m >= 3")
        r = a.ring
        la, lb = ell_all(a), ell_all(b)
        term = la[1] * lb[0] - lb[1] * la[0]
        term = r.from_int(k) * term
        value = term if value is None else value + term
    if value is None:
        if ring is None:
            raise ValueError("empty wedge needs an explicit ring for its zero")
        return ring.zero
    return value


def ell_p(w: WedgeK, ring=None):
    """The functional (1/2) sum_i i * (ell_{p-i} ^ ell_i) on wedges of units of R_p."""
    value = None
    for k, (a, b) in w.terms:
        r = a.ring
        p = r.characteristic
        if a.m != p:
            raise ModulusMismatch("ell_p needs modulus m = p")
        la, lb = ell_all(a), ell_all(b)
        acc = r.zero
        for i in range(1, p):
            acc = acc + r.from_int(i) * (la[p - i - 1] * lb[i - 1] - lb[p - i - 1] * la[i - 1])
        half = r.from_int((p + 1) // 2)
        term = r.from_int(k) * half * acc
        value = term if value is None else value + term
    if value is None:
        if ring is None:
            raise ValueError("empty wedge needs an explicit ring for its zero")
        return ring.zero
    return value


@dataclass(frozen=True)
class GoodElem:
    """A local decomposition f = u * s_tilde^n with u a unit at the point."""

    n: int
    u: object


def _check_uniformizer(s_tilde: Trunc) -> None:
    zero = s_tilde.ring.field.zero
    if s_tilde.c0.is_zero or s_tilde.c0.ord_at(zero) != 1:
        raise ValueError("reduction of the uniformizer must vanish to order one at s = 0")
    for c in s_tilde.coeffs:
        if not c.is_zero and c.ord_at(zero) < 0:
            raise ValueError("uniformizer has a coefficient with a pole at the point")


def _is_regular_unit(u: Trunc) -> bool:
    """Whether a Trunc over RatFn is a unit of the local ring at s = 0."""
    zero = u.ring.field.zero
    if u.c0.is_zero or u.c0.ord_at(zero) != 0:
        return False
    for c in u.coeffs[1:]:
        if not c.is_zero and c.ord_at(zero) < 0:
            return False
    return True


def goodness_split(f: Trunc, s_tilde: Trunc) -> GoodElem:
    """Split f = u * s_tilde^n at the point s = 0 of the local model.

    Entries are truncations with rational-function coefficients; ``s_tilde``
    is a uniformizer (reduction vanishing to first order at the point).
    Raises :class:`NotGood` when no decomposition with a regular unit exists.
    """
    _check_uniformizer(s_tilde)
    if f.c0.is_zero:
        raise NotGood("not a unit of the localized ring")
    n = f.c0.ord_at(f.ring.field.zero)
    u = f * s_tilde ** (-n)
    if not _is_regular_unit(u):
        raise NotGood(f"no unit decomposition with exponent {n}")
    return GoodElem(n, u)


def goodness_split_zpoly(f: Sequence[Trunc], s_tilde: Sequence[Trunc]) -> GoodElem:
    """Goodness split in the polynomial model: f, s_tilde are polynomials in z
    with truncated-ring coefficients, s_tilde monic with irreducible reduction.

    Returns the exponent and the polynomial unit part; :class:`NotGood` when
    the remaining cofactor is not invertible at the point.
    """
    from .tpoly import rp_divmod_monic

    ring = s_tilde[0].ring
    m = s_tilde[0].m
    zero = Trunc.zero(ring, m)
    f = list(f)
    n = 0
    while True:
        q, r = rp_divmod_monic(f, list(s_tilde), zero)
        if q and all(c.is_zero for c in r):
            f = q
            n += 1
        else:
            break
    from .gf import Poly

    red = Poly(ring, [c.c0 for c in f])
    pt = Poly(ring, [c.c0 for c in s_tilde])
    if (red % pt).is_zero:
        raise NotGood("cofactor vanishes at the point")
    return GoodElem(n, f)


def res_good(goods: Sequence[GoodElem], reduce_fn: Callable) -> WedgeK:
    """The residue of a triple of good elements, as a wedge over the residue ring.

    For f = u s^a, g = v s^b, h = w s^c the value is
    a*(v~ ^ w~) - b*(u~ ^ w~) + c*(u~ ^ v~), where ~ is the reduction at the
    lifted point supplied by ``reduce_fn``; the convention is pinned by the
    projective-line computation in the acceptance suite.
    """
    if len(goods) != 3:
        raise ValueError("res_good takes a triple")
    a, b, c = (g.n for g in goods)
    reduced = [None, None, None]

    def red(i: int):
        if reduced[i] is None:
            reduced[i] = reduce_fn(goods[i].u)
        return reduced[i]

    terms = []
    if a != 0:
        terms.append((a, (red(1), red(2))))
    if b != 0:
        terms.append((-b, (red(0), red(2))))
    if c != 0:
        terms.append((c, (red(0), red(1))))
    return WedgeK(tuple(terms))


# -- local evaluation at a lifted point -------------------------------------

def ratfn_at_trunc(r: RatFn, x: Trunc) -> Trunc:
    """Evaluate a rational function at a truncated-ring point over an F_q ring.

    The point ring may be the coefficient field of ``r`` or a tower extension
    of it; the denominator must be a unit at the point.
    """
    ring: Fq = x.ring
    zero = Trunc.zero(ring, x.m)
    r = r.reduced()

    def poly_at(p) -> Trunc:
        acc = zero
        for i in range(p.degree, -1, -1):
            acc = acc * x + _embed_any(p.coeff(i), ring)
        return acc

    num = poly_at(r.num)
    den = poly_at(r.den)
    return num * den.inverse()


def _embed_any(c: FqElem, target: Fq) -> FqElem:
    if c.field == target:
        return c
    if target.base is not None:
        return target.embed(_embed_any(c, target.base))
    raise ValueError(f"cannot embed element of {c.field} into {target}")


def local_point(s_tilde: Trunc) -> Trunc:
    """The Hensel root sigma(t) of the uniformizer: s_tilde(sigma(t), t) = 0.

    The root lies in (t) of F_q[t]/(t^m); it is the coordinate of the lifted
    point defined by the uniformizer, so reductions at the point are
    evaluations at this root.
    """
    from .tpoly import newton_root

    _check_uniformizer(s_tilde)
    field = s_tilde.ring.field
    m = s_tilde.m

    def F(x: Trunc) -> Trunc:
        acc = Trunc.zero(field, m)
        for j, cj in enumerate(s_tilde.coeffs):
            if cj.is_zero:
                continue
            acc = acc + ratfn_at_trunc(cj, x).shifted(j)
        return acc

    derivs = [c.derivative() for c in s_tilde.coeffs]

    def Fp(x: Trunc) -> Trunc:
        acc = Trunc.zero(field, m)
        for j, cj in enumerate(derivs):
            if cj.is_zero:
                continue
            acc = acc + ratfn_at_trunc(cj, x).shifted(j)
        return acc

    return newton_root(F, Fp, Trunc.zero(field, m))


def reduce_at(s_tilde: Trunc) -> Callable[[Trunc], Trunc]:
    """Reduction into the residue ring of the point cut out by ``s_tilde``.

    Realizes the canonical identification of the point's function ring with
    F_q[t]/(t^m) that is the identity modulo (t): evaluation at the Hensel
    root of the uniformizer.
    """
    root = local_point(s_tilde)
    field = s_tilde.ring.field
    m = s_tilde.m

    def reduce_fn(u: Trunc) -> Trunc:
        acc = Trunc.zero(field, m)
        for j, cj in enumerate(u.coeffs):
            if cj.is_zero:
                continue
            acc = acc + ratfn_at_trunc(cj, root).shifted(j)
        return acc

    return reduce_fn


def res_local(triple: Sequence[Trunc], s_tilde: Trunc) -> WedgeK:
    """Residue of a wedge of three s_tilde-good local elements at the point."""
    goods = [goodness_split(f, s_tilde) for f in triple]
    return res_good(goods, reduce_at(s_tilde))
