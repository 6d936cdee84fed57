"""The comparison 1-form on wedges of units of R[t]/(t^p) over a differential ring.

Units are decomposed into letters: a constant-term unit and truncated
exponentials e(alpha t^a).  The form is the alternating multilinear extension
of a closed formula on letter triples whose exponents sum to p, valued in
1-forms over the coefficient field.  Alongside it: the reparametrization
action s -> s + x t^w in closed form and by direct substitution, the exactness
identity with its combinatorial coefficients, residue invariance, the residue
pairing of two congruent liftings, and the depth-3 defect form used by the
ordinary (non-Kontsevich) regulator route.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .gf import FqElem
from .localfield import OneForm, RatFn, RatFnRing, residue_at
from .tpoly import ModulusMismatch, Trunc, ell_all, inv_factorials, trunc_exp, unit_decompose
from .wedge import WedgeK


class OmegaError(Exception):
    """Base class for comparison-form errors."""


class PairNotCongruent(OmegaError):
    """Pair entries must agree modulo (t)."""


class NotCongruentModT2(OmegaError):
    """The two liftings must agree modulo (t^2)."""


class CaseTableGap(OmegaError):
    """No branch of the coefficient case table matched (implementation fault)."""


class NotDivisible(OmegaError):
    """The weight must divide p - (a+b+c) with positive quotient."""


class Letter(NamedTuple):
    """One factor of a unit: e(payload * t^a), with a = 0 meaning the constant unit."""

    a: int
    payload: RatFn


def letters_of_unit(u: Trunc) -> list[Letter]:
    """Decompose a unit into its canonical letters, dropping trivial ones."""
    d = unit_decompose(u)
    letters = []
    if d.a0 != u.ring.one:
        letters.append(Letter(0, d.a0))
    for i, alpha in enumerate(d.exps, start=1):
        if not alpha.is_zero:
            letters.append(Letter(i, alpha))
    return letters


def _letters_of_entry(e) -> list[Letter]:
    """An entry of a wedge may be a unit truncation or a prepared letter list."""
    if isinstance(e, Trunc):
        return letters_of_unit(e)
    return list(e)


def _dpayload(letter: Letter) -> RatFn:
    if letter.a == 0:
        return letter.payload.derivative() / letter.payload
    return letter.payload.derivative()


def _sort3(letters: Sequence[Letter]) -> tuple[list[Letter], int]:
    items = list(letters)
    sign = 1
    for i in range(2):
        for j in range(2 - i):
            if items[j].a < items[j + 1].a:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return items, sign


def omega_letters(l1: Letter, l2: Letter, l3: Letter, p: int) -> RatFn | None:
    """Value of the form on a single letter triple, or None when it vanishes."""
    if l1.a + l2.a + l3.a != p:
        return None
    (A, B, C), sign = _sort3((l1, l2, l3))
    a, b, c = A.a, B.a, C.a
    if a > b:
        # alpha (b beta dgamma - c gamma dbeta); the c-term drops when c = 0
        value = A.payload * (b * B.payload * _dpayload(C))
        if c != 0:
            value = value - A.payload * (c * C.payload * _dpayload(B))
    elif b > c:
        # a = b > c; c = 0 would force 2a = p, impossible for odd p
        assert c > 0, "tie case with constant third letter cannot occur for p >= 5"
        value = C.payload * (a * A.payload * _dpayload(B) - b * B.payload * _dpayload(A))
    else:
        raise AssertionError("a = b = c would need 3 | p")
    return value if sign == 1 else -value


def _entry_ring(w: WedgeK) -> RatFnRing:
    for _, entries in w.terms:
        for e in entries:
            if isinstance(e, Trunc):
                return e.ring
            if len(e):
                return RatFnRing(e[0].payload.field)
    raise ValueError("cannot infer the coefficient ring; pass it explicitly")


def omega_p(w: WedgeK, ring: RatFnRing | None = None) -> OneForm:
    """The comparison form on a wedge of three units of R[t]/(t^p) over rational functions.

    Entries may be unit truncations (decomposed canonically) or prepared
    letter lists; the value is the alternating multilinear extension of the
    letter-triple formula.
    """
    if not w.terms:
        if ring is None:
            raise ValueError("empty wedge needs an explicit coefficient ring")
        return OneForm(ring.zero)
    ring = _entry_ring(w)
    p = ring.characteristic
    total = ring.zero
    for k, entries in w.terms:
        if len(entries) != 3:
            raise ValueError("omega_p consumes wedges of arity 3")
        letter_lists = []
        for u in entries:
            if isinstance(u, Trunc) and u.m != p:
                raise ModulusMismatch("omega_p needs units of R[t]/(t^p)")
            letter_lists.append(_letters_of_entry(u))
        acc = ring.zero
        for a1 in letter_lists[0]:
            for a2 in letter_lists[1]:
                for a3 in letter_lists[2]:
                    v = omega_letters(a1, a2, a3, p)
                    if v is not None:
                        acc = acc + v
        total = total + k * acc
    return OneForm(total)


def omega_p_pair(w: WedgeK, ring: RatFnRing | None = None) -> OneForm:
    """The form on wedges of pairs congruent mod (t): value on first minus second."""
    for _, entries in w.terms:
        for u, v in entries:
            if u.c0 != v.c0:
                raise PairNotCongruent("pair entries differ modulo (t)")
    first = w.map_entries(lambda pair: pair[0])
    second = w.map_entries(lambda pair: pair[1])
    return omega_p(first, ring) - omega_p(second, ring)


# -- reparametrization -------------------------------------------------------

def sigma_apply(x: RatFn, w: int, u: Trunc) -> Trunc:
    """Apply s -> s + x t^w to a unit, letter by letter, in closed form."""
    ring: RatFnRing = u.ring
    p = ring.characteristic
    if u.m != p:
        raise ModulusMismatch("sigma acts on units of R[t]/(t^p)")
    inv_fact = inv_factorials(p)
    if w >= p:
        return u
    result = Trunc.one(ring, p)
    for letter in letters_of_unit(u):
        if letter.a == 0:
            result = result * Trunc.constant(ring, p, letter.payload)
            deriv = letter.payload.derivative() / letter.payload
            i = 1
            while letter.a + i * w < p:
                coeff = (x ** i) * deriv * inv_fact[i]
                result = result * _exp_single(ring, p, letter.a + i * w, coeff)
                deriv = deriv.derivative()
                i += 1
        else:
            deriv = letter.payload
            i = 0
            while letter.a + i * w < p:
                coeff = (x ** i) * deriv * inv_fact[i]
                result = result * _exp_single(ring, p, letter.a + i * w, coeff)
                deriv = deriv.derivative()
                i += 1
    return result


def _exp_single(ring, m: int, e: int, coeff: RatFn) -> Trunc:
    if coeff.is_zero:
        return Trunc.one(ring, m)
    return trunc_exp(Trunc(ring, m, [ring.zero] * e + [coeff]))


def substitute_s(u: Trunc, image: Trunc) -> Trunc:
    """Apply the substitution s -> image (a truncation with constant term s).

    The direct bivariate route: every rational coefficient of u is evaluated
    at the image truncation; this is the automorphism itself, independent of
    the letter formulas, and doubles as their cross-check.
    """
    ring: RatFnRing = u.ring
    if image.c0 != ring.gen:
        raise ValueError("substitution must restrict to the identity modulo (t)")
    acc = Trunc.zero(ring, u.m)
    for j, cj in enumerate(u.coeffs):
        if cj.is_zero:
            continue
        acc = acc + _ratfn_at_rtrunc(cj, image).shifted(j)
    return acc


def _ratfn_at_rtrunc(r: RatFn, x: Trunc) -> Trunc:
    ring: RatFnRing = x.ring

    def poly_at(p) -> Trunc:
        acc = Trunc.zero(ring, x.m)
        for i in range(p.degree, -1, -1):
            acc = acc * x + RatFn.const(p.coeff(i))
        return acc

    return poly_at(r.num) * poly_at(r.den).inverse()


def sigma_image_of_s(ring: RatFnRing, xs: Sequence[RatFn]) -> Trunc:
    """The truncation s + sum_w xs[w-1] t^w defining a general reparametrization."""
    p = ring.characteristic
    coeffs = [ring.gen] + [xs[w - 1] if w - 1 < len(xs) else ring.zero for w in range(1, p)]
    return Trunc(ring, p, coeffs)


def sigma_general(xs: Sequence[RatFn], u: Trunc) -> Trunc:
    """Apply s -> s + sum_w xs[w-1] t^w by direct substitution."""
    return substitute_s(u, sigma_image_of_s(u.ring, xs))


def sigma_letters(x: RatFn, w: int, letters: Sequence[Letter], p: int) -> list[Letter]:
    """The closed-form image of a letter list under s -> s + x t^w."""
    inv_fact = inv_factorials(p)
    out: list[Letter] = []
    for letter in letters:
        out.append(letter)
        if letter.a == 0:
            deriv = letter.payload.derivative() / letter.payload
        else:
            deriv = letter.payload.derivative()
        i = 1
        e = letter.a + w
        while e < p:
            out.append(Letter(e, (x ** i) * deriv * inv_fact[i]))
            i += 1
            e += w
            deriv = deriv.derivative()
    return out


def sigma_image_letters(xs: Sequence[RatFn], entry, ring: RatFnRing) -> list[Letter]:
    """Letters of the image of an entry under a general reparametrization.

    A pure exponential letter e(alpha t^a) maps to e(sigma(alpha) t^a), whose
    letters are read off the truncation sigma(alpha) directly; a constant-term
    unit goes through one substitution and one branch logarithm.
    """
    p = ring.characteristic
    image = sigma_image_of_s(ring, xs)
    letters = _letters_of_entry(entry)
    out: list[Letter] = []
    for letter in letters:
        if letter.a == 0:
            moved = _ratfn_at_rtrunc(letter.payload, image)
            out.append(Letter(0, moved.c0))
            from .tpoly import ell_all
            for j, lj in enumerate(ell_all(moved), start=1):
                if not lj.is_zero:
                    out.append(Letter(j, lj))
        else:
            moved = _ratfn_at_rtrunc(letter.payload, image)
            for j, cj in enumerate(moved.coeffs):
                e = letter.a + j
                if e >= p:
                    break
                if not cj.is_zero:
                    out.append(Letter(e, cj))
    return out


def res_invariance_check(xs: Sequence[RatFn], w3: WedgeK) -> bool:
    """Whether the residue at s = 0 of the form is unchanged by the reparametrization."""
    ring = _entry_ring(w3)
    zero_pt = ring.field.zero
    moved = w3.map_entries(lambda u: sigma_image_letters(xs, u, ring))
    before = residue_at(omega_p(w3, ring), zero_pt)
    after = residue_at(omega_p(moved, ring), zero_pt)
    return before == after


# -- the exactness identity ---------------------------------------------------

def s_coeff(a: int, b: int, c: int, i: int, j: int, k: int, w: int, p: int) -> int:
    """The combinatorial coefficient of the antiderivative, as an integer mod p.

    Defined by a case split on the shifted exponents (a+iw, b+jw, c+kw) and
    two antisymmetry clauses; vanishes whenever a derivative of an undefined
    payload would be requested (exponent and derivative order both zero).
    """
    A, B, C = a + i * w, b + j * w, c + k * w
    if A > max(B, C) or (B == C and C > A):
        inv_fact = inv_factorials(p)
        return (b * k - c * j) * inv_fact[i] * inv_fact[j] * inv_fact[k] % p
    if B > max(A, C) or (A == C and C > B):
        return -s_coeff(b, a, c, j, i, k, w, p) % p
    if C > max(A, B) or (A == B and B > C):
        return s_coeff(c, a, b, k, i, j, w, p) % p
    raise CaseTableGap(f"no branch for ({a},{b},{c};{i},{j},{k}) at w={w}")


def _derivative_ladder(a: int, payload: RatFn, depth: int) -> list[RatFn | None]:
    """payload^(i) for i = 0..depth; for a = 0 the convention (f'/f)^(i-1), with
    the i = 0 entry undefined (None)."""
    if a == 0:
        out: list[RatFn | None] = [None]
        cur = payload.derivative() / payload
    else:
        out = [payload]
        cur = payload
        if depth >= 1:
            cur = payload.derivative()
    if depth >= 1:
        out.append(cur)
        for _ in range(depth - 1):
            cur = cur.derivative()
            out.append(cur)
    return out


def antider_primitive(a: int, b: int, c: int, w: int, x: RatFn,
                      pa: RatFn, pb: RatFn, pc: RatFn) -> RatFn:
    """The rational primitive whose differential measures the reparametrization defect.

    Payloads with exponent zero are constant-term units; their ladder starts at
    the logarithmic derivative and the case-table coefficient of the undefined
    zeroth entry always vanishes.
    """
    p = x.field.p
    rest = p - (a + b + c)
    if rest <= 0 or rest % w != 0:
        raise NotDivisible(f"w = {w} does not divide p - (a+b+c) = {rest} positively")
    q = rest // w
    if q % p == 0:
        # only a+b+c = 0, w = 1 reaches this; the difference need not even be
        # exact there (the all-constant triple sits outside the identity)
        raise NotDivisible("quotient q is divisible by p; the primitive does not exist")
    ring = RatFnRing(x.field)
    da = _derivative_ladder(a, pa, q)
    db = _derivative_ladder(b, pb, q)
    dc = _derivative_ladder(c, pc, q)
    xq_over_q = (x ** q) * pow(q, p - 2, p)
    total = ring.zero
    for i in range(q + 1):
        for j in range(q + 1 - i):
            k = q - i - j
            coeff = s_coeff(a, b, c, i, j, k, w, p)
            if coeff == 0:
                continue
            assert da[i] is not None and db[j] is not None and dc[k] is not None, \
                "case table let an undefined payload through"
            total = total + coeff * da[i] * db[j] * dc[k]
    return xq_over_q * total


# -- residues of pairs of liftings --------------------------------------------

def _congruent_mod_t2(u: Trunc, v: Trunc) -> bool:
    return u.coeffs[:2] == v.coeffs[:2]


def res_omega_pair(qtilde: WedgeK, qhat: WedgeK, ring: RatFnRing | None = None) -> FqElem:
    """Residue at s = 0 of the form difference of two liftings congruent mod t^2.

    Realizes both liftings in one coordinate; additive in chains of congruent
    liftings.  Exact by construction: the rational source supplies any
    precision an expansion asks for.
    """
    if len(qtilde.terms) != len(qhat.terms):
        raise NotCongruentModT2("liftings have different presentations")
    for (k1, e1), (k2, e2) in zip(qtilde.terms, qhat.terms):
        if k1 != k2:
            raise NotCongruentModT2("liftings have different coefficients")
        for u, v in zip(e1, e2):
            if not _congruent_mod_t2(u, v):
                raise NotCongruentModT2("entries differ modulo t^2")
    if ring is None and qtilde.terms:
        ring = _entry_ring(qtilde)
    diff = omega_p(qtilde, ring) - omega_p(qhat, ring)
    return residue_at(diff, ring.field.zero)


_PERMS3 = (
    ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
    ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
)


def omega_char0_defect(qtilde: Sequence[Trunc], qhat: Sequence[Trunc]) -> OneForm:
    """The depth-3 defect form of two triples congruent mod t^2 (m = 3 model).

    Both triples decompose as a0 * e(t a1 + t^2 a2 + ...); only the depth-2
    exponents differ, and the value is the signed sum over permutations of
    a1 (a2~ - a2^) dlog a0 across the three slots.
    """
    if len(qtilde) != 3 or len(qhat) != 3:
        raise ValueError("defect form takes two triples")
    a0, a1, d2 = [], [], []
    for u, v in zip(qtilde, qhat):
        if u.m != 3 or v.m != 3:
            raise ModulusMismatch("defect form lives over R[t]/(t^3)")
        if not _congruent_mod_t2(u, v):
            raise NotCongruentModT2("triples differ modulo t^2")
        lu, lv = ell_all(u), ell_all(v)
        a0.append(u.c0)
        a1.append(lu[0])
        d2.append(lu[1] - lv[1])
    ring = qtilde[0].ring
    total = ring.zero
    for (p1, p2, p3), sign in _PERMS3:
        term = a1[p1] * d2[p3] * (a0[p2].derivative() / a0[p2])
        total = total + (term if sign == 1 else -term)
    return OneForm(total)
