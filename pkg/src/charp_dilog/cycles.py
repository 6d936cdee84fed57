"""Parametrized admissible curves in the triple product of punctured lines.

A cycle is given by three coordinate functions of a parameter z, rational
with coefficients in k[t]/(t^p).  Boundary faces sit where a coordinate
degenerates to 0 or infinity at t = 0: each simple face root deforms by
Hensel lifting, the surviving pair of coordinates is evaluated there, and the
signed traced wedge functionals of those pairs give the two invariants.  Only
the reduction modulo t^2 of an admissible cycle matters to them, which is the
modulus property the acceptance suite pins down.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .gf import Fq, FqElem, Poly, factor_squarefree_irreducibles, trace_to_base
from .tpoly import Trunc, hensel_root_zpoly, rp_eval
from .wedge import ell, ell_p, wedge


class CycleError(Exception):
    """Base class for cycle errors."""


class NotAdmissible(CycleError):
    """The cycle fails the admissibility checks; see the report."""


INF_FACE = "inf"
ZERO_FACE = "0"
PARAM_INF = "z=inf"


def face_sign(i_one_based: int, at_infinity: bool) -> int:
    """The boundary sign for face (i, a): (-1)^i at a = infinity, its negative at a = 0."""
    s = -1 if i_one_based % 2 else 1
    return s if at_infinity else -s


@dataclass(frozen=True)
class Coordinate:
    """One coordinate function: num(z)/den(z) with truncated coefficients."""

    num: tuple
    den: tuple

    def reductions(self, field: Fq) -> tuple[Poly, Poly]:
        return (Poly(field, [c.c0 for c in self.num]),
                Poly(field, [c.c0 for c in self.den]))


@dataclass(frozen=True)
class ParamCycle:
    """A parametrized cycle: three coordinates over k[t]/(t^p)."""

    field: Fq
    coords: tuple


def make_cycle(field: Fq, coords: Sequence[tuple[Sequence[Trunc], Sequence[Trunc]]]) -> ParamCycle:
    if len(coords) != 3:
        raise ValueError("a cycle has three coordinates")
    packed = []
    for num, den in coords:
        packed.append(Coordinate(tuple(num), tuple(den)))
    return ParamCycle(field, tuple(packed))


@dataclass(frozen=True)
class Failure:
    code: str
    coordinate: int
    detail: str


@dataclass
class AdmissibilityReport:
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _lead_is_unit(coeffs: Sequence[Trunc]) -> bool:
    return bool(coeffs) and not coeffs[-1].c0.is_zero


def admissibility_check(cycle: ParamCycle) -> AdmissibilityReport:
    """Structured finite-reduction and proper-intersection checks at t = 0.

    Verifies that no coordinate degenerates identically to 0, 1 or infinity,
    that leading coefficients stay units (so the behaviour at the parameter
    point at infinity is read off degrees honestly), that every face root is
    simple (including at infinity, where the degree gap plays that role), and
    that at each face root the other two coordinates avoid 0, 1 and infinity.
    """
    report = AdmissibilityReport()
    field = cycle.field
    reds = [c.reductions(field) for c in cycle.coords]
    for i, (num, den) in enumerate(reds):
        if num.is_zero:
            report.failures.append(Failure("ZeroCoordinate", i, "reduction is identically 0"))
            continue
        if den.is_zero:
            report.failures.append(Failure("InfiniteCoordinate", i, "reduction is identically infinite"))
            continue
        if num == den:
            report.failures.append(Failure("ConstantOneCoordinate", i, "reduction is identically 1"))
            continue
        if not _lead_is_unit(cycle.coords[i].num) or not _lead_is_unit(cycle.coords[i].den):
            report.failures.append(Failure("LeadingCoefficientDegenerates", i,
                                           "leading z-coefficient vanishes mod t"))
            continue
        if num.gcd(den).degree > 0:
            report.failures.append(Failure("BasePoint", i,
                                           "numerator and denominator share a root mod t"))
            continue
    if report.failures:
        return report
    for i in range(3):
        num, den = reds[i]
        for target, label in ((num, ZERO_FACE), (den, INF_FACE)):
            for pi, mult in factor_squarefree_irreducibles(target):
                if mult > 1:
                    report.failures.append(Failure("NonSimpleRoot", i,
                                                   f"face {label} root {pi!r} has multiplicity {mult}"))
                    continue
                _check_other_coords(report, cycle, reds, i, pi, label)
        gap = den.degree - num.degree
        if gap != 0:
            label = ZERO_FACE if gap > 0 else INF_FACE
            if abs(gap) > 1:
                report.failures.append(Failure("NonSimpleRoot", i,
                                               f"face {label} at the parameter infinity has multiplicity {abs(gap)}"))
            else:
                _check_other_coords_at_param_inf(report, cycle, reds, i)
    return report


def _check_other_coords(report, cycle, reds, i, pi, label):
    field = cycle.field
    if pi.degree == 1:
        kprime, theta = field, -pi.coeff(0)
    else:
        kprime = Fq(field.p, modulus=[pi.coeff(k) for k in range(pi.degree + 1)], base=field)
        theta = kprime.gen()
    for j in range(3):
        if j == i:
            continue
        numj, denj = reds[j]
        nv = numj.evaluate(theta)
        dv = denj.evaluate(theta)
        if dv.is_zero or nv.is_zero or nv == dv:
            report.failures.append(Failure("FaceValueCollision", j,
                                           f"coordinate hits 0, 1 or infinity over face ({i + 1}, {label})"))


def _check_other_coords_at_param_inf(report, cycle, reds, i):
    for j in range(3):
        if j == i:
            continue
        numj, denj = reds[j]
        if numj.degree != denj.degree:
            report.failures.append(Failure("FaceValueCollision", j,
                                           "coordinate degenerates at the parameter infinity"))
            continue
        if numj.leading() == denj.leading():
            report.failures.append(Failure("FaceValueCollision", j,
                                           "coordinate hits 1 at the parameter infinity"))


@dataclass(frozen=True)
class BoundaryPoint:
    """A signed face point with the surviving coordinate pair evaluated at it."""

    kprime: Fq
    pair: tuple
    sign: int
    face: tuple
    where: object


def boundary(cycle: ParamCycle) -> list[BoundaryPoint]:
    """The signed boundary points with Hensel-deformed positions.

    For face (i, 0) the roots of the i-th numerator's reduction are lifted to
    roots of the full numerator over t; for (i, inf) the denominator plays
    that role; the parameter point at infinity contributes through the degree
    gap, where the deformed point is constant and the surviving values are
    ratios of leading coefficients.
    """
    report = admissibility_check(cycle)
    if not report.ok:
        raise NotAdmissible("; ".join(f"{f.code}[y{f.coordinate + 1}]: {f.detail}"
                                      for f in report.failures))
    field = cycle.field
    out = []
    for i in range(3):
        num, den = cycle.coords[i].num, cycle.coords[i].den
        red_num, red_den = cycle.coords[i].reductions(field)
        for coeffs, red, label in ((num, red_num, ZERO_FACE), (den, red_den, INF_FACE)):
            for pi, _ in factor_squarefree_irreducibles(red):
                out.append(_finite_boundary_point(cycle, i, list(coeffs), pi, label))
        gap = red_den.degree - red_num.degree
        if gap == 1:
            out.append(_param_inf_boundary_point(cycle, i, ZERO_FACE))
        elif gap == -1:
            out.append(_param_inf_boundary_point(cycle, i, INF_FACE))
    return out


def _finite_boundary_point(cycle: ParamCycle, i: int, coeffs: list, pi: Poly,
                           label: str) -> BoundaryPoint:
    field = cycle.field
    if pi.degree == 1:
        kprime, root0 = field, -pi.coeff(0)
        emb = coeffs
    else:
        kprime = Fq(field.p, modulus=[pi.coeff(k) for k in range(pi.degree + 1)], base=field)
        root0 = kprime.gen()
        emb = [c.map_coeffs(kprime.embed, kprime) for c in coeffs]
    z0 = hensel_root_zpoly(emb, root0)
    pair = []
    zero = Trunc.zero(kprime, z0.m)
    for j in range(3):
        if j == i:
            continue
        numj = list(cycle.coords[j].num)
        denj = list(cycle.coords[j].den)
        if kprime != field:
            numj = [c.map_coeffs(kprime.embed, kprime) for c in numj]
            denj = [c.map_coeffs(kprime.embed, kprime) for c in denj]
        pair.append(rp_eval(numj, z0, zero) * rp_eval(denj, z0, zero).inverse())
    return BoundaryPoint(kprime, tuple(pair), face_sign(i + 1, label == INF_FACE),
                         (i + 1, label), pi)


def _param_inf_boundary_point(cycle: ParamCycle, i: int, label: str) -> BoundaryPoint:
    field = cycle.field
    pair = []
    for j in range(3):
        if j == i:
            continue
        pair.append(cycle.coords[j].num[-1] * cycle.coords[j].den[-1].inverse())
    return BoundaryPoint(field, tuple(pair), face_sign(i + 1, label == INF_FACE),
                         (i + 1, label), PARAM_INF)


def _zero_cycle_value(points: Sequence[BoundaryPoint], functional: Callable,
                      field: Fq) -> FqElem:
    total = field.zero
    for pt in points:
        v = functional(wedge(*pt.pair), ring=pt.kprime)
        if pt.kprime != field:
            v = trace_to_base(v)
        total = total + (v if pt.sign == 1 else -v)
    return total


def ell_zero_cycle(points: Sequence[BoundaryPoint], field: Fq) -> FqElem:
    """Signed traced ell values of the boundary pairs."""
    return _zero_cycle_value(points, ell, field)


def ell_p_zero_cycle(points: Sequence[BoundaryPoint], field: Fq) -> FqElem:
    """Signed traced deep-functional values of the boundary pairs."""
    return _zero_cycle_value(points, ell_p, field)


def rho_cycle(cycle: ParamCycle) -> FqElem:
    """The ell-invariant of an admissible cycle (boundary pairs read mod t^3)."""
    return ell_zero_cycle(boundary(cycle), cycle.field)


def rho_K_cycle(cycle: ParamCycle) -> FqElem:
    """The deep invariant of an admissible cycle."""
    return ell_p_zero_cycle(boundary(cycle), cycle.field)


def modulus_compare(z1: ParamCycle, z2: ParamCycle, m: int) -> bool:
    """Whether the two parametrizations agree coefficientwise modulo t^m,
    after normalizing representatives (monic denominators)."""
    if z1.field != z2.field:
        return False
    for c1, c2 in zip(z1.coords, z2.coords):
        if not _coord_congruent(c1, c2, m):
            return False
    return True


def _normalized(coord: Coordinate) -> tuple[list, list]:
    lead = coord.den[-1]
    if not lead.is_unit:
        raise NotAdmissible("cannot normalize: denominator leading coefficient is not a unit")
    inv = lead.inverse()
    return [c * inv for c in coord.num], [c * inv for c in coord.den]


def _coord_congruent(c1: Coordinate, c2: Coordinate, m: int) -> bool:
    n1, d1 = _normalized(c1)
    n2, d2 = _normalized(c2)
    for a, b in _zip_pad(n1, n2):
        if not _congruent(a, b, m):
            return False
    for a, b in _zip_pad(d1, d2):
        if not _congruent(a, b, m):
            return False
    return True


def _zip_pad(a: list, b: list):
    n = max(len(a), len(b))
    za = a[0] - a[0]
    for i in range(n):
        yield (a[i] if i < len(a) else za), (b[i] if i < len(b) else za)


def _congruent(a: Trunc, b: Trunc, m: int) -> bool:
    return a.coeffs[:m] == b.coeffs[:m]


def graph_cycle(inp, lift_seed: int = 0) -> ParamCycle:
    """The parametrized graph of a regulator input's three functions.

    Uses the same seeded depth-p lift as the deep regulator, so the cycle
    reduces to the given depth-2 data; its invariant matches the regulator
    value up to one global sign fixed once by the acceptance suite.
    """
    from .regulator import _lift_input
    from .tpoly import rp_mul

    field = inp.field
    p = field.p
    lift = _lift_input(inp, p, lift_seed)
    one = Trunc.one(field, p)
    coords = []
    for which, fn in enumerate(inp.functions()):
        num = [lift.units[which]]
        den = [one]
        for idx, e in fn.factors:
            base = lift.points[idx]
            for _ in range(abs(e)):
                if e > 0:
                    num = rp_mul(num, base, Trunc.zero(field, p))
                else:
                    den = rp_mul(den, base, Trunc.zero(field, p))
        coords.append((num, den))
    return make_cycle(field, coords)
