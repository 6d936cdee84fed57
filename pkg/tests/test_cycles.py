import pytest

from charp_dilog.cycles import (
    BoundaryPoint,
    NotAdmissible,
    PARAM_INF,
    admissibility_check,
    boundary,
    ell_p_zero_cycle,
    face_sign,
    make_cycle,
    modulus_compare,
    rho_K_cycle,
    rho_cycle,
)
from charp_dilog.gf import Fq, trace_to_base
from charp_dilog.regulator import rho_K
from charp_dilog.rng import spawn
from charp_dilog.sampling import quadratic_extension, rand_admissible_graph
from charp_dilog.tpoly import Trunc, rp_eval, rp_mul


def const_coord(field, p, value):
    return ([Trunc.constant(field, p, field(value))], [Trunc.one(field, p)])


def test_constant_cycle_admissible_empty_boundary(F7):
    p = 7
    cyc = make_cycle(F7, [const_coord(F7, p, v) for v in (2, 3, 4)])
    assert admissibility_check(cyc).ok
    assert boundary(cyc) == []
    assert rho_K_cycle(cyc).is_zero
    assert rho_cycle(cyc).is_zero


def test_double_root_rejected(F5):
    p = 5
    one = Trunc.one(F5, p)
    z = [Trunc.zero(F5, p), one]
    sq = rp_mul(z, z, Trunc.zero(F5, p))  # y1 = z^2: double root at the zero face
    cyc = make_cycle(F5, [(sq, [one]), const_coord(F5, p, 2), const_coord(F5, p, 3)])
    report = admissibility_check(cyc)
    assert not report.ok
    assert any(f.code == "NonSimpleRoot" for f in report.failures)
    with pytest.raises(NotAdmissible):
        boundary(cyc)


def test_coordinate_identically_one_rejected(F5):
    p = 5
    one = Trunc.one(F5, p)
    cyc = make_cycle(F5, [([one], [one]), const_coord(F5, p, 2), const_coord(F5, p, 3)])
    report = admissibility_check(cyc)
    assert any(f.code == "ConstantOneCoordinate" for f in report.failures)


def test_boundary_of_coordinate_graph(F7):
    # Z = (z, g(z), h(z)) with g, h Moebius: faces y1 = 0 and y1 = infinity sit
    # at z = 0 and the parameter infinity, carrying the values of (g, h) there
    p = 7
    one = Trunc.one(F7, p)
    zero = Trunc.zero(F7, p)
    z = [zero, one]

    def moebius(a, b, c, d):
        return ([Trunc.constant(F7, p, F7(b)), Trunc.constant(F7, p, F7(a))],
                [Trunc.constant(F7, p, F7(d)), Trunc.constant(F7, p, F7(c))])

    g = moebius(1, 1, 2, 3)   # (z + 1)/(2z + 3)
    h = moebius(1, 3, 4, 2)   # (z + 3)/(4z + 2)
    cyc = make_cycle(F7, [(z, [one]), g, h])
    assert admissibility_check(cyc).ok
    pts = boundary(cyc)
    by_face = {(pt.face, repr(pt.where)) for pt in pts}
    assert ((1, "0"), "1*x") in by_face
    assert ((1, "inf"), repr(PARAM_INF)) in by_face
    zero_pt = next(pt for pt in pts if pt.face == (1, "0"))
    assert zero_pt.sign == face_sign(1, at_infinity=False) == 1
    # values of g and h at the lifted root z = 0
    assert zero_pt.pair[0] == Trunc.constant(F7, p, F7(1)) * Trunc.constant(F7, p, F7(3)).inverse()
    assert zero_pt.pair[1] == Trunc.constant(F7, p, F7(3)) * Trunc.constant(F7, p, F7(2)).inverse()
    inf_pt = next(pt for pt in pts if pt.face == (1, "inf"))
    assert inf_pt.sign == face_sign(1, at_infinity=True) == -1
    # ratios of leading coefficients
    assert inf_pt.pair[0] == Trunc.constant(F7, p, F7(1)) * Trunc.constant(F7, p, F7(2)).inverse()
    assert inf_pt.pair[1] == Trunc.constant(F7, p, F7(1)) * Trunc.constant(F7, p, F7(4)).inverse()


def test_hensel_deformation_exactness(F5):
    rng = spawn(0, "hensel-def")
    _, cyc = rand_admissible_graph(F5, rng, seed=0)
    p = 5
    zero = Trunc.zero(F5, p)
    for pt in boundary(cyc):
        if pt.where is PARAM_INF or pt.kprime != F5:
            continue
        i = pt.face[0] - 1
        num = list(cyc.coords[i].num) if pt.face[1] == "0" else list(cyc.coords[i].den)
        root0 = -pt.where.coeff(0)
        from charp_dilog.tpoly import hensel_root_zpoly
        root = hensel_root_zpoly(num, root0)
        assert rp_eval(num, root, zero).is_zero


def test_single_split_point_value(F5, F7):
    # the displayed pair (1 + t^(p-1), 1 + t) with sign +1 has deep value 1
    for field in (F5, F7):
        p = field.p
        u = Trunc(field, p, [1] + [0] * (p - 2) + [1])
        v = Trunc(field, p, [1, 1])
        pt = BoundaryPoint(field, (u, v), 1, (1, "0"), None)
        assert ell_p_zero_cycle([pt], field) == field.one
        assert ell_p_zero_cycle([], field).is_zero


def test_conjugate_pair_traces(F5):
    # a closed point of degree two contributes the trace of its single-point value
    quad = quadratic_extension(F5)
    rng = spawn(1, "conj")
    p = 5
    u = Trunc(quad, p, [quad.random_element(rng) for _ in range(p)])
    v = Trunc(quad, p, [quad.random_element(rng) for _ in range(p)])
    while not (u.is_unit and v.is_unit):
        u = Trunc(quad, p, [quad.random_element(rng) for _ in range(p)])
        v = Trunc(quad, p, [quad.random_element(rng) for _ in range(p)])
    pt = BoundaryPoint(quad, (u, v), 1, (2, "0"), None)
    from charp_dilog.wedge import ell_p, wedge
    value = ell_p_zero_cycle([pt], F5)
    single = ell_p(wedge(u, v), ring=quad)
    assert value == trace_to_base(single)
    conj = [x.map_coeffs(lambda c: c ** 5, quad) for x in (u, v)]
    split_sum = single + ell_p(wedge(*conj), ring=quad)
    assert quad.embed(value) == split_sum


def test_modulus_compare_examples(F5):
    rng = spawn(2, "mc")
    _, cyc = rand_admissible_graph(F5, rng, seed=1)
    for m in (2, 3, 5):
        assert modulus_compare(cyc, cyc, m)
    # representative normalization: scaling num and den by a common unit
    lam = Trunc(F5, 5, [2, 1, 0, 3])
    scaled = make_cycle(F5, [([c * lam for c in co.num], [c * lam for c in co.den])
                             for co in cyc.coords])
    for m in (2, 5):
        assert modulus_compare(cyc, scaled, m)
    bumped = _bump(cyc, order=2, field=F5)
    assert modulus_compare(cyc, bumped, 2)
    assert not modulus_compare(cyc, bumped, 3)


def _bump(cyc, order, field):
    coords = []
    for i, co in enumerate(cyc.coords):
        num = list(co.num)
        if i == 0:
            c = num[0]
            moved = list(c.coeffs)
            moved[order] = moved[order] + field.one
            num[0] = Trunc(c.ring, c.m, moved)
        coords.append((num, list(co.den)))
    return make_cycle(field, coords)


@pytest.mark.parametrize("p", [5, 7])
def test_depth2_congruent_cycles_share_invariants(p):
    field = Fq(p)
    rng = spawn(3, "t73", p)
    for trial in range(8):
        _, cyc = rand_admissible_graph(field, rng, seed=trial)
        bumped = _bump(cyc, order=2, field=field)
        assert rho_K_cycle(cyc) == rho_K_cycle(bumped)
        assert rho_cycle(cyc) == rho_cycle(bumped)


def test_depth1_perturbations_can_move_the_invariant(F5):
    rng = spawn(4, "t73-control")
    moved = 0
    for trial in range(12):
        _, cyc = rand_admissible_graph(F5, rng, seed=trial + 100)
        bumped = _bump(cyc, order=1, field=F5)
        if not admissibility_check(bumped).ok:
            continue
        if rho_K_cycle(cyc) != rho_K_cycle(bumped):
            moved += 1
    assert moved >= 1


@pytest.mark.parametrize("p", [5, 7])
def test_cross_module_sign(p):
    field = Fq(p)
    rng = spawn(5, "xmod", p)
    for trial in range(6):
        inp, cyc = rand_admissible_graph(field, rng, seed=trial)
        assert rho_K_cycle(cyc) == rho_K(inp, lift_seed=trial)


def test_boundary_matches_regulator_residues(F7):
    # the graph boundary at a finite zero reproduces the residue data the
    # regulator computes at the corresponding table point
    rng = spawn(6, "bd-res")
    inp, cyc = rand_admissible_graph(F7, rng, seed=2)
    from charp_dilog.regulator import rho_K_breakdown
    total, breakdown = rho_K_breakdown(inp, lift_seed=2)
    assert total == rho_K_cycle(cyc)
