import pytest

from charp_dilog.gf import CtxMismatch, Fq
from charp_dilog.regulator import (
    DegenerateConfiguration,
    GoodFunction,
    RegulatorInput,
    finite_point,
    linear_input,
    local_relift_report,
    rescaled_t,
    rho,
    rho_K,
    rho_K_breakdown,
    rho_K_with_local_relift,
    theorem1_closed_form,
)
from charp_dilog.rng import spawn
from charp_dilog.sampling import rand_moebius_input, rand_theorem1_triple, rand_unit_k2
from charp_dilog.tpoly import Trunc


def test_closed_form_guards(F5):
    a = Trunc(F5, 2, [1, 2])
    b = Trunc(F5, 2, [0, 1])
    with pytest.raises(DegenerateConfiguration):
        theorem1_closed_form(a, b, Trunc(F5, 2, [0, 3]))  # gamma = beta mod t
    with pytest.raises(DegenerateConfiguration):
        theorem1_closed_form(a, b, Trunc(F5, 2, [1, 3]))  # s = 1
    with pytest.raises(DegenerateConfiguration):
        theorem1_closed_form(a, Trunc(F5, 2, [1, 1]), Trunc(F5, 2, [2, 0]))


def test_closed_form_zero_when_all_rational(F5):
    # r1 = 0 forces a = 0
    a = Trunc(F5, 2, [1, 0])
    b = Trunc(F5, 2, [0, 0])
    g = Trunc(F5, 2, [3, 0])
    assert theorem1_closed_form(a, b, g).is_zero


def test_repeated_entry_vanishes(F5):
    rng = spawn(0, "rep")
    alpha, beta, _ = rand_theorem1_triple(F5, rng)
    pts = (finite_point(F5, [-alpha, Trunc.one(F5, 2)]),
           finite_point(F5, [-beta, Trunc.one(F5, 2)]))
    one2 = Trunc.one(F5, 2)
    f = GoodFunction(one2, ((0, 1),))
    h = GoodFunction(one2, ((1, 1),))
    inp = RegulatorInput(F5, pts, f, f, h)
    assert rho_K(inp, 3).is_zero
    assert rho(inp, 3).is_zero


@pytest.mark.parametrize("p", [5, 7, 11])
def test_theorem1_matches_closed_form(p):
    field = Fq(p)
    rng = spawn(1, "thm1", p)
    for trial in range(25):
        alpha, beta, gamma = rand_theorem1_triple(field, rng)
        inp = linear_input(field, alpha, beta, gamma)
        assert rho_K(inp, lift_seed=trial) == theorem1_closed_form(alpha, beta, gamma)


def test_lift_seed_independence(F7):
    rng = spawn(2, "seeds")
    for trial in range(15):
        inp = rand_moebius_input(F7, rng)
        v = rho_K(inp, lift_seed=0)
        assert all(rho_K(inp, lift_seed=s) == v for s in (1, 2, 3))
        w = rho(inp, lift_seed=0)
        assert all(rho(inp, lift_seed=s) == w for s in (1, 2, 3))


def test_support_is_dividing_points_plus_infinity(F5):
    rng = spawn(3, "support")
    alpha, beta, gamma = rand_theorem1_triple(F5, rng)
    inp = linear_input(F5, alpha, beta, gamma)
    _, breakdown = rho_K_breakdown(inp, 0)
    labels = [idx for idx, _ in breakdown]
    assert labels == [0, 1, 2, "inf"]


def test_wedge_linearity_in_first_slot(F7):
    # rho_K(f1 f2 ^ g ^ h) = rho_K(f1 ^ g ^ h) + rho_K(f2 ^ g ^ h)
    rng = spawn(4, "linear")
    field = F7
    one2 = Trunc.one(field, 2)
    for trial in range(10):
        while True:
            roots = [field.random_element(rng) for _ in range(4)]
            if len({r.raw for r in roots}) == 4:
                break
        pts = tuple(finite_point(field, [-Trunc(field, 2, [r, field.random_element(rng)]),
                                         one2]) for r in roots)
        u1, u2 = rand_unit_k2(field, rng), rand_unit_k2(field, rng)
        g = GoodFunction(one2, ((2, 1),))
        h = GoodFunction(one2, ((3, 1),))
        f1 = GoodFunction(u1, ((0, 1),))
        f2 = GoodFunction(u2, ((1, 1),))
        f12 = GoodFunction(u1 * u2, ((0, 1), (1, 1)))
        total = rho_K(RegulatorInput(field, pts, f12, g, h), trial)
        parts = rho_K(RegulatorInput(field, pts, f1, g, h), trial) + \
            rho_K(RegulatorInput(field, pts, f2, g, h), trial)
        assert total == parts


def test_scaling_law(F5):
    rng = spawn(5, "scaling")
    for trial in range(10):
        inp = rand_moebius_input(F5, rng, degrees=(1, 1, 1, 1, 2, 2))
        v3 = rho(inp, lift_seed=trial)
        vp = rho_K(inp, lift_seed=trial)
        for lam_raw in (2, 3):
            lam = F5(lam_raw)
            scaled = rescaled_t(inp, lam)
            assert rho(scaled, lift_seed=trial) == lam ** 3 * v3
            assert rho_K(scaled, lift_seed=trial) == lam ** 5 * vp


def test_relift_identity_is_trivial(F5):
    rng = spawn(6, "relift-id")
    alpha, beta, gamma = rand_theorem1_triple(F5, rng)
    inp = linear_input(F5, alpha, beta, gamma)
    rep = local_relift_report(inp, 0, alt_seed=42, lift_seed=42)
    assert rep.defect.is_zero
    assert rep.value == rep.standard_value


def test_relift_preserves_value_with_nonzero_defect(F7):
    rng = spawn(7, "relift")
    seen_nonzero = False
    for trial in range(10):
        alpha, beta, gamma = rand_theorem1_triple(F7, rng)
        inp = linear_input(F7, alpha, beta, gamma)
        rep = local_relift_report(inp, 2, alt_seed=trial + 100, lift_seed=trial)
        assert rep.value == rep.standard_value
        seen_nonzero = seen_nonzero or not rep.defect.is_zero
        assert rho_K_with_local_relift(inp, 1, alt_seed=trial + 7, lift_seed=trial) == \
            rep.standard_value
    assert seen_nonzero


def test_relift_at_degree_two_point(F5):
    # local re-lifting across a residue field extension
    rng = spawn(8, "relift-deg2")
    inp = rand_moebius_input(F5, rng, degrees=(2, 2, 1, 1, 1, 1))
    rep = local_relift_report(inp, 0, alt_seed=5, lift_seed=1)
    assert rep.value == rep.standard_value


@pytest.mark.parametrize("p", [5, 7])
def test_depth1_perturbation_breaks_the_correction(p):
    # the displayed counterexample staged on the projective line: relifting the
    # origin with z - t (matching only mod t) shifts the corrected total by 1
    field = Fq(p)
    one2 = Trunc.one(field, 2)
    zero2 = Trunc.zero(field, 2)
    from charp_dilog.gf import Poly, factor_squarefree_irreducibles

    cyclotomic = Poly(field, [1] + [0] * (p - 2) + [1])  # 1 + z^(p-1)
    pts = [finite_point(field, [zero2, one2])]           # the origin, lifted as z
    g_factors = []
    for pi, mult in factor_squarefree_irreducibles(cyclotomic):
        idx = len(pts)
        pts.append(finite_point(field, [Trunc.constant(field, 2, pi.coeff(i))
                                        for i in range(pi.degree + 1)]))
        g_factors.append((idx, mult))
    pts.append(finite_point(field, [one2, one2]))        # z + 1
    inp = RegulatorInput(
        field, tuple(pts),
        GoodFunction(one2, ((0, 1),)),
        GoodFunction(one2, tuple(g_factors)),
        GoodFunction(one2, ((len(pts) - 1, 1),)),
    )
    std = rho_K(inp, lift_seed=None)  # trivial tails: the displayed configuration
    assert rho_K(inp, lift_seed=3) == std
    rep = local_relift_report(inp, 0, alt_seed=0, lift_seed=None,
                              perturb_t1=-field.one)
    assert rep.point_value_alt == field.one
    assert rep.defect.is_zero
    assert rep.value == std + field.one
    assert rep.value != std


def test_input_validation(F5, F7):
    one2 = Trunc.one(F5, 2)
    pt = finite_point(F5, [one2, one2])
    with pytest.raises(ValueError):
        RegulatorInput(F5, (pt, pt),
                       GoodFunction(one2, ((0, 1),)),
                       GoodFunction(one2, ((1, 1),)),
                       GoodFunction(one2, ()))
    with pytest.raises(CtxMismatch):
        RegulatorInput(F5, (pt,),
                       GoodFunction(Trunc.one(F7, 2), ((0, 1),)),
                       GoodFunction(one2, ((0, 1),)),
                       GoodFunction(one2, ()))
    with pytest.raises(ValueError):
        finite_point(F5, [Trunc(F5, 2, [1, 0]), Trunc(F5, 2, [2, 0])])  # not monic
