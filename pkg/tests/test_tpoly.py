import pytest
from hypothesis import given, strategies as st

from charp_dilog.gf import Fq
from charp_dilog.rng import spawn
from charp_dilog.tpoly import (
    HenselFailure,
    IndexOutOfRange,
    ModulusMismatch,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    Trunc,
    ell_i,
    hensel_root_zpoly,
    log_circ,
    rp_eval,
    trunc_exp,
    unit_decompose,
    unit_recompose,
)


def rand_unit(ring, m, rng):
    while True:
        u = Trunc(ring, m, [ring.random_element(rng) for _ in range(m)])
        if u.is_unit:
            return u


def test_ring_examples(F5):
    one = Trunc.one(F5, 2)
    t = Trunc.t(F5, 2)
    assert (one + t) * (one - t) == one
    r3 = Trunc(F5, 3, [1, 1])
    assert r3.inverse() == Trunc(F5, 3, [1, -1, 1])
    x = Trunc(F5, 3, [2, 3, 4])
    assert x.reduce_to(2) == Trunc(F5, 2, [2, 3])


def test_modulus_bounds(F5):
    with pytest.raises(ModulusMismatch):
        Trunc(F5, 6, [])
    with pytest.raises(ModulusMismatch):
        Trunc(F5, 1, [])
    with pytest.raises(ModulusMismatch):
        Trunc(F5, 2, [1]) + Trunc(F5, 3, [1])


def test_inverse_needs_unit(F5):
    with pytest.raises(NonUnitConstantTerm):
        Trunc.t(F5, 3).inverse()


def test_exp_requires_zero_constant(F5):
    with pytest.raises(NonzeroConstantTerm):
        trunc_exp(Trunc.one(F5, 3))


def test_exp_of_t_in_r5_direct_sum_oracle(F5):
    # sum_{n<5} t^n/n! with 1/2 = 3, 1/6 = 1, 1/24 = 4 mod 5
    assert trunc_exp(Trunc.t(F5, 5)) == Trunc(F5, 5, [1, 1, 3, 1, 4])


def test_exp_is_homomorphism(F7):
    rng = spawn(0, "exp-hom")
    m = 7
    for _ in range(200):
        a = Trunc(F7, m, [F7.zero] + [F7.random_element(rng) for _ in range(m - 1)])
        b = Trunc(F7, m, [F7.zero] + [F7.random_element(rng) for _ in range(m - 1)])
        assert trunc_exp(a) * trunc_exp(b) == trunc_exp(a + b)


def test_log_examples(F5):
    c = Trunc.constant(F5, 3, F5(4))
    assert log_circ(c).is_zero
    assert log_circ(Trunc(F5, 3, [1, 1])) == Trunc(F5, 3, [0, 1, F5(2).inverse() * F5(-1)])


def test_log_is_homomorphism(F5):
    rng = spawn(1, "log-hom")
    for _ in range(200):
        u = rand_unit(F5, 5, rng)
        v = rand_unit(F5, 5, rng)
        assert log_circ(u * v) == log_circ(u) + log_circ(v)


def test_exp_log_inverse_pair(F7):
    rng = spawn(2, "exp-log")
    m = 7
    for _ in range(100):
        a = Trunc(F7, m, [F7.zero] + [F7.random_element(rng) for _ in range(m - 1)])
        assert log_circ(trunc_exp(a)) == a
        u = rand_unit(F7, m, rng)
        v = trunc_exp(log_circ(u))
        assert v.scaled(u.c0) == u


def test_ell_examples(F5, F7):
    assert ell_i(Trunc(F5, 3, [1, 1]), 1) == F5.one
    assert ell_i(Trunc(F5, 3, [1, 1]), 2) == -F5(2).inverse()
    for field in (F5, F7):
        p = field.p
        u = Trunc(field, p, [field.one] + [field.zero] * (p - 2) + [field.one])
        assert ell_i(u, p - 1) == field.one
    with pytest.raises(IndexOutOfRange):
        ell_i(Trunc(F5, 3, [1, 1]), 3)


@pytest.mark.parametrize("p", [5, 7])
def test_decompose_recompose_roundtrip(p):
    field = Fq(p)
    rng = spawn(3, "decomp", p)
    for _ in range(500):
        u = rand_unit(field, p, rng)
        d = unit_decompose(u)
        assert unit_recompose(d) == u
        assert d.a0 == u.c0
        assert unit_decompose(unit_recompose(d)) == d


def test_decompose_examples(F5):
    c = Trunc.constant(F5, 4, F5(3))
    d = unit_decompose(c)
    assert d.a0 == F5(3) and all(e.is_zero for e in d.exps)
    beta = F5(2)
    u = Trunc.constant(F5, 4, F5(3)) * trunc_exp(Trunc(F5, 4, [0, 0, beta]))
    d = unit_decompose(u)
    assert d.a0 == F5(3)
    assert list(d.exps) == [F5.zero, beta, F5.zero]


def test_reduce_commutes_with_ops(F7):
    rng = spawn(4, "reduce-comm")
    for _ in range(100):
        a = Trunc(F7, 6, [F7.random_element(rng) for _ in range(6)])
        b = Trunc(F7, 6, [F7.random_element(rng) for _ in range(6)])
        for m2 in (2, 3, 5):
            assert (a + b).reduce_to(m2) == a.reduce_to(m2) + b.reduce_to(m2)
            assert (a * b).reduce_to(m2) == a.reduce_to(m2) * b.reduce_to(m2)


@given(st.integers(2, 7))
def test_shift_truncates(m):
    F7 = Fq(7)
    t = Trunc.t(F7, m) if m >= 2 else None
    one = Trunc.one(F7, m)
    assert one.shifted(m).is_zero
    assert one.shifted(1) == (t if m >= 2 else one)


def test_hensel_root_lifts_simple_roots(F5):
    rng = spawn(5, "hensel")
    m = 5
    for _ in range(50):
        # polynomial with a simple root at a random point mod t
        r0 = F5.random_element(rng)
        other = r0 + F5.one + F5.from_int(rng.randrange(4))
        coeffs = [Trunc(F5, m, [(-r0)]) + Trunc.t(F5, m).scaled(F5.random_element(rng)),
                  Trunc.one(F5, m)]
        # (z - r0 - eps t)(z - other)
        lin2 = [Trunc.constant(F5, m, -other), Trunc.one(F5, m)]
        from charp_dilog.tpoly import rp_mul
        poly = rp_mul(coeffs, lin2, Trunc.zero(F5, m))
        root = hensel_root_zpoly(poly, r0)
        assert rp_eval(poly, root, Trunc.zero(F5, m)).is_zero
        assert root.c0 == r0


def test_hensel_rejects_double_roots(F5):
    m = 5
    one = Trunc.one(F5, m)
    # (z - 1)^2 has no simple root at 1
    poly = [one, Trunc.constant(F5, m, F5(-2)), one]
    with pytest.raises(HenselFailure):
        hensel_root_zpoly(poly, F5.one)
