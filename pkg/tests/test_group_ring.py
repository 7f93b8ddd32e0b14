import itertools
import random

import pytest

from unitlift import (
    CrtBasis,
    GaloisRing,
    GroupRing,
    IdealDescriptor,
    MatrixRing,
    NotAUnitError,
    PreconditionError,
    ShapeError,
    ZMod,
    chain_ring_units,
    count_group_ring_units,
    cyclic,
    direct_product,
    group_ring_mul,
    invert,
    invert_zmg,
    invert_zmg_crt,
    invert_zmg_radical,
    lift_inverse_group_ring,
    symmetric,
)
from unitlift.group_ring import decompose_zmg, radical_coefficients, zmg_unit_count
from unitlift.oracle import count_units as oracle_count
from unitlift.oracle import enumerate_units

from conftest import c5_ring, s3_element

F_C5 = [2, 24, 0, 0, 0]
G_C5 = [1, 3, 4, 2, 1]


def test_c5_intermediates():
    R = c5_ring()
    f, g = R(F_C5), R(G_C5)
    cert = lift_inverse_group_ring(f, g, IdealDescriptor.principal(ZMod(25), 5), 2, 5)
    assert cert.product == R([1, 5, 5, 0, 0]) == f * g
    assert cert.power == R([1, 20, 20, 0, 0])
    assert cert.inverse == R([11, 18, 9, 17, 21])
    assert cert.exponent == 5


def test_group_ring_mul_convolution():
    R = c5_ring()
    a = R([0, 1, 0, 0, 0])
    assert group_ring_mul(a, a) == R([0, 0, 1, 0, 0])
    assert group_ring_mul(R(F_C5), R(G_C5)) == R([1, 5, 5, 0, 0])
    with pytest.raises(ShapeError):
        group_ring_mul(ZMod(5)(1), ZMod(5)(1))


def test_group_ring_associativity_s3():
    R = GroupRing(symmetric(3), ZMod(4))
    rng = random.Random(1)
    for _ in range(30):
        a, b, c = (R.from_coords([rng.randrange(4) for _ in range(6)]) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("n", [1, 2])
def test_s3_f_example(n, s3):
    f = s3_element(n, [2, 8, 0], s3)
    cert = invert(f)
    assert cert.inverse == s3_element(n, [7, 8, 4], s3)
    assert cert.exponent == 3


@pytest.mark.parametrize("n", [1, 2])
def test_s3_x_correct_inverse(n, s3):
    x = s3_element(n, [2, 2, 0], s3)
    inv = invert(x).inverse
    assert inv == s3_element(n, [7, 2, 7], s3)
    assert x * inv == x.ring.one == inv * x


def test_s3_x_stated_value_is_not_an_inverse(s3):
    x = s3_element(1, [2, 2, 0], s3)
    claimed = s3_element(1, [4, 1, 4], s3)
    assert x * claimed == s3_element(1, [7, 1, 1], s3)


def test_s3_n1_against_oracle(s3):
    R = GroupRing(s3[0], MatrixRing(1, ZMod(3)))
    units = enumerate_units(R)
    for x, inv in units:
        assert invert(x).inverse == inv


def test_chain_ring_unit_counts():
    assert chain_ring_units(ZMod(4), cyclic(2)).count() == 8
    assert chain_ring_units(ZMod(9), cyclic(1)).count() == 6
    assert chain_ring_units(GaloisRing(2, 2, (1, 1, 1)), cyclic(1)).count() == 12
    assert chain_ring_units(ZMod(9), cyclic(2)).count() == oracle_count(GroupRing(cyclic(2), ZMod(9)))


def test_chain_ring_unit_iteration_matches_oracle():
    cru = chain_ring_units(ZMod(4), cyclic(2))
    got = sorted((c.x.coords, c.inverse.coords) for c in cru)
    want = sorted((u.coords, i.coords) for u, i in enumerate_units(cru.ring))
    assert got == want


def test_chain_ring_units_needs_abelian():
    with pytest.raises(PreconditionError):
        chain_ring_units(ZMod(4), symmetric(3))


def test_chain_ring_units_needs_local_base():
    with pytest.raises(PreconditionError):
        chain_ring_units(ZMod(6), cyclic(2))


def _c(order, m):
    return GroupRing(cyclic(order), ZMod(m))


def test_zmg_crt_example():
    basis = CrtBasis.of(6)
    f2, g2 = _c(2, 2)([1, 0]), _c(2, 2)([1, 0])
    f3, g3 = _c(2, 3)([2, 0]), _c(2, 3)([2, 0])
    cert = invert_zmg_crt([f2, f3], [g2, g3], basis)
    assert cert.x == _c(2, 6)([5, 0])
    assert cert.inverse == _c(2, 6)([5, 0])
    assert cert.method == "crt"


def test_zmg_crt_rejects_wrong_component_inverse():
    basis = CrtBasis.of(6)
    with pytest.raises(NotAUnitError) as info:
        invert_zmg_crt([_c(2, 2)([1, 0]), _c(2, 3)([2, 0])], [_c(2, 2)([1, 0]), _c(2, 3)([1, 0])], basis)
    assert info.value.failing_prime == 3


def test_radical_coefficients():
    P, k, coeffs = radical_coefficients(12)
    assert (P, k) == (6, 2)
    assert coeffs == [(2, 3), (3, 4)]
    for p, tc in coeffs:
        assert tc % p == 1 and all(tc % q == 0 for q, _ in coeffs if q != p)


def test_radical_examples():
    f2, f3 = _c(1, 2)([1]), _c(1, 3)([2])
    cert = invert_zmg_radical([f2, f3], [f2, f3], 12)
    assert cert.x == _c(1, 12)([11]) and cert.inverse == _c(1, 12)([11])
    assert cert.exponent == 6
    cert6 = invert_zmg_radical([_c(2, 2)([0, 1]), _c(2, 3)([2, 0])],
                               [_c(2, 2)([0, 1]), _c(2, 3)([2, 0])], 6)
    assert cert6.exponent == 1
    assert cert6.x * cert6.inverse == cert6.x.ring.one


def test_radical_x_must_agree_mod_rad():
    f2, f3 = _c(1, 2)([1]), _c(1, 3)([2])
    with pytest.raises(PreconditionError):
        invert_zmg_radical([f2, f3], [f2, f3], 12, x=_c(1, 12)([7]))


def _units_mod(p, order):
    R = _c(order, p)
    return [(u, i) for u, i in enumerate_units(R)]


@pytest.mark.parametrize("m", [6, 12, 36])
@pytest.mark.parametrize("order", [1, 2, 3])
def test_crt_and_radical_agree(m, order):
    basis = CrtBasis.of(m)
    primes = [p for p, _ in basis.factors]
    P = 1
    for p in primes:
        P *= p
    rng = random.Random(m * 10 + order)
    pools = [_units_mod(p, order) for p in primes]
    combos = list(itertools.product(*pools))
    for combo in rng.sample(combos, min(25, len(combos))):
        fs = [u for u, _ in combo]
        gs = [i for _, i in combo]
        crt = invert_zmg_crt(fs, gs, basis)
        rad = invert_zmg_radical(fs, gs, m)
        assert all((a - b) % P == 0 for a, b in zip(crt.x.coords, rad.x.coords))
        assert rad.x * rad.inverse == rad.x.ring.one
        via_x = invert_zmg_radical(fs, gs, m, x=crt.x)
        assert via_x.inverse == crt.inverse


@pytest.mark.parametrize("m,order", [(6, 2), (12, 2), (36, 1)])
def test_invert_zmg_against_oracle(m, order):
    for u, inv in enumerate_units(_c(order, m)):
        assert invert_zmg(u).inverse == inv


def test_decompose_non_unit():
    with pytest.raises(NotAUnitError) as info:
        decompose_zmg(_c(2, 6)([1, 1]))
    assert info.value.failing_prime == 2


@pytest.mark.parametrize("ring", [_c(2, 4), _c(2, 9), _c(2, 6), _c(3, 4), _c(2, 8)], ids=repr)
def test_counts_against_oracle(ring):
    assert count_group_ring_units(ring) == oracle_count(ring)


def test_zmg_unit_count():
    assert zmg_unit_count(4, cyclic(2)) == 8
    assert zmg_unit_count(6, cyclic(2)) == 8
    assert zmg_unit_count(12, cyclic(2)) == oracle_count(_c(2, 12))
    assert zmg_unit_count(36, cyclic(1)) == 12


def test_c5_count():
    residue = count_group_ring_units(_c(5, 5))
    assert residue == 2500
    assert count_group_ring_units(c5_ring()) == 5 ** 5 * residue == 7812500


def test_groups_axioms():
    for G in (cyclic(4), symmetric(3), direct_product(cyclic(2), cyclic(3))):
        e = 0
        for a in range(G.order):
            assert G.mul(a, e) == a == G.mul(e, a)
            assert G.mul(a, G.inverses[a]) == e
            for b in range(G.order):
                for c in range(G.order):
                    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert not symmetric(3).is_abelian
    assert direct_product(cyclic(2), cyclic(3)).is_abelian


def test_zmg_needs_abelian():
    R2, R3 = GroupRing(symmetric(3), ZMod(2)), GroupRing(symmetric(3), ZMod(3))
    with pytest.raises(PreconditionError):
        invert_zmg_radical([R2.one, R3.one], [R2.one, R3.one], 6)
