import random

import pytest

from ncprod.algebra import AlgAutomorphism
from ncprod.factorset import AbelianFactorSet
from ncprod.numfield import RelAutomorphism, RelativeExtension
from ncprod.twisted import (
    TwistedRingSpec,
    add_twist,
    central_params,
    numerics_cyclic_global,
    numerics_iterated,
    numerics_report,
    numerics_scalar_extension,
    random_element,
    rank_report,
    scalar_extension,
)
from ncprod.worked import load_biquadratic


def q_basis(ring):
    """Q-basis of the coefficient algebra D over Q(sqrt3, sqrt-7)."""
    K = ring.A.K
    base = K.base if isinstance(K, RelativeExtension) else K
    field = [base.one(), base.tag("sqrt3"), base.tag("sqrt-7"), base.tag("sqrt-21")]
    if isinstance(K, RelativeExtension):
        field = [K.embed(c) for c in field] + [K.embed(c) * K.gen() for c in field]
    return [e * c for e in ring.A.basis() for c in field]


@pytest.fixture(scope="module")
def ring8(fs8):
    return TwistedRingSpec(fs8)


@pytest.fixture(scope="module")
def ring16(ring8):
    K = ring8.A.K
    K2 = RelativeExtension(K, [-37, 0, 1], label="K(sqrt37)", gen_name="r")
    ext, lift = scalar_extension(ring8, K2)
    D2 = ext.A
    flip = RelAutomorphism(K2, K.identity(), -K2.gen())
    return add_twist(ext, AlgAutomorphism(D2, flip, D2.i(), D2.j()), 1, 2), lift


@pytest.fixture(scope="module")
def cyclic_ring(tower):
    K, sigma, L, tau = tower
    a = K.gen()
    alpha = L.embed(2 * (a * a + 2 * a - 1))
    fs = AbelianFactorSet(L, [tau], [[L.one()]], [alpha], [3])
    return TwistedRingSpec(fs)


def test_swap_rule(ring8, fs8):
    x1, x2 = ring8.x(1), ring8.x(2)
    assert x2 * x1 == ring8.const(fs8.u[1][0]) * x1 * x2
    assert x1 * x2 == ring8.const(fs8.u[0][1]) * x2 * x1


def test_coefficient_rule(ring8, fs8):
    D = fs8.algebra
    s7 = D.scalar(D.K.tag("sqrt-7"))
    x1 = ring8.x(1)
    # sigma1 fixes sqrt-7
    assert x1 * ring8.const(s7) == ring8.const(s7) * x1
    s3 = D.scalar(D.K.tag("sqrt3"))
    assert x1 * ring8.const(s3) == -(ring8.const(s3) * x1)
    assert x1 * ring8.const(D.i()) == ring8.const(fs8.sigma_tilde[0](D.i())) * x1


def test_powers_give_alpha_times_center(ring8, fs8):
    ts, rep = central_params(ring8)
    assert rep.passed
    for k in range(2):
        assert ring8.x(k + 1) ** 2 == ring8.const(fs8.alpha[k]) * ts[k]
    assert ts[0] * ts[1] == ts[1] * ts[0]


def test_rank_bookkeeping(ring8):
    rank, rep = rank_report(ring8, 2)
    assert rep.passed and len(rep.checks) == 16
    assert rank == 4 * 4


def test_associativity_and_distributivity_ring8(ring8):
    rng = random.Random(2024)
    basis = q_basis(ring8)
    for _ in range(120):
        x, y, z = (random_element(ring8, rng, coeff_bound=1, max_terms=2, coeff_basis=basis) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


def test_swap_confluence(ring8):
    x1, x2 = ring8.x(1), ring8.x(2)
    assert (x2 * x1) * x1 == x2 * (x1 * x1)
    assert (x2 * x2) * x1 == x2 * (x2 * x1)
    assert ((x2 * x1) * x2) * x1 == x2 * (x1 * (x2 * x1))


def test_bad_factor_set_rejected():
    fs = load_biquadratic(mutate="u-times-j").factor_set()
    with pytest.raises(ValueError):
        TwistedRingSpec(fs)


def test_scalar_extension_ring(ring16):
    ring, lift = ring16
    assert ring.r == 3
    _, rep = central_params(ring)
    assert rep.passed
    r = ring.A.K.gen()
    x3 = ring.x(3)
    sq = ring.const(ring.A.scalar(r))
    assert x3 * sq == -(sq * x3)
    assert x3 * ring.x(1) == ring.x(1) * x3


def test_associativity_ring16(ring16):
    ring, _ = ring16
    rng = random.Random(37)
    basis = q_basis(ring)
    for _ in range(100):
        x, y, z = (random_element(ring, rng, coeff_bound=1, max_terms=2, coeff_basis=basis,
                                  exp_bound=[2, 2, 2]) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


def test_trivial_scalar_extension_keeps_ring(ring8):
    K = ring8.A.K
    K1 = RelativeExtension(K, [0, 1])  # degree one: y = 0
    ext, lift = scalar_extension(ring8, K1)
    D = ring8.A
    for a in (D.i(), D.j(), D.scalar(K.tag("sqrt3"))):
        assert ext.x(1) * ext.const(lift(a)) == ext.const(lift(ring8.sigma[0](a))) * ext.x(1)
    x1, x2 = ext.x(1), ext.x(2)
    assert x2 * x1 == ext.const(lift(ring8.u[1][0])) * x1 * x2


def test_cyclic_ring_over_field(cyclic_ring, tower):
    K, sigma, L, tau = tower
    x = cyclic_ring.x(1)
    x3 = x ** 3
    b = L.gen()
    assert x * cyclic_ring.const(b) == cyclic_ring.const(tau(b)) * x
    # x^3 is alpha times a central parameter, and itself commutes with L
    assert x3 * cyclic_ring.const(b) == cyclic_ring.const(b) * x3
    ts, rep = central_params(cyclic_ring)
    assert rep.passed
    rank, rr = rank_report(cyclic_ring, 1)
    assert rr.passed and rank == 3


def test_associativity_cyclic_ring(cyclic_ring, tower):
    K, sigma, L, tau = tower
    rng = random.Random(9)
    basis = [L.embed(c) * L.gen() ** k for k in range(3) for c in K.basis()]
    for _ in range(100):
        x, y, z = (random_element(cyclic_ring, rng, coeff_bound=2, max_terms=3, coeff_basis=basis) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_numerics_examples():
    n8 = numerics_iterated([2, 2], 2, 2, 2, [(4, 2)])
    assert (n8.deg, n8.ind, n8.exp) == (8, 8, 8)
    n9 = numerics_cyclic_global(3, 3, 3, [(3, 3), (3, 3)])
    assert (n9.deg, n9.ind, n9.exp) == (9, 9, 9)
    n16 = numerics_scalar_extension(2, 8, 8, 8)
    assert (n16.deg, n16.ind, n16.exp) == (16, 16, 8)
    assert numerics_report("scalar-ext", n=2, deg_B=8, ind_B=8, exp_B=8) == n16


def test_numerics_needs_enough_local_data():
    # with only a place of local degree 1 the index of the crossed product is not pinned
    with pytest.raises(ValueError):
        numerics_iterated([2, 2], 2, 2, 2, [(1, 2)])
    with pytest.raises(ValueError):
        numerics_report("nonsense")
