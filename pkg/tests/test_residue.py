import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncprod.exact import UniPoly
from ncprod.numfield import RelAutomorphism
from ncprod.residue import (
    FiniteField,
    RelativeResidueMap,
    frobenius_match,
    is_square,
    make_residue_map,
    tame_symbol,
)


def conic_solvable(p: int, va: int, u: int, vb: int, w: int) -> bool:
    """Does z^2 = a x^2 + b y^2 have a nonzero solution over Q_p, a = p^va u, b = p^vb w?

    Brute force over Z/p^3.  With va, vb <= 1 every primitive solution mod p^3
    has a partial derivative of valuation <= 1, so it lifts by Hensel.
    """
    m = p ** 3
    a, b = p ** va * u % m, p ** vb * w % m
    r = np.arange(m, dtype=np.int64)
    sq = r * r % m
    unit = r % p != 0
    unit_sq = np.unique(sq[unit])
    nonunit_sq = np.unique(sq[~unit])
    vals = (a * sq[:, None] + b * sq[None, :]) % m
    xy_primitive = unit[:, None] | unit[None, :]
    if np.isin(vals, unit_sq).any():
        return True
    return bool(np.isin(vals[xy_primitive], nonunit_sq).any())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_tame_symbol_matches_conic_oracle(p):
    F = FiniteField(p)
    mismatches = []
    for va in (0, 1):
        for vb in (0, 1):
            for u in range(1, p):
                for w in range(1, p):
                    got = tame_symbol(va, F(u), vb, F(w))
                    want = 1 if conic_solvable(p, va, u, vb, w) else -1
                    if got != want:
                        mismatches.append((va, u, vb, w, got, want))
    assert not mismatches


def test_tame_symbol_examples():
    F3 = FiniteField(3)
    # (3, 2)_3: 2 is not a square mod 3
    assert tame_symbol(1, F3(1), 0, F3(2)) == -1
    # (3, 3)_3 = (3, -1)_3 = -1
    assert tame_symbol(1, F3(1), 1, F3(1)) == -1
    F7 = FiniteField(7)
    assert tame_symbol(0, F7(3), 0, F7(5)) == 1


def test_tame_symbol_rejects_even_characteristic():
    F2 = FiniteField(2)
    with pytest.raises(ValueError):
        tame_symbol(1, F2(1), 0, F2(1))


def test_is_square_examples():
    assert not is_square(FiniteField(3)(-1))
    assert is_square(FiniteField(7)(2))
    F9 = FiniteField(3, [1, 0, 1])
    assert is_square(F9(-1))  # F_9 contains a square root of -1
    with pytest.raises(ValueError):
        is_square(F9.zero())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_is_square_counts(p):
    F = FiniteField(p, [2, 1, 1]) if p == 5 else FiniteField(p)
    units = [x for x in F.elements() if not x.is_zero()]
    assert sum(is_square(x) for x in units) == len(units) // 2


prime = st.sampled_from([3, 5, 7, 11, 13])


@given(prime, st.integers(0, 3), st.integers(1, 12), st.integers(0, 3), st.integers(1, 12))
def test_tame_symbol_symmetric(p, va, u, vb, w):
    F = FiniteField(p)
    if u % p == 0 or w % p == 0:
        return
    assert tame_symbol(va, F(u), vb, F(w)) == tame_symbol(vb, F(w), va, F(u))


@given(prime, st.integers(0, 3), st.integers(1, 12), st.integers(0, 3), st.integers(1, 12), st.integers(0, 3), st.integers(1, 12))
def test_tame_symbol_bimultiplicative(p, va, u, va2, u2, vb, w):
    F = FiniteField(p)
    if u % p == 0 or u2 % p == 0 or w % p == 0:
        return
    lhs = tame_symbol(va + va2, F(u) * F(u2), vb, F(w))
    assert lhs == tame_symbol(va, F(u), vb, F(w)) * tame_symbol(va2, F(u2), vb, F(w))


def test_finite_field_construction():
    with pytest.raises(ValueError):
        FiniteField(4)
    with pytest.raises(ValueError):
        FiniteField(3, [2, 0, 1])  # x^2 + 2 = (x+1)(x+2) mod 3
    F8 = FiniteField(2, [1, 0, 1, 1])
    assert F8.size == 8
    x = F8.gen()
    assert x ** 7 == 1 and x ** 8 == x
    with pytest.raises(ValueError):
        F8.extension([1, 1, 0, 1])  # irreducible over F_2, so it splits over F_8
    T = F8.extension([x, 1, 1])  # y^2 + y + x, trace of x is 1
    assert T.size == 64 and T.gen() ** 64 == T.gen()


@given(st.lists(st.integers(0, 6), min_size=2, max_size=2), st.lists(st.integers(0, 6), min_size=2, max_size=2))
def test_finite_field_axioms(xs, ys):
    F = FiniteField(7, [-3, 0, 1])
    x, y = F(xs), F(ys)
    assert x * y == y * x
    assert (x + y) ** 7 == x ** 7 + y ** 7
    if not x.is_zero():
        assert x * x.inverse() == 1


def test_residue_map_rejects_non_root(cubic):
    K, _ = cubic
    with pytest.raises(ValueError):
        make_residue_map(K, 7, FiniteField(7), 3)
    rm = make_residue_map(K, 7, FiniteField(7), 2)
    assert rm(K.gen()) == 2


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3), st.lists(st.integers(-20, 20), min_size=3, max_size=3),
       st.integers(1, 6))
def test_residue_map_is_ring_homomorphism(cubic, xs, ys, d):
    K, _ = cubic
    rm = make_residue_map(K, 7, FiniteField(7), 2)
    x, y = K(xs) / d, K(ys)
    if d % 7 == 0:
        return
    assert rm(x * y) == rm(x) * rm(y)
    assert rm(x + y) == rm(x) + rm(y)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_biquadratic_residue_map_is_ring_homomorphism(biquad, xs, ys):
    K, _ = biquad
    F9 = FiniteField(3, [1, 0, 1])
    rm = make_residue_map(K, 3, F9, F9.gen())
    s3, s7 = K.tag("sqrt3"), K.tag("sqrt-7")
    x = xs[0] + xs[1] * s3 + xs[2] * s7 + xs[3] * s3 * s7
    y = ys[0] + ys[1] * s3 + ys[2] * s7 + ys[3] * s3 * s7
    assert rm(x * y) == rm(x) * rm(y)


def _relative_map(tower, p, base_modulus, root):
    K, sigma, L, tau = tower
    base = FiniteField(p) if base_modulus is None else FiniteField(p, base_modulus)
    rm = make_residue_map(K, p, base, base.gen() if root == "gen" else root)
    top = base.extension([rm(c) for c in L.g])
    return RelativeResidueMap(L, rm, top, top.gen())


@pytest.mark.parametrize("p, modulus, root, expected", [(7, None, 2, 1), (2, [1, 0, 1, 1], "gen", 2)])
def test_frobenius_matches_exactly_one_group_element(tower, p, modulus, root, expected):
    K, sigma, L, tau = tower
    rrm = _relative_map(tower, p, modulus, root)
    assert rrm.certifies_irreducible()
    group = [L.identity(), tau, tau.compose(tau)]
    hits = [k for k, g in enumerate(group) if frobenius_match(rrm, g)]
    assert hits == [expected]


def test_frobenius_on_trivial_extension(cubic):
    from ncprod.numfield import RelativeExtension

    K, _ = cubic
    L = RelativeExtension(K, [-1, 1])
    rm = make_residue_map(K, 7, FiniteField(7), 2)
    F = FiniteField(7)
    rrm = RelativeResidueMap(L, rm, F, 1)
    assert frobenius_match(rrm, L.identity())


def test_frobenius_rejects_candidate_moving_base(tower):
    K, sigma, L, tau = tower
    rrm = _relative_map(tower, 7, None, 2)
    bad = RelAutomorphism.__new__(RelAutomorphism)
    bad.base_aut, bad.gen_image = sigma, L.gen()
    with pytest.raises(ValueError):
        frobenius_match(rrm, bad)


def test_reduced_polynomial_with_root_is_not_certified(cubic):
    from ncprod.numfield import RelativeExtension

    K, _ = cubic
    L = RelativeExtension(K, [-2, 0, 1])  # y^2 - 2 has the root 3 mod 7
    rm = make_residue_map(K, 7, FiniteField(7), 2)
    rrm = RelativeResidueMap(L, rm, FiniteField(7), 3)
    assert not rrm.certifies_irreducible()


def test_residue_field_of_eisenstein_shift():
    # f(x+2) is Eisenstein at 7, so f = (x-2)^3 mod 7
    f = UniPoly([-1, -2, 1, 1])
    shifted = f(UniPoly([2, 1]))
    assert all(c % 7 == 0 for c in shifted.coeffs[:-1]) and shifted.coeffs[0] % 49 != 0
