import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from metaeis.metaplectic import (NotInSublattice, build_levi, build_metaplectic, center_elements,
                                 central_twist, component_nonvanishing, dual_group_profile,
                                 twisted_weyl_shift, xi_character)
from metaeis.rootdata import WeylElement, build_root_datum

GRID = [(t, n) for t in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] for n in range(1, 7)]


def meta(label, n):
    return build_metaplectic(build_root_datum(label), n)


def test_a1_sublattices():
    assert meta("A1", 3).lambda_sharp == ((3,),)
    assert meta("A1", 3).dual_simple_roots == ((3,),)
    assert meta("A1", 4).lambda_sharp == ((2,),)
    assert meta("A1", 4).dual_simple_roots == ((4,),)
    assert meta("A1", 1).lambda_sharp == ((1,),)
    assert meta("A1", 1).dual_simple_roots == ((1,),)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("n", [2, 4, 6])
def test_symplectic_even_cover(m, n):
    d = meta(f"C{m}", n)
    half = n // 2
    assert d.lambda_sharp == tuple(tuple(half * int(i == j) for j in range(m)) for i in range(m))
    expected = [half] * (m - 1) + [n]
    assert d.dual_simple_roots == tuple(tuple(expected[i] * int(i == j) for j in range(m)) for i in range(m))


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "D4"])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_simply_laced_dual_roots(label, n):
    d = meta(label, n)
    assert d.dual_simple_roots == tuple(tuple(n * int(i == j) for j in range(d.rank)) for i in range(d.rank))


def test_profiles():
    p = dual_group_profile(meta("A1", 2))
    assert p["dual_cartan_type"] == "A1" and p["cocenter"].describe() == "Z/2"
    p = dual_group_profile(meta("A1", 3))
    assert p["dual_cartan_type"] == "A1" and p["cocenter"].describe() == "trivial"
    p = dual_group_profile(meta("B3", 2))
    assert p["xi_report"]["injective"] and not p["xi_report"]["surjective_onto_Cn"]
    assert dual_group_profile(meta("B3", 4))["xi_report"]["surjective_onto_Cn"]


@pytest.mark.parametrize("label,n", GRID)
def test_membership_law_matches_basis(label, n):
    d = meta(label, n)
    count = 0
    for mu in itertools.product(range(n), repeat=d.rank):
        law = all(d.base.form(mu, tuple(int(k == i) for k in range(d.rank))) % n == 0 for i in range(d.rank))
        assert law == d.in_lambda_sharp(mu)
        if law:
            d.sharp_coordinates(mu)
            count += 1
    # index of the sublattice inside the box n*Lambda
    assert count * d.index() == n ** d.rank
    assert dual_group_profile(d)["xi_report"]["injective"]


@pytest.mark.parametrize("label,n", GRID)
def test_delta_and_dual_cartan(label, n):
    d = meta(label, n)
    for i in range(d.rank):
        assert d.delta[i] == Fraction(d.base.iota[i][i], 2 * n).denominator
        for j in range(d.rank):
            a, b = d.dual_simple_roots[i], d.dual_simple_roots[j]
            assert d.dual_cartan[i][j] * d.base.form(a, a) == 2 * d.base.form(a, b)
    assert all(2 * c == int(2 * c) for c in d.rho_n)


@pytest.mark.parametrize("label,n", [("A2", 2), ("B2", 3), ("G2", 2), ("C3", 4), ("B3", 2)])
@given(data=st.data())
def test_sharp_is_weyl_stable_and_shift_lands(label, n, data):
    d = meta(label, n)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=d.rank, max_size=d.rank))
    mu = tuple(sum(c * b[j] for c, b in zip(coeffs, d.lambda_sharp)) for j in range(d.rank))
    w = WeylElement(tuple(data.draw(st.lists(st.integers(0, d.rank - 1), max_size=8))))
    v = WeylElement(tuple(data.draw(st.lists(st.integers(0, d.rank - 1), max_size=8))))
    assert d.in_lambda_sharp(d.base.act(w, mu))
    shift = twisted_weyl_shift(d, w)
    assert d.in_lambda_sharp(shift)
    # cocycle: shift(wv) = w(shift(v)) + shift(w)
    lhs = twisted_weyl_shift(d, w * v)
    rhs = tuple(a + b for a, b in zip(d.base.act(w, twisted_weyl_shift(d, v)), shift))
    assert lhs == rhs


def test_twisted_shift_examples():
    d = meta("A1", 3)
    assert d.rho_n == (Fraction(3, 2),)
    assert twisted_weyl_shift(d, WeylElement()) == (0,)
    assert twisted_weyl_shift(d, WeylElement((0,))) == (-3,)


def test_xi_character_examples():
    d = meta("A1", 2)
    chi = xi_character(d, (1,))
    assert not chi.is_trivial
    # oracle: alpha-check/2 evaluated on z = alpha(-1) is -1, i.e. argument 1/2
    assert dict(chi.values)[(Fraction(1, 2),)] == Fraction(1, 2)
    assert xi_character(d, (2,)).is_trivial
    c = meta("C3", 4)
    assert not xi_character(c, (0, 0, 2)).is_trivial
    for label, n in GRID:
        d = meta(label, n)
        for b in d.dual_simple_roots:
            assert xi_character(d, b).is_trivial


def test_central_twist_examples():
    assert central_twist(meta("A1", 4), (0,)).is_trivial
    assert not central_twist(meta("A1", 2), (1,)).is_trivial
    assert central_twist(meta("A1", 4), (4,)).is_trivial
    assert not central_twist(meta("A1", 4), (2,)).is_trivial


def test_xi_rejects_outside_sublattice():
    with pytest.raises(NotInSublattice, match="iota\\(nu, alpha_1\\)"):
        xi_character(meta("A1", 3), (1,))


@pytest.mark.parametrize("label,n", [("A2", 3), ("B2", 2), ("G2", 3), ("C3", 2)])
def test_xi_depends_on_cocenter_class(label, n):
    d = meta(label, n)
    for nu in d.lambda_sharp:
        base = xi_character(d, nu)
        for b in d.dual_simple_roots:
            moved = tuple(x + y for x, y in zip(nu, b))
            assert xi_character(d, moved).values == base.values


def test_center_sizes():
    assert [len(center_elements(build_root_datum(t))) for t in ["A1", "A2", "B2", "G2", "D4", "E6", "E8"]] == \
        [2, 3, 2, 1, 4, 3, 1]


def test_levi_examples():
    d = meta("A2", 1)
    levi = build_levi(d, [0])
    assert levi.outside == (1,)
    assert levi.project((5, 7)) == (7,)
    assert levi.sharp_gp_index() == 1
    a1 = meta("A1", 3)
    torus = build_levi(a1, [])
    assert torus.lambda_m0 == ((1,),)
    assert torus.kappa_m((1,)) == a1.base.kappa[0]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_a1_component_nonvanishing(n):
    levi = build_levi(meta("A1", n), [])
    e = n if n % 2 else n // 2
    for d in range(-12, 13):
        assert component_nonvanishing(levi, (d,)) == (d % e == 0)


def test_a2_component_nonvanishing():
    levi = build_levi(meta("A2", 2), [])
    for a, b in itertools.product(range(-4, 5), repeat=2):
        assert component_nonvanishing(levi, (a, b)) == (a % 2 == 0 and b % 2 == 0)
    assert component_nonvanishing(levi, (0, 0))


@pytest.mark.parametrize("label,n", [("A2", 2), ("B2", 3), ("G2", 2), ("C3", 2), ("B3", 4)])
def test_torus_nonvanishing_is_membership(label, n):
    d = meta(label, n)
    levi = build_levi(d, [])
    for mu in itertools.product(range(-2, 2 * n), repeat=d.rank):
        assert component_nonvanishing(levi, mu) == d.in_lambda_sharp(mu)
