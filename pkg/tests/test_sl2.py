import pytest
from hypothesis import given, strategies as st

from metaeis.errors import InputError
from metaeis.laurent import Laurent
from metaeis.sl2 import (SL2Context, ThetaModuleElement, aut_element, eis_expand, fundamental_hecke,
                         hecke_of_irreducible, parity, stalk_table, theta_eigen_check, transport)

cell = ThetaModuleElement.cell


def elt(*pairs):
    return ThetaModuleElement.from_pairs(pairs)


def test_fundamental_rules():
    even, odd = SL2Context(4), SL2Context(3)
    assert fundamental_hecke(even, cell(3)) == elt((4, 0), (2, 0))
    assert fundamental_hecke(even, cell(1)) == elt((0, 1), (0, -1))
    assert fundamental_hecke(even, cell(0)) == elt((1, 1), (1, -1))
    assert fundamental_hecke(odd, cell(1)) == elt((0, 1), (0, -1), (2, 0))
    assert fundamental_hecke(odd, cell(0)) == elt((0, 2), (0, 0), (0, -2))
    assert fundamental_hecke(odd, cell(4)) == elt((5, 0), (4, 0), (3, 0))
    assert fundamental_hecke(odd, cell(2, 3)) == elt((3, 3), (2, 3), (1, 3))


def test_higher_hecke_examples():
    for n in [2, 3, 4]:
        assert hecke_of_irreducible(SL2Context(n), 0, cell(5, 1)) == cell(5, 1)
    assert hecke_of_irreducible(SL2Context(2), 2, cell(0)) == elt((0, 2), (0, 0), (0, -2))
    # five-dimensional irreducible under the principal grading
    got = hecke_of_irreducible(SL2Context(3), 2, cell(0))
    assert got == cell(0).times(Laurent({4: 1, 2: 1, 0: 1, -2: 1, -4: 1}))


def test_eigen_examples():
    res = theta_eigen_check(SL2Context(3), 1)
    assert res["holds"] and str(res["eigen_poly"]) == "v^2+1+v^-2"
    res = theta_eigen_check(SL2Context(2), 1)
    assert res["holds"] and str(res["eigen_poly"]) == "v+v^-1"
    for n in [1, 2, 3, 6]:
        res = theta_eigen_check(SL2Context(n), 0)
        assert res["holds"] and res["eigen_poly"] == Laurent.one()
    assert aut_element(SL2Context(4)) == cell(0) + cell(1)
    assert aut_element(SL2Context(5)) == cell(0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_eigen_property(n, m):
    res = theta_eigen_check(SL2Context(n), m)
    assert res["holds"]
    # rank-one oracle: odd n doubles the exponents
    if n % 2:
        expected = {2 * (m - j): 1 for j in range(2 * m + 1)}
    else:
        expected = {m - 2 * j: 1 for j in range(m + 1)}
    assert res["eigen_poly"] == Laurent(expected)


def test_eis_expand_examples():
    ctx = SL2Context(2)
    assert eis_expand(ctx, 3, True, 10) == cell(3)
    assert eis_expand(ctx, 3, False, 9) == elt((3, 0), (5, 0), (7, 0), (9, 0))
    assert eis_expand(ctx, 0, False, 8) == elt((0, 1), (0, -1), (4, 0), (6, 0), (8, 0))
    ctx = SL2Context(3)
    assert eis_expand(ctx, 3, False, 4) == elt((1, 0), (2, 0), (3, 0), (4, 0))
    assert eis_expand(ctx, 0, False, 4) == elt((0, 1), (0, -1), (2, 0), (3, 0), (4, 0))
    with pytest.raises(InputError):
        eis_expand(SL2Context(4), 3, True, 5)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_eis_hecke_consistency(n):
    ctx = SL2Context(n)
    k_max = 14
    step = ctx.n // ctx.e
    for d in range(ctx.e * step, 6 * ctx.e, ctx.e):
        for nontrivial in [False, True]:
            lhs = fundamental_hecke(ctx, eis_expand(ctx, d, nontrivial, k_max)).truncate(k_max - 2)
            if n % 2 == 0:
                degrees = [d + ctx.e, d - ctx.e]
            else:
                degrees = [d + n, d, d - n]
            rhs = ThetaModuleElement()
            for x in degrees:
                if x > 0 or (x == 0 and not nontrivial):
                    rhs = rhs + eis_expand(ctx, x, nontrivial, k_max)
            if nontrivial and 0 in degrees:
                continue
            assert lhs == rhs.truncate(k_max - 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@given(data=st.data())
def test_hecke_commutativity_and_positivity(n, data):
    ctx = SL2Context(n)
    m1 = data.draw(st.integers(0, 3))
    m2 = data.draw(st.integers(0, 3))
    k = data.draw(st.integers(0, 6))
    r = data.draw(st.integers(-3, 3))
    x = cell(k, r)
    a = hecke_of_irreducible(ctx, m1, hecke_of_irreducible(ctx, m2, x))
    b = hecke_of_irreducible(ctx, m2, hecke_of_irreducible(ctx, m1, x))
    assert a == b
    assert all(v > 0 for v in a.coeffs.values())


@pytest.mark.parametrize("n", [2, 4, 6])
def test_parity_behaviour(n):
    ctx = SL2Context(n)
    for k in range(8):
        p = parity(ctx, k * ctx.e)
        for c in fundamental_hecke(ctx, cell(k)).cells():
            assert parity(ctx, c * ctx.e) != p
        for c in hecke_of_irreducible(ctx, 2, cell(k)).cells():
            assert parity(ctx, c * ctx.e) == p


def test_parity_examples():
    assert parity(SL2Context(4), 4) == "+"
    assert parity(SL2Context(4), 2) == "-"
    assert parity(SL2Context(3), 3) is None


def test_stalk_table_examples():
    assert stalk_table(SL2Context(2), 1, 3) == {"vanishes": False, "shift": 2}
    assert stalk_table(SL2Context(3), 3, 5)["vanishes"]
    assert stalk_table(SL2Context(2), 0, 2) == {"vanishes": False, "shift": 1}
    with pytest.raises(InputError):
        stalk_table(SL2Context(2), 3, 3)


@pytest.mark.parametrize("pair", [(2, 4), (3, 5), (4, 6), (1, 3)])
def test_transport_commutes(pair):
    a, b = SL2Context(pair[0]), SL2Context(pair[1])
    for k in range(6):
        x = cell(k)
        assert transport(a, b, fundamental_hecke(a, x)) == fundamental_hecke(b, transport(a, b, x))
    assert transport(a, a, cell(1, 2)) == cell(1, 2)
    assert transport(SL2Context(2), SL2Context(4), cell(1)) == cell(1)
    with pytest.raises(InputError, match="parity"):
        transport(SL2Context(2), SL2Context(3), cell(0))
