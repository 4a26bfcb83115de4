import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from metaeis.errors import FalsificationError, InputError
from metaeis.metaplectic import build_levi, build_metaplectic
from metaeis.reps import (Character, branch, check_positive, freudenthal, graded_sym, irreducible_character,
                          kostant_multiplicity, nilradical, sym_dim_direct, sym_dim_product, weight_multiplicity)
from metaeis.rootdata import build_root_datum


def meta(label, n):
    return build_metaplectic(build_root_datum(label), n)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_a1_even_fundamental(n):
    e = n // 2
    ch = irreducible_character(meta("A1", n), (e,))
    assert ch.support == {(e,): 1, (-e,): 1}


@pytest.mark.parametrize("n", [1, 3, 5])
def test_a1_odd_adjoint(n):
    ch = irreducible_character(meta("A1", n), (n,))
    assert ch.support == {(n,): 1, (0,): 1, (-n,): 1}


def test_trivial_character():
    ch = irreducible_character(meta("B2", 2), (0, 0))
    assert ch.dim == 1 and ch.support == {(0, 0): 1}


def test_non_dominant_rejected():
    with pytest.raises(InputError, match="dual simple coroot 1"):
        irreducible_character(meta("A2", 1), (-1, 1))


def test_negative_multiplicity_rejected():
    with pytest.raises(FalsificationError):
        Character({(0,): -1})


DOMINANT_CASES = [("A2", 1), ("A2", 2), ("B2", 1), ("B2", 2), ("C2", 3), ("G2", 1), ("G2", 2), ("A3", 1), ("B3", 1)]


def _dominant_weights(d, max_height):
    sys_ = d.system
    out = []
    box = range(0, max_height + 1)
    for mu in itertools.product(box, repeat=d.rank):
        if sum(mu) <= max_height and d.in_lambda_sharp(mu) and sys_.is_dominant(mu):
            out.append(mu)
    return out


@pytest.mark.parametrize("label,n", DOMINANT_CASES)
def test_freudenthal_against_kostant(label, n):
    d = meta(label, n)
    sys_ = d.system
    for lam in _dominant_weights(d, 6):
        mults = freudenthal(sys_, lam)
        assert sum(mults.values()) == sys_.weyl_dimension(lam)
        for mu, m in mults.items():
            assert kostant_multiplicity(sys_, lam, mu) == m
            for w_mu in sys_.orbit(mu):
                assert mults[w_mu] == m


def test_a2_adjoint_branching():
    d = meta("A2", 1)
    levi = build_levi(d, [0])
    pieces = branch((1, 1), levi)
    dims = sorted(m * levi.system.weyl_dimension(nu) for nu, m in pieces.items() for _ in range(m))
    assert dims == [1, 2, 2, 3]


@pytest.mark.parametrize("label,n", [("A2", 1), ("B2", 2), ("G2", 1), ("A3", 1)])
def test_branching_to_full_and_torus(label, n):
    d = meta(label, n)
    full = build_levi(d, range(d.rank))
    torus = build_levi(d, [])
    for lam in _dominant_weights(d, 4):
        assert branch(lam, full) == {lam: 1}
        assert branch(lam, torus) == {mu: weight_multiplicity(d, lam, mu) for mu in freudenthal(d.system, lam)}


@pytest.mark.parametrize("label,n", [("A3", 1), ("B3", 1), ("C3", 2)])
def test_branching_transitivity(label, n):
    d = meta(label, n)
    torus = build_levi(d, [])
    for nodes in [(0,), (0, 1), (1, 2)]:
        levi = build_levi(d, nodes)
        for lam in _dominant_weights(d, 3):
            composed = Counter()
            for nu, m in branch(lam, levi).items():
                for mu, k in freudenthal(levi.system, nu).items():
                    composed[mu] += m * k
            assert dict(composed) == branch(lam, torus)


def test_nilradical_examples():
    for n in [1, 2, 3]:
        nil = nilradical(build_levi(meta("A1", n), []))
        assert len(nil.pieces) == 1
        assert nil.pieces[0].weights == ((n,),) and nil.pieces[0].dim == 1
    nil = nilradical(build_levi(meta("A2", 1), [0]))
    assert len(nil.pieces) == 1
    assert set(nil.pieces[0].weights) == {(0, 1), (1, 1)}


@pytest.mark.parametrize("label,n", [("A2", 1), ("A2", 2), ("B2", 2), ("G2", 3), ("C3", 2), ("B3", 1)])
def test_nilradical_structure(label, n):
    d = meta(label, n)
    for size in range(d.rank):
        for nodes in itertools.combinations(range(d.rank), size):
            levi = build_levi(d, nodes)
            nil = nilradical(levi)
            outside_roots = [b for b in d.dual_positive_roots if any(b[i] for i in levi.outside)]
            assert sum(p.dim for p in nil.pieces) == len(outside_roots)
            for i in levi.outside:
                assert levi.sharp_class(d.dual_simple_roots[i]) in nil.J


@pytest.mark.parametrize("n", [1, 2, 3])
def test_a1_graded_sym(n):
    nil = nilradical(build_levi(meta("A1", n), []))
    for m in range(0, 13):
        res = graded_sym(nil, (m,), m // n)
        assert res["env_dim"] == (1 if m % n == 0 else 0)
    assert graded_sym(nil, (0,), 0)["sym_dim"] == 1


def test_a2_graded_sym_partition_count():
    nil = nilradical(build_levi(meta("A2", 1), []))
    assert graded_sym(nil, (1, 1), 1)["sym_dim"] == 1
    assert graded_sym(nil, (1, 1), 2)["sym_dim"] == 1
    assert graded_sym(nil, (1, 1), 0)["env_dim"] == 2


def test_graded_sym_outside_cone():
    nil = nilradical(build_levi(meta("A2", 1), []))
    res = graded_sym(nil, (-1, 1), 1)
    assert res["sym_dim"] == 0 and "outside" in res["note"]


@pytest.mark.parametrize("label,n", [("A2", 1), ("B2", 2), ("G2", 1)])
@given(data=st.data())
def test_sym_identity_random(label, n, data):
    d = meta(label, n)
    nodes = data.draw(st.sampled_from([(), (0,), (1,)]))
    levi = build_levi(d, nodes)
    nil = nilradical(levi)
    theta = tuple(data.draw(st.lists(st.integers(0, 5), min_size=len(levi.outside), max_size=len(levi.outside))))
    m = data.draw(st.integers(0, 5))
    assert sym_dim_direct(nil, theta, m) == sym_dim_product(nil, theta, m)


def test_check_positive_examples():
    levi = build_levi(meta("A2", 1), [0])
    assert check_positive(levi, Character({(0, 0): 1}))
    assert check_positive(levi, Character({(0, 1): 1, (1, 1): 1}))
    assert not check_positive(levi, Character({(0, -1): 1, (-1, -1): 1}))
