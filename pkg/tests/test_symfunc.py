from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasscalc.poly import PolyRing
from grasscalc.symfunc import (
    NotSymmetric,
    SchurVector,
    as_weight,
    conjugate,
    elementary_reduce,
    expand_elementary,
    lr_product,
    lr_product_vectors,
    pieri_product,
    schur_expand,
    schur_expand_terms,
    schur_monomials,
    schur_poly,
    shift,
    wedge_of_sym,
    weyl_dim,
)
from oracles import brute_product, kostka_monomials


partitions = st.integers(1, 5).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(0, 6), min_size=n, max_size=n).map(lambda xs: tuple(sorted(xs, reverse=True))),
        st.lists(st.integers(0, 6), min_size=n, max_size=n).map(lambda xs: tuple(sorted(xs, reverse=True))),
        st.lists(st.integers(0, 6), min_size=n, max_size=n).map(lambda xs: tuple(sorted(xs, reverse=True))),
    )
)


# --- examples ------------------------------------------------------------------


def test_pieri_base_case():
    assert lr_product((1,), (1,), 3) == {(2, 0, 0): 1, (1, 1, 0): 1}


def test_three_strip_product():
    got = lr_product((3, 3), (3,), 3)
    assert got == {(6, 3, 0): 1, (5, 3, 1): 1, (4, 3, 2): 1, (3, 3, 3): 1}


def test_product_with_negative_weight():
    got = lr_product((3, 0, 0), (0, 0, -3), 3)
    assert got == {(3, 0, -3): 1, (2, 0, -2): 1, (1, 0, -1): 1, (0, 0, 0): 1}


def test_box_truncated_product():
    # in a 2 x 2 box s1 * s1 keeps both terms, s(2) * s(1) loses s(3)
    assert lr_product((1, 0), (1, 0), 2, maxw=2) == {(2, 0): 1, (1, 1): 1}
    assert lr_product((2, 0), (1, 0), 2, maxw=2) == {(2, 1): 1}


def test_schur_expand_small_cases():
    ring = PolyRing(["x1", "x2", "x3"])
    x1, x2, x3 = ring.gens("x1", "x2", "x3")
    e2 = x1 * x2 + x1 * x3 + x2 * x3
    assert schur_expand(e2, ["x1", "x2", "x3"]) == {(1, 1, 0): 1}
    h3 = schur_poly((3,), ring, ["x1", "x2", "x3"])
    assert schur_expand(h3, ["x1", "x2", "x3"]) == {(3, 0, 0): 1}


def test_schur_expand_rejects_asymmetric():
    ring = PolyRing(["x1", "x2"])
    x1, _ = ring.gens("x1", "x2")
    with pytest.raises(NotSymmetric):
        schur_expand(x1 * x1, ["x1", "x2"])


def test_wedge_of_sym_examples():
    assert wedge_of_sym(1, 3, 3) == {(3, 0, 0): 1}
    assert wedge_of_sym(2, 3, 3) == {(5, 1, 0): 1, (3, 3, 0): 1}
    assert wedge_of_sym(10, 3, 3) == {(10, 10, 10): 1}
    assert wedge_of_sym(11, 3, 3) == {}
    assert wedge_of_sym(0, 3, 3) == {(0, 0, 0): 1}


def test_wedge_of_sym_third_power():
    # wedge^3 Sym^3 of a rank-3 space, frozen after the rank check below
    got = wedge_of_sym(3, 3, 3)
    assert got.total_dim() == comb(10, 3)
    assert got == {(7, 1, 1): 1, (6, 3, 0): 1, (5, 3, 1): 1, (3, 3, 3): 1}


def test_weyl_dim_examples():
    assert weyl_dim((1,) + (0,) * 9) == 10
    assert weyl_dim((3,) + (1,) * 9) == 55
    assert weyl_dim((1,) + (0,) * 8 + (-1,)) == 99
    assert weyl_dim((0, 0, 0)) == 1
    assert weyl_dim((2, 0), 2) == 3


def test_weight_helpers():
    assert as_weight([2, 1], 4) == (2, 1, 0, 0)
    with pytest.raises(ValueError):
        as_weight([1, 2])
    assert conjugate((3, 1)) == (2, 1, 1)
    assert shift((1, 0), 2) == (3, 2)


def test_schur_vector_serialization_round_trip():
    v = SchurVector({(5, 1, 0): 1, (3, 3, 0): 2})
    data = v.to_json()
    assert data == [[[5, 1, 0], "1"], [[3, 3, 0], "2"]]
    assert SchurVector.from_json(data) == v
    assert str(v) == "s(5,1,0) + 2*s(3,3,0)"


def test_schur_monomials_match_tableaux():
    for n in (1, 2, 3):
        for lam in [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1)]:
            if len(lam) > n:
                continue
            lam_n = lam + (0,) * (n - len(lam))
            assert schur_monomials(lam_n, n) == kostka_monomials(lam, n)


def test_elementary_reduce_power_sum():
    ring = PolyRing(["x1", "x2", "x3"])
    xs = ["x1", "x2", "x3"]
    x1, x2, x3 = ring.gens(*xs)
    p2 = x1**2 + x2**2 + x3**2
    red = elementary_reduce(p2, xs, ["e1", "e2", "e3"])
    e1, e2 = red.ring.gens("e1", "e2")
    assert red == e1**2 - 2 * e2
    assert expand_elementary(red, ["e1", "e2", "e3"], xs, ring) == p2


def test_elementary_reduce_rejects_asymmetric():
    ring = PolyRing(["x1", "x2"])
    x1, x2 = ring.gens("x1", "x2")
    with pytest.raises(NotSymmetric):
        elementary_reduce(x1**2 * x2, ["x1", "x2"], ["e1", "e2"])


# --- properties ----------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(partitions)
def test_lr_agrees_with_monomial_oracle(data):
    n, lam, mu, _ = data
    assert lr_product(lam, mu, n) == brute_product(lam, mu, n)


@settings(max_examples=25, deadline=None)
@given(partitions)
def test_lr_commutative_and_associative(data):
    n, lam, mu, nu = data
    assert lr_product(lam, mu, n) == lr_product(mu, lam, n)
    left = lr_product_vectors(lr_product(lam, mu, n), SchurVector.single(nu), n)
    right = lr_product_vectors(SchurVector.single(lam), lr_product(mu, nu, n), n)
    assert left == right


@settings(max_examples=60, deadline=None)
@given(partitions, st.integers(0, 4))
def test_pieri_agrees_with_lr(data, k):
    n, lam, _, _ = data
    assert pieri_product(lam, k, n) == lr_product(lam, (k,), n)


@settings(max_examples=60, deadline=None)
@given(partitions, st.integers(-3, 3), st.integers(-3, 3))
def test_lr_respects_determinant_twists(data, a, b):
    n, lam, mu, _ = data
    twisted = lr_product(shift(lam, a), shift(mu, b), n)
    assert twisted == lr_product(lam, mu, n).shift(a + b)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.dictionaries(
            st.lists(st.integers(0, 3), min_size=n, max_size=n).map(lambda xs: tuple(sorted(xs, reverse=True))),
            st.integers(-5, 5),
            max_size=8,
        ).map(lambda d: (n, d))
    )
)
def test_schur_expand_inverts_monomial_expansion(data):
    n, terms = data
    v = SchurVector(terms, n)
    mono = Counter()
    for w, m in v.items():
        for e, c in schur_monomials(w, n).items():
            mono[e] += m * c
    assert schur_expand_terms(mono, n) == v


@pytest.mark.parametrize("k", range(0, 12))
def test_wedge_of_sym_rank_conservation(k):
    assert wedge_of_sym(k, 3, 3).total_dim() == comb(comb(5, 3), k)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-5, 8), min_size=1, max_size=6))
def test_weyl_dim_positive_on_dominant_weights(xs):
    assert weyl_dim(sorted(xs, reverse=True)) >= 1
