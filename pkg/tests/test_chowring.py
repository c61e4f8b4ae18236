from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grasscalc.chowring import (
    FormalBundle,
    chern_of_roots,
    chern_of_sym,
    euler_line_twist,
    euler_tensor,
    porteous_ind0,
    porteous_ind0_closed_form,
    segre_series,
    sym_roots,
)
from grasscalc.poly import PolyRing
from grasscalc.symfunc import expand_elementary


def test_segre_of_trivial_and_line():
    ring = PolyRing(["t"])
    one = segre_series(FormalBundle.trivial(ring, 3), cutoff=4)
    assert one == one.ring.one()
    s = segre_series(FormalBundle.line(ring, ring.gen("t")), cutoff=3)
    t = s.ring.gen("t")
    assert s == 1 - t + t**2 - t**3


def test_segre_of_doubled_split_bundle():
    # O(1)^2 + O(3) on P^3 with roots doubled
    ring = PolyRing(["h"], truncations=[(["h"], 3)])
    h = ring.gen("h")
    F = FormalBundle.split(ring, [2 * h, 2 * h, 6 * h])
    s = segre_series(F)
    assert s * ((1 + 2 * h) ** 2 * (1 + 6 * h)) == ring.one()
    assert s.coeff({"h": 1}) == -10
    # minus the complete homogeneous h_3(2, 2, 6), summed by hand
    assert s.coeff({"h": 3}) == -(32 + 72 + 144 + 216)


def test_euler_tensor_line_by_line():
    e = euler_tensor(1, 1, "c", "d")
    c1, d1 = e.ring.gens("c1", "d1")
    assert e == c1 + d1


def test_euler_tensor_three_by_six_blocks():
    e = euler_tensor(3, 6, "c", "d", a_cutoff=3)
    blocks = e.collect(["c1", "c2", "c3"])
    d3, d4, d5, d6 = e.ring.gens("d3", "d4", "d5", "d6")
    ref = {
        (1, 0, 0): d5 * d6**2,
        (0, 0, 1): d5**3 - 3 * d4 * d5 * d6 + 3 * d3 * d6**2,
        (3, 0, 0): d3 * d6**2,
        (0, 0, 0): d6**3,
    }
    for key, val in ref.items():
        assert blocks[key] == val


def test_euler_line_twist_examples():
    ring = PolyRing.chern({"c": 3, "C": 1})
    c1, c2, c3, C1 = ring.gens("c1", "c2", "c3", "C1")
    assert euler_line_twist(ring.zero(), [c1, c2, c3]) == c3
    q = C1 - c1
    e3 = euler_line_twist(2 * q, [c1, c2, c3])
    assert e3 == 8 * q**3 + 4 * q**2 * c1 + 2 * q * c2 + c3


def test_chern_of_sym_rank_three():
    S1, S2, S3 = chern_of_sym(2, 3, cutoff=3)
    c1, c2, c3 = S3.ring.gens("c1", "c2", "c3")
    assert S1 == 4 * c1.to_ring(S1.ring)
    assert S2 == 5 * c1 * c1 + 5 * c2
    assert S3 == 2 * c1**3 + 11 * c1 * c2 + 7 * c3


@pytest.mark.parametrize("r", range(1, 6))
def test_chern_of_sym_low_degrees(r):
    S = chern_of_sym(2, r + 1, cutoff=2)
    c1, c2 = S[1].ring.gens("c1", "c2")
    assert S[0] == (r + 2) * c1
    assert 2 * S[1] == (r * r + 3 * r) * c1 * c1 + 2 * (r + 3) * c2


@pytest.mark.parametrize("k,rank", [(2, 2), (2, 3), (3, 2)])
def test_chern_of_sym_matches_root_sums(k, rank):
    xs = [f"x{i}" for i in range(1, rank + 1)]
    sym_rank = comb(rank + k - 1, k)
    ring = PolyRing(xs)
    direct = chern_of_roots(ring, sym_roots(ring, xs, k))
    pieces = chern_of_sym(k, rank, family="c")
    # substitute the elementary symmetric functions back in
    targets = [f"c{i}" for i in range(1, rank + 1)]
    total = pieces[0].ring.one()
    for p in pieces:
        total = total + p
    back = expand_elementary(total, targets, xs, ring)
    assert back == direct
    assert len(pieces) == sym_rank


def test_porteous_examples():
    p1, p2 = porteous_ind0(1), porteous_ind0(2)
    c1, c2 = p1.ring.gens("c1", "c2")
    assert p1 == 5 * c1 * c1 - 5 * c2
    c1, c2 = p2.ring.gens("c1", "c2")
    assert p2 == 8 * c1 * c1 - 6 * c2


@pytest.mark.parametrize("r", range(1, 7))
def test_porteous_matches_closed_form(r):
    assert porteous_ind0(r) == porteous_ind0_closed_form(r)


roots = st.lists(st.integers(-3, 3), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(roots, roots)
def test_euler_class_is_multiplicative(a, b):
    ring = PolyRing(["h"], truncations=[(["h"], 8)])
    h = ring.gen("h")
    A = FormalBundle.split(ring, [x * h for x in a])
    B = FormalBundle.split(ring, [x * h for x in b])
    S = A + B
    assert S.chern(S.rank) == A.chern(A.rank) * B.chern(B.rank)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6))
def test_total_times_segre_is_one(rank, cutoff):
    ring = PolyRing.chern({"c": rank}, cutoffs={"c": cutoff})
    E = FormalBundle.named(ring, "c", rank)
    assert E.total * segre_series(E) == ring.one()
    assert E.dual().total * segre_series(E.dual()) == ring.one()


@pytest.mark.parametrize("b", [2, 3, 4])
def test_euler_tensor_with_line_is_line_twist(b):
    # a = 1: prod_j (l + m_j) = sum_i l^i d_{b-i}
    e = euler_tensor(1, b, "c", "d")
    ring = e.ring
    d = [ring.gen(f"d{j}") for j in range(1, b + 1)]
    assert e == euler_line_twist(ring.gen("c1"), d)


def test_reductions_keep_integer_coefficients():
    e = euler_tensor(3, 6, "c", "d", a_cutoff=3)
    assert all(int(c) == c for c in e.terms.values())
    for p in chern_of_sym(3, 3):
        assert all(int(c) == c for c in p.terms.values())
