"""Characteristic classes by the splitting principle.

Classes are :class:`~grasscalc.poly.Poly` values ("graded classes") in a ring
of named Chern generators.  Bundles are described by their total Chern class;
those that come with an explicit root alphabet can also enter tensor-product
Euler class computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .poly import Poly, PolyRing
from .symfunc import elementary_reduce

GradedClass = Poly


def chern_family(ring: PolyRing, family: str, rank: int) -> tuple[Poly, ...]:
    """(c_1, ..., c_rank) as generators ``family1``, ``family2``, ... of ``ring``."""
    return tuple(ring.gen(f"{family}{i}") for i in range(1, rank + 1))


def graded_pieces(total: Poly, top: int | None = None) -> tuple[Poly, ...]:
    """(p_1, ..., p_top) for a total class p = 1 + p_1 + p_2 + ..."""
    if top is None:
        top = max(total.degree(), 0)
    return tuple(total.homogeneous(i) for i in range(1, top + 1))


def total_from_pieces(ring: PolyRing, pieces: Sequence[Poly]) -> Poly:
    total = ring.one()
    for p in pieces:
        total = total + p
    return total


def chern_of_roots(ring: PolyRing, roots: Sequence[Poly]) -> Poly:
    """Total Chern class prod(1 + root)."""
    total = ring.one()
    for x in roots:
        total = total * (ring.one() + x)
    return total


@dataclass(frozen=True)
class FormalBundle:
    """A (possibly virtual) bundle given by its rank and total Chern class.

    ``roots`` is set when the bundle is split into named root generators of
    the ring; only then can it take part in :func:`euler_tensor`.
    """

    ring: PolyRing
    rank: int
    total: Poly
    roots: tuple[str, ...] | None = None

    @classmethod
    def named(cls, ring: PolyRing, family: str, rank: int) -> "FormalBundle":
        classes = chern_family(ring, family, rank)
        return cls(ring, rank, total_from_pieces(ring, classes))

    @classmethod
    def from_roots(cls, ring: PolyRing, roots: Sequence[str]) -> "FormalBundle":
        total = chern_of_roots(ring, [ring.gen(x) for x in roots])
        return cls(ring, len(roots), total, tuple(roots))

    @classmethod
    def line(cls, ring: PolyRing, c1: Poly) -> "FormalBundle":
        return cls(ring, 1, ring.one() + c1)

    @classmethod
    def trivial(cls, ring: PolyRing, rank: int) -> "FormalBundle":
        return cls(ring, rank, ring.one())

    @classmethod
    def split(cls, ring: PolyRing, root_classes: Sequence[Poly]) -> "FormalBundle":
        """Direct sum of line bundles with the given first Chern classes."""
        return cls(ring, len(root_classes), chern_of_roots(ring, root_classes))

    def chern(self, i: int) -> Poly:
        if i == 0:
            return self.ring.one()
        return self.total.homogeneous(i)

    def classes(self) -> tuple[Poly, ...]:
        return graded_pieces(self.total, max(self.rank, self.total.degree(), 0))

    def dual(self) -> "FormalBundle":
        pieces = [(-1) ** i * self.chern(i) for i in range(1, max(self.total.degree(), 0) + 1)]
        return FormalBundle(self.ring, self.rank, total_from_pieces(self.ring, pieces))

    def __add__(self, other: "FormalBundle") -> "FormalBundle":
        return FormalBundle(self.ring, self.rank + other.rank, self.total * other.total)

    def __sub__(self, other: "FormalBundle") -> "FormalBundle":
        return FormalBundle(self.ring, self.rank - other.rank, self.total * other.total.inverse_series())


def _with_cutoff(ring: PolyRing, cutoff: int | None) -> PolyRing:
    if cutoff is None:
        return ring
    rules = [([ring.names[i] for i in idx], b) for idx, b in ring.truncations]
    rules.append((ring.names, cutoff))
    return ring.with_truncations(rules)


def segre_series(b: FormalBundle, cutoff: int | None = None) -> Poly:
    """Segre class s(b) = 1/c(b), truncated at total degree ``cutoff``."""
    ring = _with_cutoff(b.ring, cutoff)
    total = b.total.truncate(ring)
    if total.constant() != 1:
        raise ValueError("total Chern class must have constant term 1")
    return total.inverse_series()


def euler_line_twist(c1_line: Poly, classes: Sequence[Poly]) -> Poly:
    """e(L (x) V) = sum_i c_1(L)^i c_{s-i}(V) for V of rank s = len(classes)."""
    ring = c1_line.ring
    s = len(classes)
    full = (ring.one(),) + tuple(classes)
    acc = ring.zero()
    power = ring.one()
    for i in range(s + 1):
        acc = acc + power * full[s - i]
        power = power * c1_line
    return acc


def euler_tensor(
    a: int,
    b: int,
    a_targets: Sequence[str] | str = "c",
    b_targets: Sequence[str] | str = "d",
    a_cutoff: int | None = None,
) -> Poly:
    """Euler class prod_{i<=a, j<=b} (l_i + m_j) of A (x) B in Chern classes of A and B.

    ``a_targets``/``b_targets`` name the Chern classes of A and B (a family
    prefix or explicit names).  ``a_cutoff`` truncates the weighted degree in
    A's classes.  The m-alphabet is reduced first, then the l-alphabet.
    """
    if isinstance(a_targets, str):
        a_targets = [f"{a_targets}{i}" for i in range(1, a + 1)]
    if isinstance(b_targets, str):
        b_targets = [f"{b_targets}{i}" for i in range(1, b + 1)]
    ls = [f"_l{i}" for i in range(1, a + 1)]
    ms = [f"_m{j}" for j in range(1, b + 1)]
    # one l_i at a time: prod_j (l_i + m_j), reduced in the m-alphabet
    factors = []
    for li in ls:
        ring_i = PolyRing([li] + ms)
        x = ring_i.gen(li)
        prod_i = ring_i.one()
        for mj in ms:
            prod_i = prod_i * (x + ring_i.gen(mj))
        factors.append(elementary_reduce(prod_i, ms, b_targets))
    trunc = [(ls, a_cutoff)] if a_cutoff is not None else []
    ring_ld = PolyRing(ls + list(b_targets), [1] * a + list(range(1, b + 1)), trunc)
    acc = ring_ld.one()
    for f in factors:
        acc = acc * f.to_ring(ring_ld)
    return elementary_reduce(acc, ls, a_targets)


def sym_roots(ring: PolyRing, roots: Sequence[str], k: int) -> list[Poly]:
    """Roots of Sym^k: sums over multisets of size k of the given roots."""
    out = []
    for combo in itertools.combinations_with_replacement(roots, k):
        acc = ring.zero()
        for x in combo:
            acc = acc + ring.gen(x)
        out.append(acc)
    return out


def chern_of_sym(k: int, rank: int, cutoff: int | None = None, family: str = "c") -> tuple[Poly, ...]:
    """Chern classes (S_1, S_2, ...) of Sym^k of a rank-``rank`` bundle with classes ``family``i.

    Pieces above ``cutoff`` (default: the rank of Sym^k) are not computed.
    """
    sym_rank = comb(rank + k - 1, k)
    top = sym_rank if cutoff is None else min(cutoff, sym_rank)
    xs = [f"_x{i}" for i in range(1, rank + 1)]
    ring = PolyRing(xs, truncations=[(xs, top)])
    total = chern_of_roots(ring, sym_roots(ring, xs, k))
    targets = [f"{family}{i}" for i in range(1, rank + 1)]
    reduced = elementary_reduce(total, xs, targets)
    out_ring = PolyRing.chern({family: rank}, cutoffs={family: top})
    reduced = reduced.to_ring(out_ring)
    return graded_pieces(reduced, top)


def porteous_ind0(r: int) -> Poly:
    """Degree-2 part of 1/(c(E) c(Sym^2 E^*)), E of rank r+1, in the classes c_i of E^*."""
    if r < 1:
        raise ValueError("r must be at least 1")
    rank = r + 1
    ring = PolyRing.chern({"c": rank}, cutoffs={"c": 2})
    e_dual = FormalBundle.named(ring, "c", rank)
    sym2 = chern_of_sym(2, rank, cutoff=2)
    sym2_total = total_from_pieces(ring, [p.to_ring(ring) for p in sym2])
    denom = e_dual.dual().total * sym2_total
    return denom.inverse_series().homogeneous(2)


def porteous_ind0_closed_form(r: int) -> Poly:
    ring = PolyRing.chern({"c": r + 1}, cutoffs={"c": 2})
    c1, c2 = ring.gens("c1", "c2")
    return (comb(r + 2, 2) + 2) * c1 * c1 - (r + 4) * c2
