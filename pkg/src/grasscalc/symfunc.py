"""Weights, Schur vectors and the symmetric-function kernels behind everything else.

Weights are plain tuples of ints (weakly decreasing, fixed length).  A
:class:`SchurVector` is a formal integer combination of weights of one length,
i.e. the character of a (virtual) GL-representation written in the Schur basis.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterable, Iterator, Mapping, Sequence

from .poly import Poly, PolyRing

Weight = tuple[int, ...]


class NotSymmetric(ValueError):
    """Raised when a polynomial expected to be symmetric is not."""


def as_weight(entries: Iterable[int], length: int | None = None) -> Weight:
    """Validate a weakly decreasing weight, padding with zeros up to ``length``."""
    w = tuple(int(x) for x in entries)
    if length is not None:
        if len(w) > length:
            if any(w[length:]):
                raise ValueError(f"weight {w} longer than {length}")
            w = w[:length]
        w = w + (0,) * (length - len(w))
    if any(a < b for a, b in zip(w, w[1:])):
        raise ValueError(f"weight {w} is not weakly decreasing")
    return w


def shift(w: Weight, a: int) -> Weight:
    """Twist by det^a."""
    return tuple(x + a for x in w)


def conjugate(p: Sequence[int]) -> tuple[int, ...]:
    p = [x for x in p if x > 0]
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


class SchurVector(Mapping[Weight, int]):
    """Integer combination of Schur functors s_w, all weights of one length."""

    __slots__ = ("_terms", "length")

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None, length: int | None = None):
        clean: dict[Weight, int] = {}
        for w, m in (terms or {}).items():
            w = as_weight(w, length)
            if length is None:
                length = len(w)
            elif len(w) != length:
                raise ValueError(f"weight {w} has length {len(w)}, expected {length}")
            if m:
                clean[w] = clean.get(w, 0) + int(m)
        self._terms = {w: m for w, m in clean.items() if m}
        self.length = length

    @classmethod
    def single(cls, w: Iterable[int], mult: int = 1) -> "SchurVector":
        w = as_weight(w)
        return cls({w: mult}, len(w))

    def __getitem__(self, w) -> int:
        return self._terms.get(tuple(w), 0)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self.sorted_weights())

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_weights(self) -> list[Weight]:
        return sorted(self._terms, reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, SchurVector):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _combine(self, other: "SchurVector", sign: int) -> "SchurVector":
        if self.length is not None and other.length is not None and self.length != other.length:
            raise ValueError("cannot add Schur vectors of different lengths")
        out = dict(self._terms)
        for w, m in other._terms.items():
            out[w] = out.get(w, 0) + sign * m
        return SchurVector(out, self.length if self.length is not None else other.length)

    def __add__(self, other: "SchurVector") -> "SchurVector":
        return self._combine(other, 1)

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        return self._combine(other, -1)

    def __neg__(self) -> "SchurVector":
        return SchurVector({w: -m for w, m in self._terms.items()}, self.length)

    def scale(self, c: int) -> "SchurVector":
        return SchurVector({w: c * m for w, m in self._terms.items()}, self.length)

    def shift(self, a: int) -> "SchurVector":
        return SchurVector({shift(w, a): m for w, m in self._terms.items()}, self.length)

    def total_dim(self) -> int:
        return sum(m * weyl_dim(w) for w, m in self._terms.items())

    def to_json(self) -> list:
        return [[list(w), str(self._terms[w])] for w in self.sorted_weights()]

    @classmethod
    def from_json(cls, data: list, length: int | None = None) -> "SchurVector":
        return cls({tuple(w): int(m) for w, m in data}, length)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w in self.sorted_weights():
            m = self._terms[w]
            body = "s(" + ",".join(map(str, w)) + ")"
            parts.append(body if m == 1 else f"{m}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SchurVector({self})"


# ---------------------------------------------------------------------------
# Weyl dimension


def weyl_dim(xi: Sequence[int], N: int | None = None) -> int:
    """Dimension of the irreducible GL(N)-module of highest weight ``xi``."""
    xi = as_weight(xi, N)
    n = len(xi)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(xi[i] - xi[j] + j - i, j - i)
    assert num.denominator == 1
    return num.numerator


# ---------------------------------------------------------------------------
# Littlewood-Richardson rule


def _horizontal_strips(shape, size, prev_counts, lattice, maxw):
    """Yield row-count vectors placing ``size`` equal letters as a horizontal strip.

    ``prev_counts[s]`` is the number of the previous letter in row s; with
    ``lattice`` set the reverse reading word must stay a lattice word.
    """
    rows = len(shape)
    cur = [0] * rows

    def rec(s, left, cum_cur, cum_prev):
        if left == 0:
            yield tuple(cur)
            return
        if s == rows:
            return
        if s == 0:
            bound = left if maxw is None else min(left, maxw - shape[0])
        else:
            bound = min(left, shape[s - 1] - shape[s])
        if lattice:
            bound = min(bound, cum_prev - cum_cur)
        for k in range(bound, -1, -1):
            cur[s] = k
            yield from rec(s + 1, left - k, cum_cur + k, cum_prev + prev_counts[s])
        cur[s] = 0

    yield from rec(0, size, 0, 0)


def lr_coefficients(lam: Sequence[int], mu: Sequence[int], nrows: int, maxw: int | None = None) -> Counter:
    """LR coefficients c^nu_{lam,mu} for partitions, nu with at most ``nrows`` rows.

    Counts LR tableaux of shape nu/lam and content mu.  With ``maxw`` only
    shapes of width <= maxw are produced.
    """
    lam = [x for x in lam if x > 0]
    mu = [x for x in mu if x > 0]
    out: Counter = Counter()
    if len(lam) > nrows or len(mu) > nrows:
        return out
    if maxw is not None and ((lam and lam[0] > maxw) or (mu and mu[0] > maxw)):
        return out
    shape0 = list(lam) + [0] * (nrows - len(lam))

    def rec(letter, shape, prev):
        if letter == len(mu):
            out[tuple(shape)] += 1
            return
        for counts in _horizontal_strips(shape, mu[letter], prev, letter > 0, maxw):
            new = [a + b for a, b in zip(shape, counts)]
            rec(letter + 1, new, counts)

    rec(0, shape0, [0] * nrows)
    return out


@lru_cache(maxsize=65536)
def _lr_cached(lam: Weight, mu: Weight, nvars: int, maxw: int | None) -> tuple:
    if sum(mu) > sum(lam):
        lam, mu = mu, lam
    return tuple(sorted(lr_coefficients(lam, mu, nvars, maxw).items()))


def lr_product(lam: Sequence[int], mu: Sequence[int], nvars: int, maxw: int | None = None) -> SchurVector:
    """Decompose L_lam (x) L_mu for GL(nvars); negative entries go through a det twist."""
    lam = as_weight(lam, nvars)
    mu = as_weight(mu, nvars)
    a = max(0, -lam[-1]) if lam else 0
    b = max(0, -mu[-1]) if mu else 0
    if maxw is not None and (a or b):
        raise ValueError("width truncation is only meaningful for partitions")
    res = _lr_cached(shift(lam, a), shift(mu, b), nvars, maxw)
    return SchurVector({shift(nu, -a - b): m for nu, m in res}, nvars)


def lr_product_vectors(u: SchurVector, v: SchurVector, nvars: int, maxw: int | None = None) -> SchurVector:
    """Bilinear extension of :func:`lr_product`."""
    acc: Counter = Counter()
    for w1, m1 in u.items():
        for w2, m2 in v.items():
            for nu, m in lr_product(w1, w2, nvars, maxw).items():
                acc[nu] += m1 * m2 * m
    return SchurVector(acc, nvars)


def pieri_product(lam: Sequence[int], k: int, nvars: int) -> SchurVector:
    """s_lam * h_k by horizontal strips (a small independent rule, used as oracle)."""
    lam = as_weight(lam, nvars)
    a = max(0, -lam[-1])
    base = shift(lam, a)
    out: Counter = Counter()
    for counts in _horizontal_strips(list(base), k, [0] * nvars, False, None):
        out[shift(tuple(x + c for x, c in zip(base, counts)), -a)] += 1
    return SchurVector(out, nvars)


# ---------------------------------------------------------------------------
# Schur polynomials and Schur expansion


@lru_cache(maxsize=None)
def _schur_monomials(lam: Weight, n: int) -> dict:
    # branching: s_lam(x_1..x_n) = sum over horizontal strips lam/mu of x_n^{|lam/mu|} s_mu(x_1..x_{n-1})
    if n == 0:
        return {(): 1} if not any(lam) else {}
    if len([x for x in lam if x]) > n:
        return {}
    out: Counter = Counter()
    lam_l = list(lam) + [0]

    def mus(i, acc):
        if i == len(lam):
            yield tuple(acc)
            return
        lo = lam_l[i + 1]
        for m in range(lo, lam_l[i] + 1):
            acc.append(m)
            yield from mus(i + 1, acc)
            acc.pop()

    for mu in mus(0, []):
        if len([x for x in mu if x]) > n - 1:
            continue
        k = sum(lam) - sum(mu)
        for e, c in _schur_monomials(tuple(mu), n - 1).items():
            out[e + (k,)] += c
    return dict(out)


def schur_monomials(lam: Sequence[int], n: int) -> dict[tuple[int, ...], int]:
    """Monomial expansion {exponent: Kostka-count} of s_lam(x_1..x_n); Laurent if lam < 0."""
    lam = as_weight(lam, n)
    a = max(0, -lam[-1]) if lam else 0
    base = _schur_monomials(shift(lam, a), n)
    if not a:
        return dict(base)
    return {tuple(x - a for x in e): c for e, c in base.items()}


def _check_symmetric(terms: Mapping[tuple, object], n: int) -> None:
    for i in range(n - 1):
        for e, c in terms.items():
            sw = list(e)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            if terms.get(tuple(sw), 0) != c:
                raise NotSymmetric(f"transposition ({i},{i + 1}) changes the coefficient of {e}")


def schur_expand_terms(terms: Mapping[tuple[int, ...], int], n: int) -> SchurVector:
    """Schur-basis expansion of a symmetric (Laurent) polynomial given as {exponent: coeff}."""
    work = {tuple(e): c for e, c in terms.items() if c}
    for e in work:
        if len(e) != n:
            raise ValueError(f"exponent {e} does not have length {n}")
    _check_symmetric(work, n)
    out: dict[Weight, int] = {}
    bound = max(1, len(work)) ** 2 + 1
    steps = 0
    while work:
        steps += 1
        if steps > bound:
            raise NotSymmetric("Schur expansion did not terminate within the step bound")
        lead = max(work)
        if any(a < b for a, b in zip(lead, lead[1:])):
            raise NotSymmetric(f"leading exponent {lead} is not a partition")
        c = work[lead]
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral Schur coefficient {c}")
            c = c.numerator
        out[lead] = out.get(lead, 0) + c
        for e, k in schur_monomials(lead, n).items():
            v = work.get(e, 0) - c * k
            if v:
                work[e] = v
            else:
                work.pop(e, None)
    return SchurVector(out, n)


def schur_expand(p: Poly, alphabet: Sequence[str]) -> SchurVector:
    """Schur expansion of ``p``, a symmetric polynomial in ``alphabet`` only."""
    idx = [p.ring.index(a) for a in alphabet]
    others = [i for i in range(len(p.ring.names)) if i not in idx]
    terms = {}
    for e, c in p.terms.items():
        if any(e[i] for i in others):
            raise ValueError("polynomial involves generators outside the alphabet")
        terms[tuple(e[i] for i in idx)] = c
    return schur_expand_terms(terms, len(alphabet))


def schur_poly(lam: Sequence[int], ring: PolyRing, alphabet: Sequence[str]) -> Poly:
    """s_lam as a polynomial in the given alphabet of ``ring``."""
    n = len(alphabet)
    idx = [ring.index(a) for a in alphabet]
    terms = {}
    for e, c in schur_monomials(lam, n).items():
        full = [0] * len(ring.names)
        for i, k in zip(idx, e):
            full[i] = k
        terms[tuple(full)] = c
    return Poly(ring, terms)


# ---------------------------------------------------------------------------
# Exterior powers of symmetric powers


def _monomial_exponents(rank: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(rank), d):
        e = [0] * rank
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def elementary_of_exponents(exps: Sequence[tuple[int, ...]], k: int) -> dict[tuple[int, ...], int]:
    """e_k evaluated on the monomials x^e, e in ``exps``, as {exponent: coeff}."""
    rank = len(exps[0]) if exps else 0
    # layers[j] = e_j of the monomials processed so far
    layers: list[Counter] = [Counter({(0,) * rank: 1})] + [Counter() for _ in range(k)]
    for e in exps:
        for j in range(k, 0, -1):
            src = layers[j - 1]
            if not src:
                continue
            dst = layers[j]
            for m, c in src.items():
                dst[tuple(a + b for a, b in zip(m, e))] += c
    return {m: c for m, c in layers[k].items() if c}


def wedge_of_sym(k: int, d: int, rank: int) -> SchurVector:
    """Decomposition of the k-th exterior power of Sym^d(C^rank)."""
    exps = _monomial_exponents(rank, d)
    if k > len(exps):
        return SchurVector({}, rank)
    if k == 0:
        return SchurVector.single((0,) * rank)
    return schur_expand_terms(elementary_of_exponents(exps, k), rank)


def sym_power(d: int, rank: int) -> SchurVector:
    return SchurVector.single((d,) + (0,) * (rank - 1))


# ---------------------------------------------------------------------------
# Reduction to elementary symmetric generators


@lru_cache(maxsize=None)
def _elementary_product(powers: tuple[int, ...]) -> dict:
    """Monomial expansion of prod_i e_i^{powers[i-1]} in len(powers) variables."""
    n = len(powers)
    result: dict = {(0,) * n: 1}
    for i, k in enumerate(powers, start=1):
        if not k:
            continue
        ei = {}
        for combo in itertools.combinations(range(n), i):
            e = [0] * n
            for j in combo:
                e[j] = 1
            ei[tuple(e)] = 1
        for _ in range(k):
            nxt: Counter = Counter()
            for a, ca in result.items():
                for b in ei:
                    nxt[tuple(x + y for x, y in zip(a, b))] += ca
            result = dict(nxt)
    return result


def _reduced_ring(ring: PolyRing, alphabet: Sequence[str], targets: Sequence[str]) -> PolyRing:
    alpha = set(alphabet)
    names = [n for n in ring.names if n not in alpha]
    weights = [w for n, w in zip(ring.names, ring.weights) if n not in alpha]
    for i, t in enumerate(targets, start=1):
        if t not in names:
            names.append(t)
            weights.append(i)
    rules = []
    for idx, bound in ring.truncations:
        group = [ring.names[i] for i in idx]
        if alpha & set(group):
            group = [g for g in group if g not in alpha] + list(targets)
        rules.append((group, bound))
    return PolyRing(names, weights, rules)


def elementary_reduce(
    p: Poly,
    alphabet: Sequence[str],
    targets: Sequence[str],
    ring: PolyRing | None = None,
) -> Poly:
    """Rewrite ``p``, symmetric in ``alphabet``, via elementary symmetric ``targets``.

    ``targets[i]`` stands for e_{i+1}(alphabet).  Other generators of ``p``
    are carried along as coefficients.  The result lives in ``ring`` (default:
    the ring of ``p`` with the alphabet swapped for the targets, truncation
    rules translated accordingly).
    """
    n = len(alphabet)
    if len(targets) != n:
        raise ValueError("need one target per alphabet variable")
    src = p.ring
    out_ring = ring or _reduced_ring(src, alphabet, targets)
    a_idx = [src.index(a) for a in alphabet]
    rest_names = [nm for nm in src.names if nm not in set(alphabet)]
    rest_idx = [src.index(nm) for nm in rest_names]
    out_rest = [out_ring.index(nm) for nm in rest_names]
    out_tgt = [out_ring.index(t) for t in targets]

    work: dict[tuple, dict] = {}
    for e, c in p.terms.items():
        a = tuple(e[i] for i in a_idx)
        r = tuple(e[i] for i in rest_idx)
        work.setdefault(a, {})[r] = c
    # full symmetry check over adjacent transpositions
    for i in range(n - 1):
        for a, coeffs in work.items():
            sw = list(a)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            if work.get(tuple(sw)) != coeffs:
                raise NotSymmetric(f"{alphabet[i]} <-> {alphabet[i + 1]} changes the polynomial")

    result: dict = {}
    bound = max(1, sum(len(v) for v in work.values())) ** 2 + 1
    steps = 0
    while work:
        steps += 1
        if steps > bound:
            raise NotSymmetric("reduction did not terminate within the step bound")
        lead = max(work)
        if any(x < y for x, y in zip(lead, lead[1:])):
            raise NotSymmetric(f"leading exponent {lead} is not a partition")
        coeffs = dict(work[lead])
        powers = tuple(lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n))
        for m, k in _elementary_product(powers).items():
            slot = work.setdefault(m, {})
            for r, c in coeffs.items():
                v = slot.get(r, 0) - c * k
                if v:
                    slot[r] = v
                else:
                    slot.pop(r, None)
            if not slot:
                del work[m]
        for r, c in coeffs.items():
            full = [0] * len(out_ring.names)
            for j, x in zip(out_rest, r):
                full[j] = x
            for j, x in zip(out_tgt, powers):
                full[j] += x
            t = tuple(full)
            result[t] = result.get(t, 0) + c
    return Poly(out_ring, result)


def expand_elementary(p: Poly, targets: Sequence[str], alphabet: Sequence[str], ring: PolyRing) -> Poly:
    """Inverse of :func:`elementary_reduce`: substitute e_i(alphabet) for targets[i]."""
    values = {}
    n = len(alphabet)
    for i, t in enumerate(targets, start=1):
        acc = ring.zero()
        for combo in itertools.combinations(alphabet, i):
            acc = acc + prod((ring.gen(a) for a in combo), start=ring.one())
        values[t] = acc
    return p.subs(values, ring)


def binomial_rank_check(k: int, d: int, rank: int) -> bool:
    return wedge_of_sym(k, d, rank).total_dim() == comb(comb(rank + d - 1, d), k)
