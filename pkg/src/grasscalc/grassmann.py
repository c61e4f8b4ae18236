"""Chow ring of Gr(k, N) in the Schur basis.

Classes are Schur vectors with every weight inside the k x (N-k) box.  Named
Chern generators are translated by C_i -> s(1^i) and d_i -> sign^i s(i), where
C are the classes of the dual tautological subbundle and d those of the
quotient.  With ``quot_sign=+1`` (the default) d_i are the Chern classes of
the quotient bundle itself; ``quot_sign=-1`` treats them as classes of its dual.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import cache
from .poly import Poly, PolyRing
from .symfunc import SchurVector, Weight, lr_product


class GeneratorOutOfRange(ValueError):
    """A Chern generator index exceeds the rank of its bundle."""


@dataclass(frozen=True)
class GrassSpec:
    k: int
    N: int

    def __post_init__(self):
        if not 0 < self.k < self.N:
            raise ValueError(f"need 0 < k < N, got k={self.k}, N={self.N}")

    @property
    def width(self) -> int:
        return self.N - self.k

    @property
    def box(self) -> tuple[int, int]:
        return (self.k, self.width)

    @property
    def dim(self) -> int:
        return self.k * self.width

    @property
    def point(self) -> Weight:
        return (self.width,) * self.k

    def fits(self, w) -> bool:
        return len(w) == self.k and w[-1] >= 0 and w[0] <= self.width

    def complement(self, w) -> Weight:
        return tuple(self.width - x for x in reversed(w))


def _key(spec: GrassSpec, lam: Weight, mu: Weight) -> str:
    return f"lr:{spec.k}x{spec.width}:{','.join(map(str, lam))}|{','.join(map(str, mu))}"


def box_product(spec: GrassSpec, lam: Weight, mu: Weight) -> SchurVector:
    """s_lam * s_mu in the Chow ring of ``spec`` (weights outside the box dropped)."""
    if lam < mu:
        lam, mu = mu, lam
    store = cache.active_cache()
    key = _key(spec, lam, mu)
    if store is not None:
        hit = store.get(key)
        if hit is not None:
            return SchurVector.from_json(hit, spec.k)
    res = lr_product(lam, mu, spec.k, maxw=spec.width)
    if store is not None:
        store.put(key, res.to_json())
    return res


class SchurClass:
    """A Chow class of a Grassmannian written in Schubert classes."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: GrassSpec, terms: SchurVector | dict | None = None):
        vec = terms if isinstance(terms, SchurVector) else SchurVector(terms or {}, spec.k)
        self.spec = spec
        self.terms = SchurVector({w: m for w, m in vec.items() if spec.fits(w)}, spec.k)

    @classmethod
    def schubert(cls, spec: GrassSpec, lam, mult: int = 1) -> "SchurClass":
        w = tuple(lam) + (0,) * (spec.k - len(lam))
        return cls(spec, {w: mult})

    @classmethod
    def one(cls, spec: GrassSpec) -> "SchurClass":
        return cls.schubert(spec, ())

    def __add__(self, other: "SchurClass") -> "SchurClass":
        return SchurClass(self.spec, self.terms + other.terms)

    def __sub__(self, other: "SchurClass") -> "SchurClass":
        return SchurClass(self.spec, self.terms - other.terms)

    def scale(self, c: int) -> "SchurClass":
        return SchurClass(self.spec, self.terms.scale(c))

    def __mul__(self, other: "SchurClass") -> "SchurClass":
        acc: dict = {}
        for w1, m1 in self.terms.items():
            for w2, m2 in other.terms.items():
                for nu, m in box_product(self.spec, w1, w2).items():
                    acc[nu] = acc.get(nu, 0) + m1 * m2 * m
        return SchurClass(self.spec, acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, SchurClass) and self.spec == other.spec and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.spec, self.terms))

    def __repr__(self) -> str:
        return f"SchurClass(Gr({self.spec.k},{self.spec.N}): {self.terms})"


def degree(c: SchurClass) -> int:
    """Coefficient of the point class (the full box)."""
    return c.terms[c.spec.point]


_GEN = re.compile(r"^([A-Za-z_]+?)(\d+)$")


def _generator_class(spec: GrassSpec, name: str, sub: str, quot: str, quot_sign: int = 1) -> SchurClass:
    m = _GEN.match(name)
    if not m:
        raise ValueError(f"cannot parse generator {name!r}")
    fam, i = m.group(1), int(m.group(2))
    if fam == sub:
        if i > spec.k:
            raise GeneratorOutOfRange(f"{name}: index exceeds sub rank {spec.k}")
        return SchurClass.schubert(spec, (1,) * i)
    if fam == quot:
        if i > spec.width:
            raise GeneratorOutOfRange(f"{name}: index exceeds quotient rank {spec.width}")
        return SchurClass.schubert(spec, (i,), quot_sign**i)
    raise ValueError(f"generator {name!r} is not a Grassmannian generator")


@lru_cache(maxsize=None)
def _monomial_class(
    spec: GrassSpec, names: tuple[str, ...], exp: tuple[int, ...], sub: str, quot: str, quot_sign: int
) -> SchurClass:
    # multiply the single-generator factors one at a time (Pieri-sized steps)
    acc = SchurClass.one(spec)
    for name, k in zip(names, exp):
        if not k:
            continue
        g = _generator_class(spec, name, sub, quot, quot_sign)
        for _ in range(k):
            acc = acc * g
            if not acc.terms:
                return acc
    return acc


def to_schur(g: Poly, spec: GrassSpec, sub: str = "C", quot: str = "d", quot_sign: int = 1) -> SchurClass:
    """Translate a polynomial in C_i (dual subbundle) and d_i (quotient) into Schubert classes."""
    names = g.ring.names
    acc = SchurClass(spec)
    for e, c in g.terms.items():
        if c != int(c):
            raise ValueError("Schur translation expects integer coefficients")
        mono = _monomial_class(spec, names, e, sub, quot, quot_sign)
        acc = acc + mono.scale(int(c))
    return acc


def pushforward_to_x(
    mixed: Poly,
    spec: GrassSpec,
    x_names,
    sub: str = "C",
    quot: str = "d",
    x_degree: int | None = None,
    quot_sign: int = 1,
) -> Poly:
    """Integrate the Grassmannian factor of ``mixed`` out.

    Each X-monomial keeps the point-class coefficient of its Grassmannian
    coefficient; with ``x_degree`` only X-monomials of that weighted degree
    are kept.  The result lives in the ring generated by ``x_names``.
    """
    ring = mixed.ring
    x_names = list(x_names)
    x_idx = [ring.index(n) for n in x_names]
    out_ring = PolyRing(x_names, [ring.weights[i] for i in x_idx])
    gr_names = [n for n in ring.names if n not in set(x_names)]
    gr_idx = [ring.index(n) for n in gr_names]
    gr_ring = PolyRing(gr_names, [ring.weights[i] for i in gr_idx])
    grouped: dict[tuple, dict] = {}
    for e, c in mixed.terms.items():
        xe = tuple(e[i] for i in x_idx)
        if x_degree is not None and out_ring.weighted_degree(xe) != x_degree:
            continue
        ge = tuple(e[i] for i in gr_idx)
        if gr_ring.weighted_degree(ge) != spec.dim:
            continue
        grouped.setdefault(xe, {})[ge] = c
    result = {}
    for xe, terms in grouped.items():
        d = degree(to_schur(Poly(gr_ring, terms), spec, sub, quot, quot_sign))
        if d:
            result[xe] = d
    return Poly(out_ring, result)
