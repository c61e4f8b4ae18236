"""Bott's theorem on Gr(r+1, n+1), Koszul E1 tables and their assembly.

Homogeneous bundles are sums of L_a Q (x) L_b E with E the tautological
subbundle (rank r+1) and Q the quotient (rank n-r).  X is the zero locus of a
section of Sym^d E^*; its Koszul resolution gives a spectral sequence

    E1^{-k, j} = H^j(G, wedge^k Sym^d E (x) B)  =>  H^{j-k}(X, B|_X),

with differentials d_r : E_r^{-k, j} -> E_r^{-k+r, j-r+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .grassmann import GrassSpec
from .symfunc import Weight, as_weight, lr_product, weyl_dim, wedge_of_sym


class AmbiguousAssembly(RuntimeError):
    """Exact cohomology was requested but the data only constrain it."""


# ---------------------------------------------------------------------------
# Bott's theorem


@dataclass(frozen=True)
class BottOutput:
    """Cohomology of an irreducible homogeneous bundle: zero, or one degree q with a GL(n+1)-module."""

    q: int | None
    xi: Weight | None
    dim: int

    @property
    def vanishing(self) -> bool:
        return self.q is None

    def to_json(self):
        if self.vanishing:
            return {"vanishing": True}
        return {"q": self.q, "xi": list(self.xi), "dim": self.dim}


VANISHING = BottOutput(None, None, 0)


def bott_cohomology(spec: GrassSpec, lam_q: Sequence[int], lam_e: Sequence[int]) -> BottOutput:
    """H^*(Gr, L_{lam_q} Q (x) L_{lam_e} E) for ``spec`` = Gr(r+1, n+1).

    ``lam_q`` has length n-r (the quotient rank), ``lam_e`` length r+1.
    """
    lam_q = as_weight(lam_q, spec.N - spec.k)
    lam_e = as_weight(lam_e, spec.k)
    lam = lam_q + lam_e
    c = range(1, spec.N + 1)
    diff = [a - b for a, b in zip(lam, c)]
    if len(set(diff)) != len(diff):
        return VANISHING
    q = sum(1 for i in range(len(diff)) for j in range(i + 1, len(diff)) if diff[i] < diff[j])
    xi = tuple(a + b for a, b in zip(sorted(diff, reverse=True), c))
    return BottOutput(q, xi, weyl_dim(xi))


def serre_dual(spec: GrassSpec, lam_q: Sequence[int], lam_e: Sequence[int]) -> tuple[Weight, Weight]:
    """Weights of B^* (x) K_G for B = L_{lam_q} Q (x) L_{lam_e} E."""
    lam_q = as_weight(lam_q, spec.N - spec.k)
    lam_e = as_weight(lam_e, spec.k)
    # K_G = (det E)^{N-k} (x) (det Q^*)^k
    dq = tuple(-x - spec.k for x in reversed(lam_q))
    de = tuple(-x + spec.width for x in reversed(lam_e))
    return dq, de


# ---------------------------------------------------------------------------
# homogeneous bundles


@dataclass(frozen=True)
class HomBundle:
    """Formal sum of irreducibles L_q Q (x) L_e E, as ((q_weight, e_weight), multiplicity) pairs."""

    terms: tuple[tuple[Weight, Weight, int], ...]
    label: str = ""

    @classmethod
    def irreducible(cls, spec: GrassSpec, q: Sequence[int] = (), e: Sequence[int] = (), label: str = "") -> "HomBundle":
        return cls(((as_weight(q, spec.width), as_weight(e, spec.k), 1),), label)

    def fiber_rank(self) -> int:
        return sum(m * weyl_dim(q) * weyl_dim(e) for q, e, m in self.terms)


def sym_e(spec: GrassSpec, d: int) -> HomBundle:
    return HomBundle.irreducible(spec, e=(d,), label=f"Sym^{d} E")


def sym_e_dual(spec: GrassSpec, d: int) -> HomBundle:
    return HomBundle.irreducible(spec, e=(0,) * (spec.k - 1) + (-d,), label=f"Sym^{d} E^*")


def e_tensor_q_dual(spec: GrassSpec) -> HomBundle:
    """E (x) Q^*, the cotangent bundle of the Grassmannian."""
    return HomBundle.irreducible(spec, q=(0,) * (spec.width - 1) + (-1,), e=(1,), label="E (x) Q^*")


def e_dual_tensor_q(spec: GrassSpec) -> HomBundle:
    """E^* (x) Q, the tangent bundle of the Grassmannian."""
    return HomBundle.irreducible(spec, q=(1,), e=(0,) * (spec.k - 1) + (-1,), label="E^* (x) Q")


def trivial_bundle(spec: GrassSpec) -> HomBundle:
    return HomBundle.irreducible(spec, label="O")


# ---------------------------------------------------------------------------
# Koszul tables


Cell = tuple[int, int]


@dataclass
class KoszulTable:
    spec: GrassSpec
    section_rank: int
    entries: dict[Cell, list[tuple[Weight, int, int]]] = field(default_factory=dict)
    label: str = ""

    def dims(self) -> dict[Cell, int]:
        return {cell: sum(m * d for _, m, d in terms) for cell, terms in sorted(self.entries.items())}

    def dim(self, k: int, j: int) -> int:
        return sum(m * d for _, m, d in self.entries.get((k, j), []))

    def euler(self) -> int:
        return sum((-1) ** (j - k) * d for (k, j), d in self.dims().items())

    def to_json(self) -> dict:
        cells = []
        for (k, j), terms in sorted(self.entries.items()):
            cells.append(
                {
                    "k": k,
                    "j": j,
                    "dim": self.dim(k, j),
                    "terms": [{"xi": list(xi), "mult": m, "dim": d} for xi, m, d in terms],
                }
            )
        return {
            "grassmannian": [self.spec.k, self.spec.N],
            "section_rank": self.section_rank,
            "bundle": self.label,
            "cells": cells,
        }


def koszul_fiber(spec: GrassSpec, B: HomBundle, k: int, d: int = 3) -> list[tuple[Weight, Weight, int]]:
    """Irreducible pieces (q_weight, e_weight, mult) of wedge^k Sym^d E (x) B."""
    wedge = wedge_of_sym(k, d, spec.k)
    out: dict[tuple[Weight, Weight], int] = {}
    for qw, ew, m in B.terms:
        for w, mw in wedge.items():
            for nu, mu in lr_product(w, ew, spec.k).items():
                key = (qw, nu)
                out[key] = out.get(key, 0) + m * mw * mu
    return [(q, e, m) for (q, e), m in sorted(out.items(), reverse=True) if m]


def koszul_e1_table(spec: GrassSpec, B: HomBundle, d: int = 3) -> KoszulTable:
    """E1 page for X = zero locus of a section of Sym^d E^* on ``spec``."""
    s = comb(spec.k + d - 1, d)
    table = KoszulTable(spec, s, label=B.label)
    for k in range(s + 1):
        for qw, ew, m in koszul_fiber(spec, B, k, d):
            res = bott_cohomology(spec, qw, ew)
            if res.vanishing:
                continue
            cell = table.entries.setdefault((k, res.q), [])
            for i, (xi, mult, dim) in enumerate(cell):
                if xi == res.xi:
                    cell[i] = (xi, mult + m, dim)
                    break
            else:
                cell.append((res.xi, m, res.dim))
    for cell in table.entries.values():
        cell.sort(reverse=True)
    return table


def verify_vanishing_window(
    spec: GrassSpec, B: HomBundle, window: Callable[[int], Iterable[int]], d: int = 3, table: KoszulTable | None = None
) -> list[dict]:
    """Nonzero E1 cells (k, j) with j in window(k); empty when the window holds."""
    table = table or koszul_e1_table(spec, B, d)
    bad = []
    for (k, j), dim in table.dims().items():
        if dim and j in set(window(k)):
            bad.append({"k": k, "j": j, "dim": dim})
    return bad


# ---------------------------------------------------------------------------
# assembly


MAXIMAL_RANK = "maximal-rank"
CONSTRAINTS_ONLY = "constraints-only"


@dataclass
class SSReport:
    """Abutment of the Koszul spectral sequence: degree -> exact int or (lo, hi)."""

    abutment: dict[int, int | tuple[int, int]]
    euler: int
    assumptions: list[str]
    policy: str
    forced: list[str] = field(default_factory=list)

    def exact(self) -> dict[int, int]:
        out = {}
        for i, v in self.abutment.items():
            if isinstance(v, tuple):
                raise AmbiguousAssembly(f"degree {i} only known to lie in [{v[0]}, {v[1]}]")
            out[i] = v
        return out

    def is_exact(self) -> bool:
        return not any(isinstance(v, tuple) for v in self.abutment.values())

    def euler_of_abutment(self) -> int | None:
        if not self.is_exact():
            return None
        return sum((-1) ** i * v for i, v in self.abutment.items())

    def to_json(self) -> dict:
        ab = {}
        for i, v in sorted(self.abutment.items()):
            ab[str(i)] = {"min": v[0], "max": v[1]} if isinstance(v, tuple) else v
        return {
            "abutment": ab,
            "euler": self.euler,
            "assumptions": list(self.assumptions),
            "forced": list(self.forced),
            "policy": self.policy,
        }


def _partners(cells: Mapping[Cell, int], cell: Cell, max_page: int) -> list[Cell]:
    k, j = cell
    out = []
    for r in range(1, max_page + 1):
        for other in ((k - r, j - r + 1), (k + r, j + r - 1)):
            if cells.get(other):
                out.append(other)
    return out


def assemble_restriction(
    table: KoszulTable,
    policy: str = MAXIMAL_RANK,
    dim_x: int | None = None,
    require_exact: bool = False,
) -> SSReport:
    """Abut the Koszul spectral sequence of ``table`` to H^*(X, B|_X).

    Under ``maximal-rank`` every differential between surviving cells gets the
    largest rank the remaining dimensions allow, page by page (d1 first), with
    a shared budget per cell so that d o d = 0 stays possible.  Each nonzero
    rank is recorded; ranks forced because a cell sits in a degree outside
    [0, dim_x] are listed separately from genuine genericity assumptions.

    Under ``constraints-only`` cells without possible partners are exact and
    the others are bounded below by dim - sum(partner dims).
    """
    dims = {c: d for c, d in table.dims().items() if d}
    euler = sum((-1) ** (j - k) * d for (k, j), d in dims.items())
    max_page = table.section_rank + 1
    assumptions: list[str] = []
    forced: list[str] = []

    def out_of_range(cell: Cell) -> bool:
        if dim_x is None:
            return False
        deg = cell[1] - cell[0]
        return deg < 0 or deg > dim_x

    if policy == MAXIMAL_RANK:
        current = dict(dims)
        for r in range(1, max_page + 1):
            budget = dict(current)
            for src in sorted(current, reverse=True):
                k, j = src
                tgt = (k - r, j - r + 1)
                if not current.get(tgt):
                    continue
                rank = min(budget[src], budget[tgt])
                if rank <= 0:
                    continue
                budget[src] -= rank
                budget[tgt] -= rank
                kind = "surjective" if rank == current[tgt] else "injective" if rank == current[src] else "maximal rank"
                text = (
                    f"d{r}: E{r}(k={k}, j={j}) -> E{r}(k={tgt[0]}, j={tgt[1]}) has rank {rank} ({kind})"
                )
                sole = len(_partners(dims, src, max_page)) == 1 and len(_partners(dims, tgt, max_page)) == 1
                if sole and (out_of_range(src) or out_of_range(tgt)):
                    forced.append(text + f"; forced since H^i(X, -) = 0 outside 0..{dim_x}")
                else:
                    assumptions.append(text + f"; genericity: a generic section gives a {kind} contraction map")
            current = {c: d for c, d in budget.items() if d}
        abut: dict[int, int | tuple[int, int]] = {}
        for (k, j), d in current.items():
            abut[j - k] = abut.get(j - k, 0) + d
        for i in list(abut):
            if out_of_range((0, i)) and abut[i]:
                raise AmbiguousAssembly(f"maximal-rank assembly leaves H^{i} nonzero beyond dim X")
        abut = {i: v for i, v in sorted(abut.items()) if v}
    elif policy == CONSTRAINTS_ONLY:
        lo_hi: dict[int, list[int]] = {}
        for cell, d in dims.items():
            partners = _partners(dims, cell, max_page)
            lo = max(0, d - sum(dims[p] for p in partners)) if partners else d
            deg = cell[1] - cell[0]
            acc = lo_hi.setdefault(deg, [0, 0])
            acc[0] += lo
            acc[1] += d
        abut = {}
        for i, (lo, hi) in sorted(lo_hi.items()):
            if hi == 0:
                continue
            abut[i] = lo if lo == hi else (lo, hi)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    report = SSReport(abut, euler, assumptions, policy, forced)
    if require_exact:
        report.exact()
    return report


# ---------------------------------------------------------------------------
# Hodge numbers h^{p,1} of X for r = 2


FACT_PHI8_ISO = "phi8-iso"
FACT_H11_OMEGA = "h11-omega-zero"

DEFAULT_FACTS: dict[str, str] = {
    FACT_PHI8_ISO: (
        "the map H^8(X, S^3E|_X) -> H^8(X, (E (x) Q^*)|_X) is an isomorphism "
        "(both sides identify with L_(3,1,...,1) V_10 and the map is the identity)"
    ),
    FACT_H11_OMEGA: "h^11(X, Omega_X) = h^1(X, K_X) = h^{1,0}(X) = 0",
}


@dataclass
class HodgeReport:
    numbers: dict[int, int]
    assumptions: list[str]
    restriction_sym3: SSReport
    restriction_cotangent: SSReport
    map_ranks: dict[int, int]

    def to_json(self) -> dict:
        return {
            "h_p1": {str(p): v for p, v in sorted(self.numbers.items())},
            "assumptions": list(self.assumptions),
            "map_ranks": {str(q): v for q, v in sorted(self.map_ranks.items())},
            "sym3E_restriction": self.restriction_sym3.to_json(),
            "cotangent_restriction": self.restriction_cotangent.to_json(),
        }


def hodge_numbers_omega(
    r: int = 2,
    facts: Mapping[str, str] | None = None,
    policy: str = MAXIMAL_RANK,
) -> HodgeReport:
    """h^q(X, Omega_X) = h^{q,1}... via 0 -> S^3E|_X -> (E (x) Q^*)|_X -> Omega_X -> 0.

    Writing a_q = h^q(S^3E|_X), b_q = h^q((E (x) Q^*)|_X) and phi_q for the
    induced maps, h^q(Omega_X) = (b_q - rk phi_q) + (a_{q+1} - rk phi_{q+1}).
    A phi_q between two nonzero spaces needs a declared fact.
    """
    if r != 2:
        raise ValueError("Hodge numbers are only assembled for r = 2")
    facts = DEFAULT_FACTS if facts is None else dict(facts)
    n = comb(r + 3, 2) - 1
    spec = GrassSpec(r + 1, n + 1)
    dim_x = (r + 1) * (n - r) - comb(r + 3, 3)
    rep_a = assemble_restriction(koszul_e1_table(spec, sym_e(spec, 3)), policy, dim_x=dim_x)
    rep_b = assemble_restriction(koszul_e1_table(spec, e_tensor_q_dual(spec)), policy, dim_x=dim_x)
    a = rep_a.exact()
    b = rep_b.exact()
    used: list[str] = list(rep_a.assumptions) + list(rep_b.assumptions)
    ranks: dict[int, int] = {}
    for q in range(dim_x + 2):
        aq, bq = a.get(q, 0), b.get(q, 0)
        if not aq or not bq:
            ranks[q] = 0
            continue
        if q == 8 and FACT_PHI8_ISO in facts:
            if aq != bq:
                raise AmbiguousAssembly("declared isomorphism between spaces of different dimension")
            ranks[q] = aq
            used.append(facts[FACT_PHI8_ISO])
        elif q == dim_x and FACT_H11_OMEGA in facts:
            # h^{dim X}(Omega) = b - rk phi, forced to vanish
            if bq > aq:
                raise AmbiguousAssembly("h^11(Omega_X) = 0 is incompatible with the computed dimensions")
            ranks[q] = bq
            used.append(facts[FACT_H11_OMEGA])
        else:
            raise AmbiguousAssembly(f"rank of H^{q}(S^3E|_X) -> H^{q}((E (x) Q^*)|_X) is not determined")
    numbers = {}
    for q in range(dim_x + 1):
        h = (b.get(q, 0) - ranks.get(q, 0)) + (a.get(q + 1, 0) - ranks.get(q + 1, 0))
        if h:
            numbers[q] = h
    return HodgeReport(numbers, used, rep_a, rep_b, ranks)
