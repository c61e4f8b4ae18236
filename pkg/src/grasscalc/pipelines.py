"""End-to-end computations for the Voisin self-map of Fano schemes of r-planes in cubics.

X = F_r(Y) is the variety of r-planes in a cubic hypersurface Y of P^n with
n = binom(r+3, 2) - 1.  E denotes the tautological rank-(r+1) bundle on X.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb, isqrt

from .chowring import (
    FormalBundle,
    chern_family,
    chern_of_sym,
    euler_line_twist,
    euler_tensor,
    segre_series,
)
from .grassmann import GrassSpec, pushforward_to_x
from .poly import Poly, PolyRing


def ambient_dim(r: int) -> int:
    """n such that X is a Fano scheme of r-planes in a cubic of P^n."""
    return comb(r + 3, 2) - 1


@dataclass(frozen=True)
class VoisinGeometry:
    r: int
    n: int
    N: int
    codim_ind0: int
    codim_ind1: int | None
    codim_fix: int
    deformation_dim: int
    cubic_forms: int
    gl_dim: int

    def as_dict(self) -> dict:
        return asdict(self)


def geometry_dims(r: int) -> VoisinGeometry:
    if r < 0:
        raise ValueError("r must be nonnegative")
    n = ambient_dim(r)
    N = (r + 1) * (n - r) - comb(r + 3, 3)
    cubic_forms = comb(n + 3, 3)
    gl_dim = (n + 1) ** 2
    geo = VoisinGeometry(
        r=r,
        n=n,
        N=N,
        codim_ind0=2,
        codim_ind1=r + 2 if r >= 2 else None,
        codim_fix=r + 1,
        deformation_dim=cubic_forms - gl_dim,
        cubic_forms=cubic_forms,
        gl_dim=gl_dim,
    )
    assert n - r - 1 == comb(r + 2, 2)
    assert N > 0
    return geo


def voisin_degree(r: int) -> int:
    """Degree of the Voisin map via the rank-one locus of a family of quadrics.

    Over P^m, m = n-r-1, with F = O(1)^{r+1} + O(3) (after a degree-2^m base
    change), the count is the degree-m part of 2^{r+1} sum_i 2^i s_i(F) c_{m-i}(Sym^2 F).
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    m = ambient_dim(r) - r - 1
    ring = PolyRing(["h"], truncations=[(["h"], m)])
    h = ring.gen("h")
    line_classes = [h] * (r + 1) + [3 * h]
    F = FormalBundle.split(ring, line_classes)
    sym2_roots = [
        line_classes[i] + line_classes[j]
        for i in range(len(line_classes))
        for j in range(i, len(line_classes))
    ]
    sym2F = FormalBundle.split(ring, sym2_roots)
    s = segre_series(F)
    acc = ring.zero()
    for i in range(m + 1):
        acc = acc + 2**i * s.homogeneous(i) * sym2F.chern(m - i)
    top = (2 ** (r + 1) * acc).coeff({"h": m})
    if top % 2**m:
        raise ArithmeticError(f"top coefficient {top} not divisible by 2^{m}")
    return top // 2**m


def psi_pullback_divisor(r: int) -> int:
    """Coefficient a with Psi^* h = a h, h = c_1(E^*).

    Uses 0 -> F -> V (x) O_X -> Sym^2 E^* -> 0, the inclusion E -> F, and
    Psi^* E = F - 2 (F/E)^* at the level of first Chern classes.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    ring = PolyRing(["h"])
    h = ring.gen("h")
    s1 = chern_of_sym(2, r + 1, cutoff=1)[0]  # multiple of c1(E^*)
    c1_sym2 = s1.subs({"c1": h}, ring) if s1 else ring.zero()
    c1_F = -c1_sym2
    c1_E = -h
    c1_quot_dual = -(c1_F - c1_E)
    c1_psi_E = c1_F - 2 * c1_quot_dual
    return -c1_psi_E.coeff({"h": 1})


def symmetric_degeneracy_codim(b: int, rk: int) -> int:
    """Codimension of symmetric b x b matrices of rank <= rk."""
    if not 0 <= rk <= b:
        raise ValueError("need 0 <= rk <= b")
    return comb(b - rk + 1, 2)


def fibgen_brute(n: int) -> tuple[int, int]:
    """Minimal g with some k >= 0 satisfying g >= n+k and g >= 2n-1+k-k(k+1)/2; returns (g, k)."""
    best = None
    for k in range(0, 2 * n + 2):
        g = max(n + k, 2 * n - 1 + k - k * (k + 1) // 2)
        if best is None or g < best[0]:
            best = (g, k)
    return best


def fibgen_closed_form(n: int) -> int:
    """n + ceil((-1 + sqrt(8n-7)) / 2), evaluated in integers."""
    d = 8 * n - 7
    root = isqrt(d)
    if root * root < d:
        root += 1
    # smallest t with 2t + 1 >= ceil(sqrt(d))
    return n + root // 2


def fibgen_bound(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    g, _ = fibgen_brute(n)
    closed = fibgen_closed_form(n)
    if g != closed:
        raise AssertionError(f"brute force {g} disagrees with closed form {closed} at n={n}")
    return g


# ---------------------------------------------------------------------------
# class of the fixed locus


def fixed_locus_ring(r: int) -> PolyRing:
    n = ambient_dim(r)
    m = n - r - 1
    return PolyRing.chern({"c": r + 1, "C": r + 2, "d": m}, cutoffs={"c": r + 1})


def fixed_locus_factors(r: int) -> tuple[Poly, Poly, Poly]:
    """The three Euler classes whose product is the class upstairs on X x Gr(r+2, n+1).

    e1 = e(E^* (x) (V - F)), e2 = e((F^* - E^*) (x) Sym^2 E^*),
    e3 = e((F^* - E^*)^2 (x) E^*), truncated to c-degree <= r+1.
    """
    ring = fixed_locus_ring(r)
    n = ambient_dim(r)
    m = n - r - 1
    e1 = euler_tensor(r + 1, m, "c", "d", a_cutoff=r + 1).to_ring(ring)
    c = chern_family(ring, "c", r + 1)
    C1 = ring.gen("C1")
    quot = C1 - c[0]
    sym_rank = comb(r + 2, 2)
    S = [p.to_ring(ring) for p in chern_of_sym(2, r + 1, cutoff=r + 1)]
    S = S + [ring.zero()] * (sym_rank - len(S))
    e2 = euler_line_twist(quot, S)
    e3 = euler_line_twist(2 * quot, c)
    return e1, e2, e3


def fixed_locus_upstairs(r: int) -> Poly:
    e1, e2, e3 = fixed_locus_factors(r)
    return e1 * e2 * e3


def fixed_locus_class(r: int, quot_sign: int = 1) -> Poly:
    """Class of the fixed locus of the Voisin map in CH^{r+1}(X), in c_i = c_i(E^*).

    ``quot_sign`` is the sign convention of the quotient classes d_i in the
    Schubert translation; +1 is the one consistent with the r=1 value 21 c2.
    """
    if r not in (1, 2, 3):
        raise ValueError("fixed-locus class is implemented for r in {1, 2, 3}")
    n = ambient_dim(r)
    spec = GrassSpec(r + 2, n + 1)
    upstairs = fixed_locus_upstairs(r)
    names = [f"c{i}" for i in range(1, r + 2)]
    return pushforward_to_x(upstairs, spec, names, x_degree=r + 1, quot_sign=quot_sign)


def monomial_label(powers: dict[str, int]) -> str:
    """'c1^3', 'c1c2', 'c3' style label."""
    parts = []
    for name in sorted(powers, key=lambda s: (s.rstrip("0123456789"), int(s[len(s.rstrip("0123456789")):]))):
        k = powers[name]
        parts.append(name if k == 1 else f"{name}^{k}")
    return "".join(parts)


def class_coefficients(p: Poly) -> dict[str, int]:
    return {monomial_label(powers): c for powers, c in p.items()}
