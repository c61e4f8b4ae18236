"""Finite-field check of the differential of the Voisin map at a fixed point.

A fixed r-plane P = {x_{r+1} = ... = x_n = 0} lies on the cubic

    f = x_{r+1}^3 + sum_{i >= r+2} x_i Q_i(x),

with Q_i random quadrics.  Tangent vectors to X = F_r(Y) at P are tuples
(Y_{r+1}, ..., Y_n) of linear forms on P with sum_{i>=r+2} Y_i q_i = 0, where
q_i = Q_i|_P.  The differential sends

    (Y_{r+1}, Y_{r+2}, ..., Y_n) -> (-2 Y_{r+1} - rho, Y_{r+2}, ..., Y_n),

where rho is the linear form left after lifting Y_i to the (r+1)-plane
Pi = P + <e_{r+1}> so that x_{r+1}^2 divides sum Y_i Q_i|_Pi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import QQ, PrimeField, SingularMatrix, charpoly, det, nullspace, poly_from_roots, rank, rref, solve
from .pipelines import ambient_dim, geometry_dims

DEFAULT_PRIME = 10007
RETRY_BOUND = 16


class GenericityFailure(RuntimeError):
    """No generic sample found within the retry bound."""


class UnexpectedDimension(RuntimeError):
    """The tangent space does not have the expected dimension."""


class LiftFailure(ArithmeticError):
    """The divisibility condition for the lift cannot be solved uniquely."""


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _field(prime: int | None, exact: bool):
    if exact:
        return QQ
    p = DEFAULT_PRIME if prime is None else prime
    if p in (2, 3):
        raise ValueError("characteristic 2 and 3 are excluded (the map involves 2 and 3)")
    return PrimeField(p)


@dataclass
class CubicWithFixedPlane:
    r: int
    n: int
    field: object
    seed: int
    attempt: int
    # quadrics[i - (r+2)] maps exponent vectors in n+1 variables to coefficients
    quadrics: list[dict[tuple[int, ...], object]]

    @property
    def plane_vars(self) -> int:
        return self.r + 1

    def restriction(self, i: int):
        """Q_i on Pi = q_i(x') + x_{r+1} l_i(x') + x_{r+1}^2 kappa_i."""
        r = self.r
        Q = self.quadrics[i - (r + 2)]
        F = self.field
        q: dict[tuple[int, ...], object] = {}
        lin = [F(0)] * (r + 1)
        kappa = F(0)
        for e, c in Q.items():
            if any(e[r + 2 :]):
                continue
            head, t = e[: r + 1], e[r + 1]
            if t == 0:
                q[head] = F(q.get(head, 0) + c)
            elif t == 1:
                lin[head.index(1)] = F(lin[head.index(1)] + c)
            else:
                kappa = F(kappa + c)
        return q, lin, kappa

    def polynomial_terms(self) -> dict[tuple[int, ...], object]:
        """f as {exponent: coefficient} in n+1 variables."""
        F = self.field
        terms: dict[tuple[int, ...], object] = {}
        cube = [0] * (self.n + 1)
        cube[self.r + 1] = 3
        terms[tuple(cube)] = F(1)
        for idx, Q in enumerate(self.quadrics):
            i = self.r + 2 + idx
            for e, c in Q.items():
                e2 = list(e)
                e2[i] += 1
                t = tuple(e2)
                terms[t] = F(terms.get(t, 0) + c)
        return {e: c for e, c in terms.items() if c != 0}


def _draw_quadrics(r: int, n: int, seed: int, attempt: int, F, small: bool):
    monos = monomials(n + 1, 2)
    out = []
    for i in range(r + 2, n + 1):
        rng = np.random.default_rng([seed, i, attempt])
        if small:
            vals = rng.integers(-9, 10, size=len(monos))
        else:
            vals = rng.integers(0, F.p, size=len(monos))
        out.append({e: F(int(v)) for e, v in zip(monos, vals)})
    return out


def _quadric_basis_matrix(c: CubicWithFixedPlane) -> list[list]:
    monos = monomials(c.r + 1, 2)
    cols = []
    for i in range(c.r + 2, c.n + 1):
        q, _, _ = c.restriction(i)
        cols.append([q.get(m, c.field(0)) for m in monos])
    return [list(row) for row in zip(*cols)]


def sample_cubic(
    r: int, seed: int, prime: int | None = DEFAULT_PRIME, exact: bool = False, small: bool | None = None
) -> CubicWithFixedPlane:
    """Deterministic cubic containing P with x_{r+1}^3 as its only term in x_{r+1} alone.

    Coefficients come from numpy's generator seeded with (seed, index, attempt);
    with ``small`` they are integers in [-9, 9] so that the same sample can be
    read over Q and over F_p.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    F = _field(prime, exact)
    if small is None:
        small = exact
    n = ambient_dim(r)
    for attempt in range(RETRY_BOUND):
        quads = _draw_quadrics(r, n, seed, attempt, F, small)
        c = CubicWithFixedPlane(r, n, F, seed, attempt, quads)
        M = _quadric_basis_matrix(c)
        if rank(M, F) == comb(r + 2, 2):
            return c
    raise GenericityFailure(f"no generic cubic for r={r}, seed={seed} after {RETRY_BOUND} attempts")


# tangent vectors are flat coordinate lists: block i (i = r+1..n) holds the
# r+1 coefficients of the linear form Y_i on P


def _product_coeffs(lin_index: int, quad: dict, nvars: int, cubic_index: dict, F) -> dict[int, object]:
    out: dict[int, object] = {}
    for e, c in quad.items():
        e2 = list(e)
        e2[lin_index] += 1
        row = cubic_index[tuple(e2)]
        out[row] = F(out.get(row, 0) + c)
    return out


def tangent_equations(c: CubicWithFixedPlane) -> list[list]:
    """Matrix of (Y_{r+1..n}) -> sum_{i>=r+2} Y_i q_i (cubic coefficients)."""
    r, n, F = c.r, c.n, c.field
    m = r + 1
    cubics = monomials(m, 3)
    cubic_index = {e: k for k, e in enumerate(cubics)}
    ncols = (n - r) * m
    rows = [[F(0)] * ncols for _ in cubics]
    for i in range(r + 2, n + 1):
        q, _, _ = c.restriction(i)
        block = (i - (r + 1)) * m
        for a in range(m):
            for row, val in _product_coeffs(a, q, m, cubic_index, F).items():
                rows[row][block + a] = F(rows[row][block + a] + val)
    return rows


def tangent_space(c: CubicWithFixedPlane) -> list[list]:
    """Basis of the tangent space: the free Y_{r+1} directions first, then the rest."""
    r, n, F = c.r, c.n, c.field
    m = r + 1
    basis = nullspace(tangent_equations(c), F)
    expected = geometry_dims(r).N
    if len(basis) != expected:
        raise UnexpectedDimension(f"tangent space has dimension {len(basis)}, expected {expected}")
    # order: vectors supported on the Y_{r+1} block first
    normal = [v for v in basis if not any(v[m:])]
    rest = [v for v in basis if any(v[m:])]
    return normal + rest


def lift_quotient(c: CubicWithFixedPlane, v: list) -> list:
    """The linear form rho = [(sum Y_i Q_i|_Pi) / x_{r+1}^2]|_{x_{r+1}=0} for tangent vector v."""
    r, n, F = c.r, c.n, c.field
    m = r + 1
    quads = monomials(m, 2)
    qidx = {e: k for k, e in enumerate(quads)}
    ys = {i: v[(i - (r + 1)) * m : (i - r) * m] for i in range(r + 2, n + 1)}
    parts = {i: c.restriction(i) for i in range(r + 2, n + 1)}
    # x_{r+1}-coefficient: sum_i (Y_i l_i + a_i q_i) = 0, solve for a
    rhs = [F(0)] * len(quads)
    for i in range(r + 2, n + 1):
        _, lin, _ = parts[i]
        for a in range(m):
            for b in range(m):
                e = [0] * m
                e[a] += 1
                e[b] += 1
                k = qidx[tuple(e)]
                rhs[k] = F(rhs[k] - ys[i][a] * lin[b])
    A = _quadric_basis_matrix(c)
    try:
        lift = solve(A, rhs, F)
    except SingularMatrix as exc:
        raise LiftFailure("divisibility system is singular") from exc
    # expand S = sum_i (Y_i + a_i t) Q_i|_Pi with t = x_{r+1}, variables (x', t)
    S: dict[tuple[int, ...], object] = {}
    for idx, i in enumerate(range(r + 2, n + 1)):
        q, lin, kappa = parts[i]
        Qpi = {e + (0,): cf for e, cf in q.items()}
        for a in range(m):
            e = [0] * (m + 1)
            e[a], e[m] = 1, 1
            Qpi[tuple(e)] = F(Qpi.get(tuple(e), 0) + lin[a])
        Qpi[(0,) * m + (2,)] = F(Qpi.get((0,) * m + (2,), 0) + kappa)
        lifted = {tuple(1 if j == a else 0 for j in range(m + 1)): ys[i][a] for a in range(m)}
        lifted[(0,) * m + (1,)] = lift[idx]
        for e1, c1 in lifted.items():
            for e2, c2 in Qpi.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                S[e] = F(S.get(e, 0) + c1 * c2)
    # exact remainder modulo t^2 must vanish
    if any(cf != 0 for e, cf in S.items() if e[m] < 2):
        raise LiftFailure("x_{r+1}^2 does not divide the lifted expression")
    # quotient by t^2, then set t = 0: the coefficients of x_a t^2
    rho = [F(0)] * m
    for e, cf in S.items():
        if e[m] == 2:
            rho[e.index(1)] = F(rho[e.index(1)] + cf)
    return rho


def apply_differential(c: CubicWithFixedPlane, v: list) -> list:
    F = c.field
    m = c.r + 1
    rho = lift_quotient(c, v)
    out = list(v)
    for a in range(m):
        out[a] = F(-2 * v[a] - rho[a])
    return out


def _coordinates(basis: list[list], w: list, F) -> list:
    # solve sum x_b basis[b] = w using the pivot rows of the basis matrix
    cols = len(basis)
    M = [[basis[b][row] for b in range(cols)] + [w[row]] for row in range(len(w))]
    R, pivots = rref(M, F)
    if cols in pivots:
        raise UnexpectedDimension("image left the tangent space")
    x = [F(0)] * cols
    for row, pc in zip(R, pivots):
        x[pc] = row[cols]
    return x


@dataclass
class JetMatrix:
    matrix: list[list]
    basis: list[list]
    normal_size: int
    field: object

    @property
    def size(self) -> int:
        return len(self.matrix)


def jet_matrix(c: CubicWithFixedPlane) -> JetMatrix:
    F = c.field
    basis = tangent_space(c)
    cols = [_coordinates(basis, apply_differential(c, v), F) for v in basis]
    matrix = [list(row) for row in zip(*cols)]
    normal = sum(1 for v in basis if not any(v[c.r + 1 :]))
    return JetMatrix(matrix, basis, normal, F)


def expected_charpoly(r: int, F) -> list:
    N = geometry_dims(r).N
    return poly_from_roots([(-2, r + 1), (1, N - r - 1)], F)


@dataclass
class SeedReport:
    seed: int
    attempt: int
    size: int
    charpoly: list
    expected: list
    normal_det: object
    trace: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "attempt": self.attempt,
            "tangent_dim": self.size,
            "charpoly_low_to_high": [str(x) for x in self.charpoly],
            "expected_low_to_high": [str(x) for x in self.expected],
            "normal_block_det": str(self.normal_det),
            "trace": str(self.trace),
            "pass": self.passed,
        }


def check_seed(r: int, seed: int, prime: int | None = DEFAULT_PRIME, exact: bool = False) -> SeedReport:
    c = sample_cubic(r, seed, prime, exact)
    F = c.field
    J = jet_matrix(c)
    cp = charpoly(J.matrix, F)
    exp = expected_charpoly(r, F)
    k = J.normal_size
    normal_block = [row[:k] for row in J.matrix[:k]]
    ndet = det(normal_block, F)
    tr = F(sum(J.matrix[i][i] for i in range(J.size)))
    ok = cp == exp and ndet == F((-2) ** (r + 1)) and k == r + 1
    return SeedReport(seed, c.attempt, J.size, cp, exp, ndet, tr, ok)


def verify_eigenpoly(r: int, seeds, prime: int | None = DEFAULT_PRIME, exact: bool = False) -> list[SeedReport]:
    if r not in (1, 2, 3):
        raise ValueError("r must be 1, 2 or 3")
    return [check_seed(r, s, prime, exact) for s in sorted(seeds)]
