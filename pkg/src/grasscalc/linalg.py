"""Dense exact linear algebra over F_p or Q.

Matrices are lists of rows.  A field object supplies normalization and
inversion; everything else is ordinary Python arithmetic on ints/Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrix(ArithmeticError):
    pass


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"


class Rationals:
    p = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def __repr__(self) -> str:
        return "QQ"


QQ = Rationals()


def rref(M: Sequence[Sequence], F) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[F(x) for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F(x * inv) for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [F(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M, F) -> int:
    return len(rref(M, F)[1]) if M else 0


def nullspace(M: Sequence[Sequence], F, ncols: int | None = None) -> list[list]:
    """Basis of {v : M v = 0}, one vector per free column (free entry 1)."""
    if not M:
        n = ncols or 0
        return [[F(1) if i == j else F(0) for i in range(n)] for j in range(n)]
    R, pivots = rref(M, F)
    n = len(M[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [F(0)] * n
        v[fc] = F(1)
        for row, pc in zip(R, pivots):
            v[pc] = F(-row[fc])
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence, F) -> list:
    """Unique solution of A x = b for square nonsingular A."""
    n = len(A)
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    R, pivots = rref(aug, F)
    if pivots != list(range(n)):
        raise SingularMatrix("coefficient matrix is singular")
    return [R[i][n] for i in range(n)]


def matmul(A, B, F):
    return [[F(sum(a * b for a, b in zip(row, col))) for col in zip(*B)] for row in A]


def det(M, F):
    A = [[F(x) for x in row] for row in M]
    n = len(A)
    d = F(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = F(-d)
        d = F(d * A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = F(A[i][c] * inv)
                A[i] = [F(a - f * b) for a, b in zip(A[i], A[c])]
    return d


def charpoly(M, F) -> list:
    """Coefficients (low to high) of det(t I - M), via Hessenberg reduction."""
    n = len(M)
    H = [[F(x) for x in row] for row in M]
    # reduce to upper Hessenberg form by similarity transforms
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if H[i][c] != 0), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for row in H:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = F.inv(H[c + 1][c])
        for i in range(c + 2, n):
            f = F(H[i][c] * inv)
            if f == 0:
                continue
            H[i] = [F(a - f * b) for a, b in zip(H[i], H[c + 1])]
            for row in H:
                row[c + 1] = F(row[c + 1] + f * row[i])
    # recurrence on leading principal minors
    polys: list[list] = [[F(1)]]
    for k in range(1, n + 1):
        a = H[k - 1][k - 1]
        prev = polys[k - 1]
        p = [F(0)] + prev  # t * p_{k-1}
        for i, x in enumerate(prev):
            p[i] = F(p[i] - a * x)
        prod = F(1)
        for i in range(1, k):
            prod = F(prod * H[k - i][k - i - 1])
            h = H[k - i - 1][k - 1]
            coeff = F(h * prod)
            if coeff == 0:
                continue
            for j, x in enumerate(polys[k - i - 1]):
                p[j] = F(p[j] - coeff * x)
        polys.append(p)
    return polys[n]


def poly_mul(a: Sequence, b: Sequence, F) -> list:
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = F(out[i + j] + x * y)
    return out


def poly_from_roots(roots: Sequence[tuple[int, int]], F) -> list:
    """prod (t - root)^mult, coefficients low to high."""
    p = [F(1)]
    for root, mult in roots:
        for _ in range(mult):
            p = poly_mul(p, [F(-root), F(1)], F)
    return p
