"""Independent reference computations shared by several test modules."""

import itertools
from collections import Counter

from grasscalc.symfunc import schur_expand_terms, schur_monomials


def kostka_monomials(lam, n):
    """Monomial expansion of s_lam by enumerating semistandard tableaux directly."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    out = Counter()
    for filling in itertools.product(range(n), repeat=len(cells)):
        t = dict(zip(cells, filling))
        if any(j and t[(i, j - 1)] > t[(i, j)] for i, j in cells):
            continue
        if any(i and t[(i - 1, j)] >= t[(i, j)] for i, j in cells):
            continue
        e = [0] * n
        for v in filling:
            e[v] += 1
        out[tuple(e)] += 1
    return dict(out)


def brute_product(lam, mu, n):
    """Multiply monomial expansions and peel Schur functions off the top."""
    a, b = schur_monomials(lam, n), schur_monomials(mu, n)
    prod_terms = Counter()
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            prod_terms[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
    return schur_expand_terms(prod_terms, n)
