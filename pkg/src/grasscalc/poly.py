"""Exact multivariate polynomials over named, weighted generators.

A :class:`PolyRing` fixes the generator names, their weights (cohomological
degrees) and optional truncation rules.  A truncation rule is a pair
``(generator indices, bound)``: any monomial whose weighted degree restricted
to those generators exceeds ``bound`` is discarded.  Multiplication always
re-applies the rules, so truncated rings behave as quotient rings.

Coefficients are Python ints or :class:`fractions.Fraction`; nothing is ever
rounded.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PolyRing:
    """Generators with weights, plus truncation rules."""

    __slots__ = ("names", "weights", "truncations", "_index")

    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[int] | None = None,
        truncations: Iterable[tuple[Iterable[str], int]] = (),
    ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per generator")
        self._index = {n: i for i, n in enumerate(self.names)}
        rules = []
        for group, bound in truncations:
            idx = tuple(sorted(self._index[g] for g in group))
            rules.append((idx, int(bound)))
        self.truncations = tuple(rules)

    @classmethod
    def chern(
        cls,
        families: Mapping[str, int],
        extra: Mapping[str, int] | None = None,
        cutoffs: Mapping[str, int] | None = None,
    ) -> "PolyRing":
        """Ring of Chern-class families: ``{"c": 3}`` gives c1, c2, c3 of degrees 1, 2, 3.

        ``extra`` adds single generators with given weights (e.g. ``{"h": 1}``);
        ``cutoffs`` bounds the weighted degree of a family (or of an extra
        generator, by name).  The key ``"*"`` bounds the total degree.
        """
        names, weights = [], []
        fam_members: dict[str, list[str]] = {}
        for fam, count in families.items():
            for i in range(1, count + 1):
                names.append(f"{fam}{i}")
                weights.append(i)
                fam_members.setdefault(fam, []).append(f"{fam}{i}")
        for name, w in (extra or {}).items():
            names.append(name)
            weights.append(w)
            fam_members[name] = [name]
        rules = []
        for key, bound in (cutoffs or {}).items():
            group = names if key == "*" else fam_members[key]
            rules.append((group, bound))
        return cls(names, weights, rules)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.truncations == other.truncations
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights, self.truncations))

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator {name!r} in {self.names}") from None

    def weighted_degree(self, exp: Exponent, indices: Sequence[int] | None = None) -> int:
        if indices is None:
            return sum(e * w for e, w in zip(exp, self.weights))
        return sum(exp[i] * self.weights[i] for i in indices)

    def keeps(self, exp: Exponent) -> bool:
        for idx, bound in self.truncations:
            if sum(exp[i] * self.weights[i] for i in idx) > bound:
                return False
        return True

    def with_truncations(self, truncations: Iterable[tuple[Iterable[str], int]]) -> "PolyRing":
        return PolyRing(self.names, self.weights, truncations)

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None) -> "PolyRing":
        """A ring with extra generators appended; truncation rules are kept."""
        weights = weights if weights is not None else (1,) * len(names)
        rules = [([self.names[i] for i in idx], b) for idx, b in self.truncations]
        return PolyRing(self.names + tuple(names), self.weights + tuple(weights), rules)

    # constructors -------------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * len(self.names): c})

    def gen(self, name: str) -> "Poly":
        exp = [0] * len(self.names)
        exp[self.index(name)] = 1
        return Poly(self, {tuple(exp): 1})

    def gens(self, *names: str) -> tuple["Poly", ...]:
        return tuple(self.gen(n) for n in names)

    def monomial(self, powers: Mapping[str, int], coeff=1) -> "Poly":
        exp = [0] * len(self.names)
        for n, e in powers.items():
            exp[self.index(n)] += e
        return Poly(self, {tuple(exp): coeff})


class Poly:
    """Immutable polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Rational]):
        self.ring = ring
        clean = {}
        for exp, c in terms.items():
            if c != 0 and ring.keeps(exp):
                clean[exp] = _norm(c)
        self.terms = clean

    @classmethod
    def _raw(cls, ring: PolyRing, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            return Poly._raw(self.ring, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        rules = ring.truncations
        weights = ring.weights
        out: dict = {}
        # per-rule partial degrees allow cheap pruning
        def partial(exp):
            return tuple(sum(exp[i] * weights[i] for i in idx) for idx, _ in rules)

        a_items = [(e, c, partial(e)) for e, c in self.terms.items()]
        b_items = [(e, c, partial(e)) for e, c in other.terms.items()]
        bounds = tuple(b for _, b in rules)
        for ea, ca, pa in a_items:
            for eb, cb, pb in b_items:
                if rules and any(x + y > b for x, y, b in zip(pa, pb, bounds)):
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly._raw(ring, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power; use inverse_series")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def constant(self):
        return self.terms.get((0,) * len(self.ring.names), 0)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.weighted_degree(e) for e in self.terms)

    def coeff(self, powers: Mapping[str, int] | Exponent):
        if not isinstance(powers, tuple):
            exp = [0] * len(self.ring.names)
            for n, k in powers.items():
                exp[self.ring.index(n)] = k
            powers = tuple(exp)
        return self.terms.get(powers, 0)

    def homogeneous(self, degree: int, names: Iterable[str] | None = None) -> "Poly":
        """Part of weighted degree ``degree`` (in ``names`` only, if given)."""
        idx = None if names is None else [self.ring.index(n) for n in names]
        return Poly._raw(
            self.ring,
            {e: c for e, c in self.terms.items() if self.ring.weighted_degree(e, idx) == degree},
        )

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.ring.names[i])
        return used

    def collect(self, names: Sequence[str]) -> dict[Exponent, "Poly"]:
        """Split into ``{exponent in names: coefficient polynomial}``.

        The coefficient polynomials live in the same ring and do not involve
        ``names``.
        """
        idx = [self.ring.index(n) for n in names]
        out: dict[Exponent, dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly._raw(self.ring, v) for k, v in out.items()}

    def items(self) -> Iterator[tuple[dict[str, int], Rational]]:
        for e, c in self.terms.items():
            yield {self.ring.names[i]: k for i, k in enumerate(e) if k}, c

    # transformations -----------------------------------------------------
    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-express in ``ring`` by generator name; unknown used names raise."""
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(ring._index.get(n))
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * len(ring.names)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise KeyError(f"generator {self.ring.names[i]!r} missing from {ring}")
                    new[pos[i]] = k
            t = tuple(new)
            out[t] = out.get(t, 0) + c
        return Poly(ring, out)

    def truncate(self, ring: PolyRing | None = None) -> "Poly":
        return Poly(ring or self.ring, self.terms)

    def subs(self, values: Mapping[str, "Poly | int | Fraction"], ring: PolyRing | None = None) -> "Poly":
        """Substitute generators by polynomials (in ``ring``, default own ring)."""
        target = ring or self.ring
        idx = {self.ring.index(n): v for n, v in values.items()}
        keep = {}
        for i, n in enumerate(self.ring.names):
            if i not in idx:
                keep[i] = target.gen(n) if n in target._index else None
        power_cache: dict[tuple[int, int], Poly] = {}

        def power(i, k):
            key = (i, k)
            if key not in power_cache:
                base = idx[i] if i in idx else keep[i]
                if base is None:
                    raise KeyError(f"generator {self.ring.names[i]!r} has no image")
                if not isinstance(base, Poly):
                    base = target.const(base)
                power_cache[key] = base ** k
            return power_cache[key]

        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def inverse_series(self) -> "Poly":
        """Multiplicative inverse in the truncated ring; constant term must be nonzero.

        The ring must carry a truncation that bounds every generator, otherwise
        the series does not terminate.
        """
        c0 = self.constant()
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero; series not invertible")
        covered = set()
        for idx, _ in self.ring.truncations:
            covered.update(idx)
        if any(self.ring.weights[i] > 0 and i not in covered for i in range(len(self.ring.names))):
            raise ValueError("inverse_series needs a ring whose truncations bound every generator")
        one = self.ring.one()
        nil = one - self * (Fraction(1) / Fraction(c0))
        # 1/p = (1/c0) * sum nil^k, nil nilpotent under truncation
        total = one
        power = one
        while True:
            power = power * nil
            if power.is_zero():
                break
            total = total + power
        return total * (Fraction(1) / Fraction(c0))

    # display ---------------------------------------------------------------
    def sort_key(self, exp: Exponent):
        return (-self.ring.weighted_degree(exp), tuple(-k for k in exp))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self.sort_key):
            c = self.terms[e]
            mono = " ".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k
            )
            parts.append((c, mono))
        out = ""
        for i, (c, mono) in enumerate(parts):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag} {mono}".strip())
            if i == 0:
                out = ("-" if sign == "-" else "") + body
            else:
                out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"
