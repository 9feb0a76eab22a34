"""Exact arithmetic in F2[U, V, U^-1, V^-1].

A Laurent polynomial is a finite set of monomials U^i V^j with i, j in Z;
the F2 coefficient of a monomial is encoded by its presence in the set.
Terms are kept sorted lexicographically on (i, j), so structural equality
is semantic equality and serialized forms are canonical.
"""

from __future__ import annotations

from typing import Iterable, Tuple

Monomial = Tuple[int, int]


class LaurentPoly:
    """An element of F2[U, V, U^-1, V^-1] in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        # mod-2 reduction: a monomial appearing an even number of times cancels
        seen: set[Monomial] = set()
        for t in terms:
            i, j = t
            m = (int(i), int(j))
            if m in seen:
                seen.remove(m)
            else:
                seen.add(m)
        self.terms: Tuple[Monomial, ...] = tuple(sorted(seen))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        # characteristic 2: addition is symmetric difference of term sets
        return LaurentPoly(set(self.terms) ^ set(other.terms))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        prods = [(i + a, j + b) for (i, j) in self.terms for (a, b) in other.terms]
        return LaurentPoly(prods)

    def derivative(self, var: str) -> "LaurentPoly":
        """Formal derivative d/dU or d/dV, reduced mod 2.

        U^i V^j maps to i * U^(i-1) V^j for var "U"; terms with even
        exponent vanish since i is reduced mod 2.
        """
        if var == "U":
            return LaurentPoly((i - 1, j) for (i, j) in self.terms if i % 2 == 1)
        if var == "V":
            return LaurentPoly((i, j - 1) for (i, j) in self.terms if j % 2 == 1)
        raise ValueError(f"unknown variable {var!r}, expected 'U' or 'V'")

    def swap_uv(self) -> "LaurentPoly":
        """The ring automorphism exchanging U and V."""
        return LaurentPoly((j, i) for (i, j) in self.terms)

    def is_filtered(self) -> bool:
        """True when all exponents are nonnegative (element of F2[U, V])."""
        return all(i >= 0 and j >= 0 for (i, j) in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sole_term(self) -> Monomial:
        if len(self.terms) != 1:
            raise ValueError(f"expected a single monomial, got {self!r}")
        return self.terms[0]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"

        def fmt(i: int, j: int) -> str:
            parts = []
            if i:
                parts.append("U" if i == 1 else f"U^{i}")
            if j:
                parts.append("V" if j == 1 else f"V^{j}")
            return "".join(parts) or "1"

        return " + ".join(fmt(i, j) for (i, j) in self.terms)


ZERO = LaurentPoly()
ONE = LaurentPoly([(0, 0)])
U = LaurentPoly([(1, 0)])
V = LaurentPoly([(0, 1)])
UHAT = LaurentPoly([(1, 1)])


def monomial(i: int, j: int) -> LaurentPoly:
    return LaurentPoly([(i, j)])
