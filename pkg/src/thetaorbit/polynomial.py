"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import CapExceeded

DEFAULT_MONOMIAL_CAP = 10**6


class ExactPolynomial:
    """A polynomial in named variables, stored as {exponent tuple: Fraction}.

    Zero coefficients are never stored.  Arithmetic requires both operands
    to use the same variable tuple.
    """

    __slots__ = ("variables", "terms", "cap")

    def __init__(self, variables, terms=None, cap=DEFAULT_MONOMIAL_CAP):
        self.variables = tuple(variables)
        self.cap = cap
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._check_cap()

    def _check_cap(self):
        if len(self.terms) > self.cap:
            raise CapExceeded(f"polynomial has {len(self.terms)} monomials, cap is {self.cap}")

    # constructors -----------------------------------------------------

    @classmethod
    def constant(cls, variables, c=1):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, variables, i):
        e = [0] * len(tuple(variables))
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def linear(cls, variables, coeffs):
        """sum coeffs[i] * x_i."""
        n = len(tuple(variables))
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(variables, terms)

    # arithmetic -------------------------------------------------------

    def _same(self, other):
        if self.variables != other.variables:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if not isinstance(other, ExactPolynomial):
            other = ExactPolynomial.constant(self.variables, other)
        self._same(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return ExactPolynomial(self.variables, terms, self.cap)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial(self.variables, {e: -c for e, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ExactPolynomial):
            other = Fraction(other)
            return ExactPolynomial(self.variables, {e: c * other for e, c in self.terms.items()}, self.cap)
        self._same(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
            if len(terms) > self.cap:
                raise CapExceeded(f"product exceeds the monomial cap {self.cap}")
        return ExactPolynomial(self.variables, terms, self.cap)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPolynomial(self.variables, {(0,) * len(self.variables): 1}, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPolynomial):
            return self.variables == other.variables and self.terms == other.terms
        return self == ExactPolynomial.constant(self.variables, other)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "ExactPolynomial":
        return ExactPolynomial(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d}, self.cap)

    def permuted(self, perm) -> "ExactPolynomial":
        """Substitute x_i -> x_perm[i]."""
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(e)
            for i, a in enumerate(e):
                new[perm[i]] = a
            terms[tuple(new)] = c
        return ExactPolynomial(self.variables, terms, self.cap)

    def is_symmetric_in(self, block) -> bool:
        """Invariance under permutations of the variable indices in ``block``."""
        block = list(block)
        if len(block) < 2:
            return True
        # adjacent transpositions generate the symmetric group
        for a, b in zip(block, block[1:]):
            perm = list(range(len(self.variables)))
            perm[a], perm[b] = b, a
            if self.permuted(perm) != self:
                return False
        return True

    def evaluate(self, point):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                v *= x ** a
            total += v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{a}" if a > 1 else v for v, a in zip(self.variables, e) if a)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def difference_product(variables, indices, power: int = 1) -> ExactPolynomial:
    """prod over i<j in ``indices`` of (x_i^power - x_j^power)."""
    out = ExactPolynomial.constant(variables, 1)
    n = len(tuple(variables))
    for a, i in enumerate(indices):
        for j in indices[a + 1:]:
            ei = [0] * n
            ej = [0] * n
            ei[i] = power
            ej[j] = power
            out = out * ExactPolynomial(variables, {tuple(ei): 1, tuple(ej): -1})
    return out


def monomial(variables, exps, c=1) -> ExactPolynomial:
    return ExactPolynomial(variables, {tuple(exps): c})


def symmetrize_check(poly: ExactPolynomial, block) -> bool:
    """Brute-force symmetry check over all permutations (test helper)."""
    block = list(block)
    base = list(range(len(poly.variables)))
    for perm in permutations(block):
        full = list(base)
        for src, dst in zip(block, perm):
            full[src] = dst
        if poly.permuted(full) != poly:
            return False
    return True
