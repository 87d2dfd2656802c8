"""Classical root systems in the standard epsilon realization.

Type A_{r-1} lives in an r-dimensional epsilon space; B_r, C_r and D_r in an
r-dimensional one.  Roots are integer tuples, weights are tuples of
``Fraction`` (spin weights of type B/D may be half-integral).  Nothing in
this module uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import IndexOutOfRange, NonDominantWeight, UsageError


@dataclass(frozen=True)
class RootSystem:
    type: str
    rank: int

    def __post_init__(self):
        if self.type not in "ABCD" or len(self.type) != 1:
            raise UsageError(f"unsupported root system type {self.type!r}")
        if self.rank < (0 if self.type in "AD" else 1):
            raise UsageError(f"bad rank {self.rank} for type {self.type}")

    @property
    def dim(self) -> int:
        """Length of epsilon-coordinate vectors."""
        return self.rank + 1 if self.type == "A" else self.rank

    @cached_property
    def positive_roots(self) -> tuple:
        r = self.dim

        def e(*pairs):
            v = [0] * r
            for i, c in pairs:
                v[i] += c
            return tuple(v)

        roots = []
        for i in range(r):
            for j in range(i + 1, r):
                roots.append(e((i, 1), (j, -1)))
                if self.type != "A":
                    roots.append(e((i, 1), (j, 1)))
            if self.type == "B":
                roots.append(e((i, 1)))
            elif self.type == "C":
                roots.append(e((i, 2)))
        return tuple(roots)

    def __str__(self):
        return f"{self.type}_{self.rank}"


def inner(a, b):
    if len(a) != len(b):
        raise UsageError("length mismatch in inner product")
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


@lru_cache(maxsize=None)
def rho(rs: RootSystem) -> tuple:
    """Half the sum of the positive roots."""
    total = [Fraction(0)] * rs.dim
    for root in rs.positive_roots:
        for i, c in enumerate(root):
            total[i] += c
    return tuple(x / 2 for x in total)


def phi_plus_subset(rs: RootSystem, n: int, mode: str = "first_n", m: int | None = None) -> tuple:
    """Positive roots seen by the first ``n`` coordinates.

    ``mode="first_n"`` keeps the roots not orthogonal to eps_1..eps_n.
    ``mode="block"`` (type A only) keeps eps_i - eps_j with i <= m or
    j > r - n, i.e. the roots touching the first m or the last n coordinates.
    """
    r = rs.dim
    if mode == "first_n":
        if not 0 <= n <= r:
            raise IndexOutOfRange(f"n={n} outside 0..{r} for {rs}")
        return tuple(a for a in rs.positive_roots if any(a[:n]))
    if mode == "block":
        if rs.type != "A":
            raise UsageError("block mode is defined for type A only")
        if m is None or m < 0 or n < 0 or m + n > r:
            raise IndexOutOfRange(f"m={m}, n={n} do not fit in {rs}")
        out = []
        for a in rs.positive_roots:
            i = a.index(1)
            j = a.index(-1)
            if i < m or j >= r - n:
                out.append(a)
        return tuple(out)
    raise UsageError(f"unknown mode {mode!r}")


def is_dominant(rs: RootSystem, lam) -> bool:
    lam = [Fraction(x) for x in lam]
    if len(lam) != rs.dim:
        return False
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 2)):
        return False
    if rs.type == "D":
        return rs.dim < 2 or lam[-2] >= abs(lam[-1])
    if len(lam) >= 2 and lam[-2] < lam[-1]:
        return False
    if rs.type in "BC":
        return lam[-1] >= 0
    return True


def weyl_dim(rs: RootSystem, lam) -> int:
    """Dimension of the irreducible module of highest weight ``lam``."""
    if not is_dominant(rs, lam):
        raise NonDominantWeight(f"{tuple(lam)} is not dominant for {rs}")
    shifted = tuple(Fraction(x) + y for x, y in zip(lam, rho(rs)))
    value = Fraction(1)
    for a in rs.positive_roots:
        value *= inner(shifted, a) / inner(rho(rs), a)
    if value.denominator != 1 or value <= 0:
        raise AssertionError(f"Weyl dimension {value} is not a positive integer")
    return value.numerator


def rho_product_prefactor(rs: RootSystem, subset) -> Fraction:
    """Product of 1/<rho, alpha> over ``subset``."""
    roots = set(rs.positive_roots)
    out = Fraction(1)
    r = rho(rs)
    for a in subset:
        if tuple(a) not in roots:
            raise UsageError(f"{a} is not a positive root of {rs}")
        out /= inner(r, a)
    return out


# ---------------------------------------------------------------------------
# dimensions of the classical groups that appear as labels

def orthogonal_root_system(p: int) -> RootSystem:
    if p < 3:
        raise UsageError("O(p) labels are only used for p >= 3")
    return RootSystem("B" if p % 2 else "D", p // 2)


def dim_orthogonal(p: int, lam) -> int:
    """dim of the O(p) module indexed by the partition ``lam``.

    Uses the Weyl dimension of the identity component; this is exact as
    long as ``lam`` has fewer than p/2 parts, which the stable range
    guarantees for every label we build.
    """
    rs = orthogonal_root_system(p)
    lam = tuple(lam)
    if 2 * len(lam) >= p:
        raise UsageError(f"{lam} is too long for an irreducible SO({p}) restriction")
    return weyl_dim(rs, lam + (0,) * (rs.dim - len(lam)))


def dim_symplectic(p: int, lam) -> int:
    """dim of the Sp(2p) module indexed by ``lam``."""
    lam = tuple(lam)
    if len(lam) > p:
        raise UsageError(f"{lam} has more than {p} parts")
    return weyl_dim(RootSystem("C", p), lam + (0,) * (p - len(lam)))


def dim_gl(r: int, weight) -> int:
    """dim of the GL_r module with dominant integral ``weight`` (length r)."""
    if len(weight) != r:
        raise UsageError(f"GL_{r} weight needs {r} entries, got {tuple(weight)}")
    if r == 0:
        return 1
    return weyl_dim(RootSystem("A", r - 1), weight)
