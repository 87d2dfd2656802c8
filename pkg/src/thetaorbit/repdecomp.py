"""Graded decompositions of harmonics, null cones and lifted orbit closures.

Labels are recorded by their actual highest weights: the dual of the GL_r
module ``w`` is stored as ``-reversed(w)``, while O(p) and Sp(2p) modules
are self-dual and keep their partition.  The correspondence set R(K') is
kept extensionally: partitions with at most n parts for OSp and SpOstar,
and pairs (gamma, delta) of partitions with at most m and n parts for UU.

A K'-label tau in R(K') has the weight (of the K'-module occurring in the
minus-side harmonics)

    OSp, SpOstar   GL_n: tau
    UU             GL_m x GL_n: (gamma, -reversed(delta))

and its K-partners are

    sigma_minus(tau)       O(q)[tau]  | GL_q[gamma . delta]   | Sp(2q)[tau]
    sigma_plus(tau^*)      O(p)[tau]  | GL_p[(gamma . delta)^*] | Sp(2p)[tau]
    rho_plus(tau^*)        GL_p[tau^*] | GL_p[gamma^*] x GL_p[delta] | GL_2p[tau^*]

where ``gamma . delta`` is the mixed weight (gamma, 0, ..., 0, -reversed(delta)).
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .combinatorics import DualPair, pad, partitions_of
from .errors import GradingParityViolation, UsageError
from .lr import tensor_multiplicity_gl
from .rootdata import dim_gl, dim_orthogonal, dim_symplectic


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("THETA_ORBIT_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# labels

@dataclass(frozen=True, order=True)
class Factor:
    """One simple factor of a label: ``kind`` in O, Sp, GL."""

    kind: str
    n: int
    weight: tuple

    def dim(self) -> int:
        if self.kind == "O":
            return dim_orthogonal(self.n, self.weight)
        if self.kind == "Sp":
            return dim_symplectic(self.n // 2, self.weight)
        return dim_gl(self.n, self.weight)

    def __str__(self):
        return f"{self.kind}({self.n})[{','.join(map(str, self.weight))}]"

    def to_json(self):
        return {"group": f"{self.kind}({self.n})", "weight": list(self.weight)}


@dataclass(frozen=True, order=True)
class RepLabel:
    role: str  # Kplus, Kminus, Kprime, Lplus
    factors: tuple

    def dim(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.dim()
        return out

    def __str__(self):
        return " x ".join(str(f) for f in self.factors) or "trivial"

    def to_json(self):
        return [f.to_json() for f in self.factors]


def _dual(w) -> tuple:
    return tuple(-x for x in reversed(w))


def mixed_weight(alpha, beta, r: int) -> tuple:
    """(alpha_1..alpha_m, 0, ..., 0, -beta_n..-beta_1) of length r."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) + len(beta) > r:
        raise UsageError(f"{alpha} and {beta} do not fit in GL_{r}")
    return alpha + (0,) * (r - len(alpha) - len(beta)) + _dual(beta)


def r_labels(pair: DualPair, k: int):
    """Elements of R(K') of size k, in a fixed order."""
    if pair.kind == "UU":
        for a in range(k, -1, -1):
            for gamma in partitions_of(a, pair.m):
                for delta in partitions_of(k - a, pair.n):
                    yield (gamma, delta)
    else:
        yield from partitions_of(k, pair.n)


def tau_size(pair: DualPair, tau) -> int:
    if pair.kind == "UU":
        return sum(tau[0]) + sum(tau[1])
    return sum(tau)


def kprime_label(pair: DualPair, tau, dual: bool = False) -> RepLabel:
    if pair.kind == "UU":
        gamma, delta = pad(tau[0], pair.m), pad(tau[1], pair.n)
        wm, wn = gamma, _dual(delta)
        if dual:
            wm, wn = _dual(wm), _dual(wn)
        return RepLabel("Kprime", (Factor("GL", pair.m, wm), Factor("GL", pair.n, wn)))
    w = pad(tau, pair.n)
    return RepLabel("Kprime", (Factor("GL", pair.n, _dual(w) if dual else w),))


def sigma_minus(pair: DualPair, tau) -> RepLabel:
    if pair.kind == "OSp":
        f = Factor("O", pair.q, tuple(tau))
    elif pair.kind == "UU":
        f = Factor("GL", pair.q, mixed_weight(tau[0], tau[1], pair.q))
    else:
        f = Factor("Sp", 2 * pair.q, tuple(tau))
    return RepLabel("Kminus", (f,))


def sigma_plus_dual(pair: DualPair, tau) -> RepLabel:
    """sigma_plus(tau^*)."""
    if pair.kind == "OSp":
        f = Factor("O", pair.p, tuple(tau))
    elif pair.kind == "UU":
        f = Factor("GL", pair.p, _dual(mixed_weight(tau[0], tau[1], pair.p)))
    else:
        f = Factor("Sp", 2 * pair.p, tuple(tau))
    return RepLabel("Kplus", (f,))


def rho_plus_dual(pair: DualPair, tau) -> RepLabel:
    """rho_plus(tau^*), the L^+ partner in C[W^+]."""
    if pair.kind == "OSp":
        fs = (Factor("GL", pair.p, _dual(pad(tau, pair.p))),)
    elif pair.kind == "UU":
        fs = (Factor("GL", pair.p, _dual(pad(tau[0], pair.p))),
              Factor("GL", pair.p, pad(tau[1], pair.p)))
    else:
        fs = (Factor("GL", 2 * pair.p, _dual(pad(tau, 2 * pair.p))),)
    return RepLabel("Lplus", fs)


# ---------------------------------------------------------------------------
# containers

@dataclass(frozen=True)
class HilbertSeries:
    coefficients: tuple

    def __getitem__(self, k):
        return self.coefficients[k]

    def __len__(self):
        return len(self.coefficients)

    def to_csv(self) -> str:
        return "k,H(k)\n" + "".join(f"{k},{h}\n" for k, h in enumerate(self.coefficients))


_ROLE_KEYS = {"Kplus": "plus", "Lplus": "plus", "Kminus": "minus", "Kprime": "kprime"}


@dataclass
class GradedDecomposition:
    """degree -> sorted list of (labels, multiplicity)."""

    truncation_degree: int
    entries: dict = field(default_factory=dict)

    @classmethod
    def from_counts(cls, K: int, counts: dict) -> "GradedDecomposition":
        """Build from {(degree, labels): multiplicity}, dropping zeros."""
        by_deg = defaultdict(list)
        for (deg, labels), mult in counts.items():
            if mult < 0:
                raise AssertionError("negative multiplicity")
            if mult and deg <= K:
                by_deg[deg].append((labels, mult))
        entries = {d: sorted(by_deg[d]) for d in sorted(by_deg)}
        return cls(K, entries)

    def items(self):
        for deg in sorted(self.entries):
            for labels, mult in self.entries[deg]:
                yield deg, labels, mult

    def hilbert_series(self) -> HilbertSeries:
        coeffs = [0] * (self.truncation_degree + 1)
        for deg, labels, mult in self.items():
            d = mult
            for lab in labels:
                d *= lab.dim()
            coeffs[deg] += d
        return HilbertSeries(tuple(coeffs))

    def max_multiplicity(self) -> int:
        return max((mult for _, _, mult in self.items()), default=0)

    def labels_distinct(self) -> bool:
        seen = [labels for _, labels, _ in self.items()]
        return len(seen) == len(set(seen))

    def __eq__(self, other):
        if not isinstance(other, GradedDecomposition):
            return NotImplemented
        return self.truncation_degree == other.truncation_degree and self.entries == other.entries

    def to_json(self) -> list:
        out = []
        for deg in sorted(self.entries):
            rows = []
            for labels, mult in self.entries[deg]:
                row = {}
                for lab in labels:
                    row[_ROLE_KEYS[lab.role]] = lab.to_json()
                row["mult"] = mult
                rows.append(row)
            out.append({"deg": deg, "labels": rows})
        return out


# ---------------------------------------------------------------------------
# harmonics and null cones

def harmonics_series(pair: DualPair, side: str, K: int) -> GradedDecomposition:
    """K x K' decomposition of the harmonics on W^side through degree K."""
    if side not in ("plus", "minus"):
        raise UsageError("side must be 'plus' or 'minus'")
    counts = {}
    for k in range(K + 1):
        for tau in r_labels(pair, k):
            if side == "plus":
                labels = (sigma_plus_dual(pair, tau), kprime_label(pair, tau, dual=True))
            else:
                labels = (sigma_minus(pair, tau), kprime_label(pair, tau))
            counts[(k, labels)] = 1
    return GradedDecomposition.from_counts(K, counts)


def nullcone_invariants(pair: DualPair, side: str) -> tuple:
    """(number of quadratic equations c, dim W^side)."""
    n = pair.n
    outer = pair.p if side == "plus" else pair.q
    if pair.kind == "OSp":
        return n * (n + 1) // 2, outer * n
    if pair.kind == "UU":
        return pair.m * n, outer * (pair.m + n)
    return n * (n - 1) // 2, 2 * outer * n


def complete_intersection_series(c: int, N: int, K: int) -> HilbertSeries:
    """Coefficients of (1-t^2)^c / (1-t)^N through t^K."""
    out = []
    for k in range(K + 1):
        total = 0
        for j in range(min(c, k // 2) + 1):
            total += (-1) ** j * comb(c, j) * comb(k - 2 * j + N - 1, N - 1)
        out.append(total)
    return HilbertSeries(tuple(out))


def nullcone_hilbert_check(pair: DualPair, side: str, K: int) -> bool:
    c, N = nullcone_invariants(pair, side)
    return harmonics_series(pair, side, K).hilbert_series() == complete_intersection_series(c, N, K)


# ---------------------------------------------------------------------------
# lifted orbit closures

def decompose_trivial_lift(pair: DualPair, K: int) -> GradedDecomposition:
    counts = {}
    for k in range(K + 1):
        for tau in r_labels(pair, k):
            counts[(k, (sigma_plus_dual(pair, tau), sigma_minus(pair, tau)))] = 1
    return GradedDecomposition.from_counts(K, counts)


def decompose_regular_hol_lift(pair: DualPair, K: int) -> GradedDecomposition:
    if pair.kind == "UU" and pair.m < pair.n:
        raise UsageError("the regular holomorphic lift is tabulated for m >= n")
    counts = {}
    for k in range(K + 1):
        for tau in r_labels(pair, k):
            counts[(k, (rho_plus_dual(pair, tau), sigma_minus(pair, tau)))] = 1
    return GradedDecomposition.from_counts(K, counts)


def trivial_input(pair: DualPair, K: int = 0) -> GradedDecomposition:
    """C[closure of the zero orbit] = C in degree 0."""
    if pair.kind == "UU":
        lab = RepLabel("Kprime", (Factor("GL", pair.m, (0,) * pair.m), Factor("GL", pair.n, (0,) * pair.n)))
    else:
        lab = RepLabel("Kprime", (Factor("GL", pair.n, (0,) * pair.n),))
    return GradedDecomposition.from_counts(K, {(0, (lab,)): 1})


def flat_space_input(pair: DualPair, K: int) -> GradedDecomposition:
    """K'-decomposition of the polynomial ring on the holomorphic block s'_+.

    Symmetric matrices (OSp) carry the even partitions, alternating
    matrices (SpOstar) the partitions whose parts come in equal pairs, and
    M_{m,n} (UU) the pairs (mu^*, mu).  All weights are dual, as they sit
    inside C[W^+].
    """
    n = pair.n
    counts = {}
    for k in range(K + 1):
        if pair.kind == "OSp":
            for mu in partitions_of(k, n):
                w = pad(tuple(2 * x for x in mu), n)
                counts[(k, (RepLabel("Kprime", (Factor("GL", n, _dual(w)),)),))] = 1
        elif pair.kind == "SpOstar":
            for mu in partitions_of(k, n // 2):
                w = pad(tuple(x for x in mu for _ in (0, 1)), n)
                counts[(k, (RepLabel("Kprime", (Factor("GL", n, _dual(w)),)),))] = 1
        else:
            for mu in partitions_of(k, min(pair.m, n)):
                lab = RepLabel("Kprime", (Factor("GL", pair.m, _dual(pad(mu, pair.m))),
                                          Factor("GL", n, pad(mu, n))))
                counts[(k, (lab,))] = 1
    out = GradedDecomposition.from_counts(K, counts)
    if pair.kind == "OSp":
        dim = n * (n + 1) // 2
    elif pair.kind == "SpOstar":
        dim = n * (n - 1) // 2
    else:
        dim = pair.m * n
    expected = complete_intersection_series(0, dim, K) if dim else HilbertSeries((1,) + (0,) * K)
    if out.hilbert_series() != expected:
        raise AssertionError(f"flat-space decomposition of {pair} fails its Hilbert series check")
    return out


def _factor_multiplicity(f1: Factor, f2: Factor, f: Factor) -> int:
    return tensor_multiplicity_gl(f.n, f1.weight, f2.weight, f.weight)


def _kprime_multiplicity(l1: RepLabel, l2: RepLabel, lab: RepLabel) -> int:
    """Multiplicity of l1 in l2 (x) lab, factor by factor."""
    out = 1
    for f1, f2, f in zip(l1.factors, l2.factors, lab.factors):
        out *= _factor_multiplicity(f1, f2, f)
        if not out:
            return 0
    return out


def _r_of_sizes(pair: DualPair, sizes):
    """R(K') elements with prescribed size (or size pair for UU)."""
    if pair.kind == "UU":
        a, b = sizes
        if a < 0 or b < 0:
            return
        for gamma in partitions_of(a, pair.m):
            for delta in partitions_of(b, pair.n):
                yield (gamma, delta)
    else:
        if sizes < 0:
            return
        yield from partitions_of(sizes, pair.n)


def decompose_general_lift(pair: DualPair, data: GradedDecomposition, K: int,
                           threads: int | None = None) -> GradedDecomposition:
    """Decompose C[closure of the lift] from the K'-decomposition of C[closure O'].

    The pair (sigma_plus(tau1^*), sigma_minus(tau2)) receives
    sum over (tau, k) of mult(tau1 in tau2 (x) tau) * data(tau, k)
    at degree (|tau1| + |tau2|)/2 + k.
    """
    threads = threads or default_threads()
    inputs = [(deg, labels[0], mult) for deg, labels, mult in data.items() if deg <= K]

    def tasks_for(s2):
        # every tau2 of total size s2, paired with every admissible tau1
        out = []
        if pair.kind == "UU":
            size_pairs = [(a, s2 - a) for a in range(s2 + 1)]
        else:
            size_pairs = [s2]
        for sz in size_pairs:
            for tau2 in _r_of_sizes(pair, sz):
                l2 = kprime_label(pair, tau2)
                for deg, lab, mult in inputs:
                    shift = [sum(f.weight) for f in lab.factors]
                    if pair.kind == "UU":
                        sz1 = (sz[0] + shift[0], sz[1] - shift[1])
                        s1 = sz1[0] + sz1[1]
                    else:
                        sz1 = sz + shift[0]
                        s1 = sz1
                    if s1 < 0 or s1 + s2 > 2 * (K - deg):
                        continue
                    for tau1 in _r_of_sizes(pair, sz1):
                        c = _kprime_multiplicity(kprime_label(pair, tau1), l2, lab)
                        if not c:
                            continue
                        if (s1 + s2) % 2:
                            raise GradingParityViolation(
                                f"tau1={tau1}, tau2={tau2}, tau={lab} lands at half-integer degree")
                        out.append(((s1 + s2) // 2 + deg,
                                    (sigma_plus_dual(pair, tau1), sigma_minus(pair, tau2)),
                                    c * mult))
        return out

    # central characters bound |tau2| by the largest shift in the input
    max_shift = 0
    for _, lab, _ in inputs:
        max_shift = max(max_shift, sum(abs(sum(f.weight)) for f in lab.factors))
    sizes = range(0, 2 * K + max_shift + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(tasks_for, sizes))
    else:
        chunks = [tasks_for(s) for s in sizes]
    counts = defaultdict(int)
    for chunk in chunks:  # merged in size order, so the result is deterministic
        for deg, labels, c in chunk:
            counts[(deg, labels)] += c
    return GradedDecomposition.from_counts(K, counts)
