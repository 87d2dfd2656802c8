"""Partitions, signed Young diagrams and the theta lift on diagrams.

A signed row is stored as ``(length, lead)`` with ``lead`` in ``"+-"``; the
remaining signs alternate and are never stored.  Diagrams keep their rows
in canonical order: longest first, and among rows of equal length the
``+``-leading ones first.  With that order, equality of diagrams is plain
tuple equality.

Five groups occur as members of the three stable-range dual pairs::

    Sp2nR   Sp(2n, R)   size 2n
    Opq     O(p, q)     size p+q, signature (p, q)
    Umn     U(m, n)     size m+n, signature (m, n)
    OstarN  O*(2n)      size n (quaternionic boxes)
    Sppq    Sp(p, q)    size p+q, signature (p, q)
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceeded, InvalidDiagram, LiftInfeasible, StableRangeError, UsageError

PLUS, MINUS = "+", "-"
_FLIP = {PLUS: MINUS, MINUS: PLUS}

DEFAULT_ENUMERATION_CAP = 100_000


# ---------------------------------------------------------------------------
# partitions

def partition(parts) -> tuple:
    """Normalize ``parts`` to a partition: a non-increasing tuple, zeros trimmed."""
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts):
        raise UsageError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise UsageError(f"parts must be non-increasing: {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def partitions_of(k: int, max_len: int, max_part: int | None = None) -> Iterator[tuple]:
    """Partitions of ``k`` with at most ``max_len`` parts, in reverse lexicographic order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(k, max_part), 0, -1):
        # the remaining max_len-1 parts can absorb at most first*(max_len-1)
        if first * max_len < k:
            break
        for rest in partitions_of(k - first, max_len - 1, first):
            yield (first,) + rest


def pad(parts, length: int) -> tuple:
    if len(parts) > length:
        raise UsageError(f"{parts} has more than {length} parts")
    return tuple(parts) + (0,) * (length - len(parts))


# ---------------------------------------------------------------------------
# groups

_GROUP_KINDS = ("Sp2nR", "Opq", "Umn", "OstarN", "Sppq")


@dataclass(frozen=True)
class GroupTag:
    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in _GROUP_KINDS:
            raise UsageError(f"unknown group kind {self.kind!r}")
        want = 1 if self.kind in ("Sp2nR", "OstarN") else 2
        if len(self.params) != want or any(int(x) < 0 for x in self.params):
            raise UsageError(f"{self.kind} needs {want} nonnegative parameter(s), got {self.params}")

    @property
    def size(self) -> int:
        if self.kind == "Sp2nR":
            return 2 * self.params[0]
        if self.kind == "OstarN":
            return self.params[0]
        return self.params[0] + self.params[1]

    @property
    def signature(self):
        """Required (plus, minus) box counts, or None when unconstrained."""
        if self.kind in ("Opq", "Umn", "Sppq"):
            return tuple(self.params)
        return None

    def __str__(self):
        a = self.params
        return {
            "Sp2nR": lambda: f"Sp({2 * a[0]},R)",
            "Opq": lambda: f"O({a[0]},{a[1]})",
            "Umn": lambda: f"U({a[0]},{a[1]})",
            "OstarN": lambda: f"O*({2 * a[0]})",
            "Sppq": lambda: f"Sp({a[0]},{a[1]})",
        }[self.kind]()

    @classmethod
    def parse(cls, text: str) -> "GroupTag":
        text = text.replace(" ", "")
        patterns = [
            (r"Sp\((\d+),R\)", "Sp2nR", lambda v: (v[0] // 2,)),
            (r"O\*\((\d+)\)", "OstarN", lambda v: (v[0] // 2,)),
            (r"O\((\d+),(\d+)\)", "Opq", tuple),
            (r"U\((\d+),(\d+)\)", "Umn", tuple),
            (r"Sp\((\d+),(\d+)\)", "Sppq", tuple),
        ]
        for pat, kind, conv in patterns:
            m = re.fullmatch(pat, text)
            if m:
                vals = [int(g) for g in m.groups()]
                if kind in ("Sp2nR", "OstarN") and vals[0] % 2:
                    break
                return cls(kind, conv(vals))
        raise UsageError(f"cannot parse group {text!r}")


def sp2nR(n): return GroupTag("Sp2nR", (n,))
def o_pq(p, q): return GroupTag("Opq", (p, q))
def u_mn(m, n): return GroupTag("Umn", (m, n))
def ostar(n): return GroupTag("OstarN", (n,))
def sp_pq(p, q): return GroupTag("Sppq", (p, q))


# ---------------------------------------------------------------------------
# dual pairs

_PAIR_KINDS = ("OSp", "UU", "SpOstar")


@dataclass(frozen=True)
class DualPair:
    """One of the three stable-range dual pairs.

    ``m`` is used only by the UU pair, where the smaller member is U(m, n).
    """

    kind: str
    p: int
    q: int
    n: int
    m: int | None = None

    def __post_init__(self):
        if self.kind not in _PAIR_KINDS:
            raise UsageError(f"unknown pair kind {self.kind!r}")
        if (self.m is None) != (self.kind != "UU"):
            raise UsageError("m is required for UU and forbidden otherwise")
        vals = [self.p, self.q, self.n] + ([self.m] if self.m is not None else [])
        if any(int(v) < 1 for v in vals):
            raise UsageError(f"parameters must be positive: {self}")
        if not self.in_stable_range():
            raise StableRangeError(f"{self.label()} is outside the stable range")

    @classmethod
    def osp(cls, p, q, n): return cls("OSp", p, q, n)

    @classmethod
    def uu(cls, p, q, m, n): return cls("UU", p, q, n, m)

    @classmethod
    def spostar(cls, p, q, n): return cls("SpOstar", p, q, n)

    def in_stable_range(self) -> bool:
        low = min(self.p, self.q)
        if self.kind == "OSp":
            return 2 * self.n < low
        if self.kind == "UU":
            return self.m + self.n <= low
        return self.n <= low

    @property
    def params(self) -> tuple:
        if self.kind == "UU":
            return (self.p, self.q, self.m, self.n)
        return (self.p, self.q, self.n)

    def small_group(self) -> GroupTag:
        if self.kind == "OSp":
            return sp2nR(self.n)
        if self.kind == "UU":
            return u_mn(self.m, self.n)
        return ostar(self.n)

    def large_group(self) -> GroupTag:
        if self.kind == "OSp":
            return o_pq(self.p, self.q)
        if self.kind == "UU":
            return u_mn(self.p, self.q)
        return sp_pq(self.p, self.q)

    def label(self) -> str:
        return f"{self.kind}({','.join(map(str, self.params))})"

    def __str__(self):
        return self.label()


# ---------------------------------------------------------------------------
# signed diagrams

def row_string(length: int, lead: str) -> str:
    other = _FLIP[lead]
    return "".join(lead if i % 2 == 0 else other for i in range(length))


def row_counts(length: int, lead: str) -> tuple:
    """(plus, minus) boxes in one row."""
    first = (length + 1) // 2
    second = length // 2
    return (first, second) if lead == PLUS else (second, first)


def _row_key(row):
    length, lead = row
    return (-length, 0 if lead == PLUS else 1)


def canonical_rows(rows) -> tuple:
    rows = [(int(length), lead) for length, lead in rows]
    for length, lead in rows:
        if length < 1 or lead not in (PLUS, MINUS):
            raise UsageError(f"bad row ({length}, {lead!r})")
    return tuple(sorted(rows, key=_row_key))


@dataclass(frozen=True)
class SignedDiagram:
    group: GroupTag
    rows: tuple

    def __post_init__(self):
        canon = canonical_rows(self.rows)
        object.__setattr__(self, "rows", canon)

    @property
    def size(self) -> int:
        return sum(length for length, _ in self.rows)

    @property
    def signature(self) -> tuple:
        plus = minus = 0
        for length, lead in self.rows:
            a, b = row_counts(length, lead)
            plus += a
            minus += b
        return plus, minus

    def text(self) -> str:
        return format_diagram(self)

    def __str__(self):
        return self.text()

    def to_json(self) -> dict:
        return {"group": str(self.group), "text": self.text(),
                "rows": [{"len": length, "lead": lead} for length, lead in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "SignedDiagram":
        group = GroupTag.parse(data["group"])
        return cls(group, tuple((r["len"], r["lead"]) for r in data["rows"]))


_ROW_RE = re.compile(r"\(([+\-]+)\)")


def parse_diagram(text: str, group: GroupTag) -> SignedDiagram:
    """Parse ``"[(+-+)(+)(-)]"``.  Rows must alternate in sign."""
    s = text.strip().replace("−", "-").replace(" ", "")
    if not (s.startswith("[") and s.endswith("]")):
        raise UsageError(f"diagram must be bracketed: {text!r}")
    body = s[1:-1]
    rows = []
    pos = 0
    for m in _ROW_RE.finditer(body):
        if m.start() != pos:
            break
        pos = m.end()
        signs = m.group(1)
        if any(signs[i] == signs[i + 1] for i in range(len(signs) - 1)):
            raise UsageError(f"signs must alternate in row {signs!r}")
        rows.append((len(signs), signs[0]))
    if pos != len(body):
        raise UsageError(f"cannot parse diagram {text!r}")
    return SignedDiagram(group, tuple(rows))


def format_diagram(d: SignedDiagram) -> str:
    return "[" + "".join(f"({row_string(length, lead)})" for length, lead in d.rows) + "]"


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


def validate_diagram(d: SignedDiagram) -> ValidationResult:
    """Check size, signature and the parity rule for ``d.group``."""
    g = d.group
    bad = []
    if d.size != g.size:
        bad.append(f"size: {d.size} boxes, {g} needs {g.size}")
    sig = g.signature
    if sig is not None and d.signature != sig:
        bad.append(f"signature: got {d.signature}, {g} needs {sig}")

    counts = Counter(d.rows)
    lengths = sorted({length for length, _ in d.rows})
    if g.kind in ("Sp2nR", "Opq"):
        paired = 1 if g.kind == "Sp2nR" else 0  # odd lengths for Sp, even for O
        for length in lengths:
            if length % 2 == paired and counts[(length, PLUS)] != counts[(length, MINUS)]:
                bad.append(f"pairing: rows of length {length} must lead + and - equally often")
    elif g.kind == "OstarN":
        for length in lengths:
            if length % 2 == 1 and counts[(length, MINUS)]:
                bad.append(f"lead: odd rows of {g} must lead + (length {length})")
    elif g.kind == "Sppq":
        for length in lengths:
            if length % 2 == 0 and counts[(length, MINUS)]:
                bad.append(f"lead: even rows of {g} must lead + (length {length})")
    return ValidationResult(not bad, tuple(bad))


def require_valid(d: SignedDiagram) -> SignedDiagram:
    res = validate_diagram(d)
    if not res:
        raise InvalidDiagram(f"{d} is not a valid diagram for {d.group}: " + "; ".join(res.violations),
                             res.violations)
    return d


# ---------------------------------------------------------------------------
# enumeration

def enumerate_orbits(group: GroupTag, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """All valid diagrams for ``group`` in strictly increasing canonical order."""
    size = group.size
    sig = group.signature
    # candidate rows in canonical order; multisets are built non-decreasing in this order
    cands = [(length, lead) for length in range(size, 0, -1) for lead in (PLUS, MINUS)]
    out = []

    def rec(start, left, plus, minus, acc):
        if sig is not None and (plus > sig[0] or minus > sig[1]):
            return
        if left == 0:
            d = SignedDiagram(group, tuple(acc))
            if validate_diagram(d):
                out.append(d)
                if len(out) > cap:
                    raise CapExceeded(f"more than {cap} diagrams for {group}")
            return
        for i in range(start, len(cands)):
            length, lead = cands[i]
            if length > left:
                continue
            a, b = row_counts(length, lead)
            acc.append(cands[i])
            rec(i, left - length, plus + a, minus + b, acc)
            acc.pop()

    rec(0, size, 0, 0, [])
    out.sort(key=lambda d: [_row_key(r) for r in d.rows])
    return out


# ---------------------------------------------------------------------------
# theta lift

def theta_lift_diagram(pair: DualPair, d: SignedDiagram) -> SignedDiagram:
    """Lift a diagram of the smaller member to the larger one.

    Each row gets one more box at its end (sign forced by alternation);
    the remaining boxes of the larger space become singleton rows.
    """
    if d.group != pair.small_group():
        raise UsageError(f"{d.group} is not the smaller member of {pair}")
    require_valid(d)
    big = pair.large_group()
    rows = [(length + 1, lead) for length, lead in d.rows]
    plus = sum(row_counts(length, lead)[0] for length, lead in rows)
    minus = sum(row_counts(length, lead)[1] for length, lead in rows)
    need_plus, need_minus = big.signature
    extra_plus, extra_minus = need_plus - plus, need_minus - minus
    if extra_plus < 0 or extra_minus < 0:
        raise LiftInfeasible(f"cannot lift {d} to {big}: signature overshoots by "
                             f"({-extra_plus}, {-extra_minus})")
    rows += [(1, PLUS)] * extra_plus + [(1, MINUS)] * extra_minus
    out = SignedDiagram(big, tuple(rows))
    res = validate_diagram(out)
    if not res:
        raise LiftInfeasible(f"lift of {d} is invalid for {big}: " + "; ".join(res.violations))
    return out


def zero_orbit(group: GroupTag) -> SignedDiagram:
    """The zero orbit: every box its own row."""
    if group.kind == "Sp2nR":
        n = group.params[0]
        rows = [(1, PLUS)] * n + [(1, MINUS)] * n
    elif group.kind == "OstarN":
        rows = [(1, PLUS)] * group.params[0]
    else:
        a, b = group.params
        rows = [(1, PLUS)] * a + [(1, MINUS)] * b
    return SignedDiagram(group, tuple(rows))


def regular_holomorphic_orbit(group: GroupTag) -> SignedDiagram:
    """The regular orbit in the holomorphic block of the smaller member."""
    if group.kind == "Sp2nR":
        rows = [(2, PLUS)] * group.params[0]
    elif group.kind == "Umn":
        m, n = group.params
        if m < n:
            raise UsageError("the regular holomorphic diagram is tabulated for m >= n")
        rows = [(2, PLUS)] * n + [(1, PLUS)] * (m - n)
    elif group.kind == "OstarN":
        n = group.params[0]
        rows = [(2, PLUS)] * (n // 2) + [(1, PLUS)] * (n % 2)
    else:
        raise UsageError(f"{group} is not the smaller member of a pair")
    return SignedDiagram(group, tuple(rows))


def _rows(*blocks):
    out = []
    for signs, mult in blocks:
        if mult < 0:
            raise LiftInfeasible(f"negative multiplicity for ({signs})")
        out += [(len(signs), signs[0])] * mult
    return tuple(out)


def trivial_lift_closed_form(pair: DualPair) -> SignedDiagram:
    """Tabulated diagram of the lift of the zero orbit."""
    p, q, n = pair.p, pair.q, pair.n
    if pair.kind == "OSp":
        rows = _rows(("+-", n), ("-+", n), ("+", p - 2 * n), ("-", q - 2 * n))
    elif pair.kind == "UU":
        m = pair.m
        rows = _rows(("+-", m), ("-+", n), ("+", p - m - n), ("-", q - m - n))
    else:
        rows = _rows(("+-", n), ("+", p - n), ("-", q - n))
    return SignedDiagram(pair.large_group(), rows)


def regular_lift_closed_form(pair: DualPair) -> SignedDiagram:
    """Tabulated diagram of the lift of the regular holomorphic orbit."""
    p, q, n = pair.p, pair.q, pair.n
    if pair.kind == "OSp":
        rows = _rows(("+-+", n), ("+", p - 2 * n), ("-", q - n))
    elif pair.kind == "UU":
        m = pair.m
        if m < n:
            raise UsageError("the regular holomorphic diagram is tabulated for m >= n")
        rows = _rows(("+-+", n), ("+-", m - n), ("+", p - m - n), ("-", q - m))
    elif n % 2:
        rows = _rows(("+-+", (n - 1) // 2), ("+-", 1), ("+", p - n), ("-", q - (n + 1) // 2))
    else:
        rows = _rows(("+-+", n // 2), ("+", p - n), ("-", q - n // 2))
    return SignedDiagram(pair.large_group(), rows)
