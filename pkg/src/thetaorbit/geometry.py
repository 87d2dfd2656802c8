"""Moment maps, null-cone strata and signed Jordan types, computed exactly.

Realizations (W = W^+ + W^-):

    OSp      A in M_{p,n}, B in M_{q,n}
             psi = (A^t A, B^t B),            phi = A B^t
    UU       A in M_{p,m}, B in M_{p,n}, C in M_{q,m}, D in M_{q,n}
             psi = (A^t B, D^t C),            phi = (A C^t, D B^t)
    SpOstar  A in M_{2p,n}, B in M_{2q,n}
             psi = (A^t J_p A, B^t J_q B),    phi = A B^t

An element of s' is a pair (X, Y) placed as [[0, X], [Y, 0]] on
V' = V'^+ + V'^-, so X maps V'^- to V'^+ and Y maps V'^+ to V'^-.  The
element of s built from Z is [[0, Z], [Z', 0]] with Z' = -Z^t (OSp),
Z' = J_q Z^t J_p (SpOstar), or (Z1, Z2) itself (UU).

Reading conventions for signed Jordan types.  A row of a diagram is a
Jordan chain v, xv, x^2 v, ...  For elements of s' the sign of the
generator v leads the row.  Elements of s are first carried to s^* by the
trace form, which transposes them, and are read the same way; on the
untransposed matrix this means the row is led by the sign of the last
vector of the chain.  With these conventions the lift of a generic point
of psi^{-1}(closure O') is the diagram obtained by adding one box to each
row.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from dataclasses import dataclass, field

from .combinatorics import (MINUS, PLUS, DualPair, GroupTag, SignedDiagram, require_valid,
                            row_counts, theta_lift_diagram)
from .errors import DegenerateSample, InternalError, NotInNullCone, NotNilpotent, ShapeMismatch, UsageError
from .exactmatrix import ExactMatrix, GaussRat, I, ONE, ZERO

RETRY_CAP = 32


# ---------------------------------------------------------------------------
# containers

@dataclass
class WPoint:
    """A point of W given by its named blocks."""

    pair: DualPair
    blocks: dict

    def to_json(self):
        return {k: v.to_json() for k, v in sorted(self.blocks.items())}


@dataclass
class SymmetricSpaceElement:
    """An element of s (side='s') or s' (side='s_prime')."""

    pair: DualPair
    side: str
    blocks: dict = field(default_factory=dict)

    def __eq__(self, other):
        return (isinstance(other, SymmetricSpaceElement) and self.pair == other.pair
                and self.side == other.side and self.blocks == other.blocks)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def to_json(self):
        return {"side": self.side, "blocks": {k: v.to_json() for k, v in sorted(self.blocks.items())}}


def w_shapes(pair: DualPair) -> dict:
    p, q, n = pair.p, pair.q, pair.n
    if pair.kind == "OSp":
        return {"A": (p, n), "B": (q, n)}
    if pair.kind == "UU":
        m = pair.m
        return {"A": (p, m), "B": (p, n), "C": (q, m), "D": (q, n)}
    return {"A": (2 * p, n), "B": (2 * q, n)}


def make_w(pair: DualPair, **blocks) -> WPoint:
    shapes = w_shapes(pair)
    out = {}
    for name, shape in shapes.items():
        mat = blocks.get(name)
        if mat is None:
            mat = ExactMatrix.zeros(*shape)
        elif not isinstance(mat, ExactMatrix):
            mat = ExactMatrix(mat)
        if mat.shape != shape:
            raise ShapeMismatch(f"block {name} of {pair} must be {shape}, got {mat.shape}")
        out[name] = mat
    extra = set(blocks) - set(shapes)
    if extra:
        raise ShapeMismatch(f"unknown blocks {sorted(extra)} for {pair}")
    return WPoint(pair, out)


def _check_w(pair, w: WPoint):
    if w.pair != pair:
        raise ShapeMismatch("point belongs to a different pair")
    for name, shape in w_shapes(pair).items():
        if name not in w.blocks or w.blocks[name].shape != shape:
            raise ShapeMismatch(f"block {name} must have shape {shape}")


# ---------------------------------------------------------------------------
# moment maps

def moment_psi(pair: DualPair, w: WPoint) -> SymmetricSpaceElement:
    _check_w(pair, w)
    b = w.blocks
    if pair.kind == "OSp":
        X, Y = b["A"].T @ b["A"], b["B"].T @ b["B"]
    elif pair.kind == "UU":
        X, Y = b["A"].T @ b["B"], b["D"].T @ b["C"]
    else:
        Jp, Jq = ExactMatrix.symplectic_form(pair.p), ExactMatrix.symplectic_form(pair.q)
        X, Y = b["A"].T @ Jp @ b["A"], b["B"].T @ Jq @ b["B"]
    return SymmetricSpaceElement(pair, "s_prime", {"X": X, "Y": Y})


def moment_phi(pair: DualPair, w: WPoint) -> SymmetricSpaceElement:
    _check_w(pair, w)
    b = w.blocks
    if pair.kind == "UU":
        return SymmetricSpaceElement(pair, "s", {"Z1": b["A"] @ b["C"].T, "Z2": b["D"] @ b["B"].T})
    return SymmetricSpaceElement(pair, "s", {"Z": b["A"] @ b["B"].T})


def off_diagonal_maps(x: SymmetricSpaceElement) -> tuple:
    """(map V^- -> V^+, map V^+ -> V^-) of the ambient nilpotent."""
    pair = x.pair
    if x.side == "s_prime":
        return x.blocks["X"], x.blocks["Y"]
    if pair.kind == "UU":
        return x.blocks["Z1"], x.blocks["Z2"]
    Z = x.blocks["Z"]
    if pair.kind == "OSp":
        return Z, -Z.T
    Jp, Jq = ExactMatrix.symplectic_form(pair.p), ExactMatrix.symplectic_form(pair.q)
    return Z, Jq @ Z.T @ Jp


def ambient_matrix(x: SymmetricSpaceElement) -> ExactMatrix:
    up, down = off_diagonal_maps(x)
    P, Q = up.shape[0], up.shape[1]
    return ExactMatrix.block([[ExactMatrix.zeros(P, P), up], [down, ExactMatrix.zeros(Q, Q)]])


# ---------------------------------------------------------------------------
# null cone

@dataclass(frozen=True)
class NullConeOrbit:
    ranks_plus: tuple
    ranks_minus: tuple
    dim_plus: int
    dim_minus: int

    @property
    def dim(self) -> int:
        return self.dim_plus + self.dim_minus


def nullcone_stratum_dim(pair: DualPair, side: str, ranks: tuple) -> int:
    """Dimension of the K x K' orbit in the null cone of W^side with given ranks."""
    outer = pair.p if side == "plus" else pair.q
    n = pair.n
    if pair.kind == "OSp":
        (r,) = ranks
        return r * (outer + n) - r * r - r * (r + 1) // 2
    if pair.kind == "UU":
        r, s = ranks
        return r * (pair.m + outer) + s * (n + outer) + r * s - (r + s) ** 2
    (r,) = ranks
    return r * (2 * outer + n) - r * r - r * (r - 1) // 2


def nullcone_orbit_of(pair: DualPair, w: WPoint) -> NullConeOrbit:
    if not moment_psi(pair, w).is_zero():
        raise NotInNullCone("psi(w) is not zero")
    b = w.blocks
    if pair.kind == "UU":
        plus = (b["A"].rank(), b["B"].rank())
        minus = (b["C"].rank(), b["D"].rank())
    else:
        plus, minus = (b["A"].rank(),), (b["B"].rank(),)
    return NullConeOrbit(plus, minus, nullcone_stratum_dim(pair, "plus", plus),
                         nullcone_stratum_dim(pair, "minus", minus))


# ---------------------------------------------------------------------------
# signed Jordan types

def complex_jordan_rows(up: ExactMatrix, down: ExactMatrix) -> Counter:
    """Jordan chains of [[0, up], [down, 0]] as {(length, top sign, bottom sign): count}.

    ``b[s][j]`` is the rank of x^j followed by projection to V^s, read off
    alternating words in ``up`` and ``down``.  Chains of length L ending in
    V^s number b[s][L-1] - b[s][L] - (b[s'][L] - b[s'][L+1]) where s' is the
    other sign.
    """
    P, Q = up.shape
    if down.shape != (Q, P):
        raise ShapeMismatch("off-diagonal blocks have incompatible shapes")
    N = P + Q
    b = {}
    for s in (PLUS, MINUS):
        ranks = [P if s == PLUS else Q]
        M = ExactMatrix.eye(P) if s == PLUS else ExactMatrix.eye(Q)
        cur = s
        for _ in range(N + 1):
            # M currently lands in V^s and starts in V^cur; extend by one step
            M = M @ (up if cur == PLUS else down)
            cur = MINUS if cur == PLUS else PLUS
            ranks.append(M.rank())
        if ranks[-1] != 0:
            raise NotNilpotent("alternating words do not vanish")
        b[s] = ranks
    c = {s: [b[s][j] - b[s][j + 1] for j in range(N + 1)] for s in (PLUS, MINUS)}
    other = {PLUS: MINUS, MINUS: PLUS}
    rows = Counter()
    for L in range(1, N + 1):
        for s in (PLUS, MINUS):
            k = c[s][L - 1] - c[other[s]][L]
            if k < 0:
                raise InternalError("negative chain count")
            if k:
                top = s if L % 2 else other[s]
                rows[(L, top, s)] += k
    if sum(L * k for (L, _, _), k in rows.items()) != N:
        raise NotNilpotent("chains do not exhaust the space")
    return rows


def _quaternionic(group: GroupTag, complex_rows: Counter) -> tuple:
    """Halve a complex signed type for O*(2n) or Sp(p,q)."""
    paired_parity = 1 if group.kind == "OstarN" else 0  # odd rows pair up for O*, even for Sp(p,q)
    out = []
    lengths = sorted({L for L, _ in complex_rows})
    for L in lengths:
        plus, minus = complex_rows[(L, PLUS)], complex_rows[(L, MINUS)]
        if L % 2 == paired_parity:
            if plus != minus:
                raise InternalError(f"unpaired rows of length {L} in a quaternionic type")
            out += [(L, PLUS)] * plus
        else:
            if plus % 2 or minus % 2:
                raise InternalError(f"odd multiplicity of length-{L} rows in a quaternionic type")
            out += [(L, PLUS)] * (plus // 2) + [(L, MINUS)] * (minus // 2)
    return tuple(out)


def signed_jordan_type(group: GroupTag, x: SymmetricSpaceElement) -> SignedDiagram:
    """Signed diagram of ``x`` for ``group`` (the member of the pair acting on x's side)."""
    up, down = off_diagonal_maps(x)
    chains = complex_jordan_rows(up, down)
    rows = Counter()
    for (L, top, bottom), k in chains.items():
        rows[(L, top if x.side == "s_prime" else bottom)] += k
    if group.kind in ("OstarN", "Sppq"):
        final = _quaternionic(group, rows)
    else:
        final = tuple(r for r, k in rows.items() for _ in range(k))
    return SignedDiagram(group, final)


# ---------------------------------------------------------------------------
# representatives and sections

def _rng(*key) -> random.Random:
    digest = hashlib.sha256(repr(key).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _complex_rows_of(d: SignedDiagram) -> list:
    if d.group.kind != "OstarN":
        return list(d.rows)
    out = []
    for L, lead in d.rows:
        if L % 2:
            out += [(L, PLUS), (L, MINUS)]
        else:
            out += [(L, lead), (L, lead)]
    return out


def _chain_maps(rows, P, Q):
    """0/1 matrices sending each chain box to the next one."""
    up = [[ZERO] * Q for _ in range(P)]
    down = [[ZERO] * P for _ in range(Q)]
    nxt = {PLUS: 0, MINUS: 0}
    for L, lead in rows:
        signs = [lead if i % 2 == 0 else (MINUS if lead == PLUS else PLUS) for i in range(L)]
        idx = []
        for s in signs:
            idx.append(nxt[s])
            nxt[s] += 1
        for i in range(L - 1):
            src, dst = idx[i], idx[i + 1]
            if signs[i] == MINUS:
                up[dst][src] = ONE
            else:
                down[dst][src] = ONE
    if nxt[PLUS] != P or nxt[MINUS] != Q:
        raise InternalError("chain boxes do not fill the space")
    return ExactMatrix(up, (P, Q)), ExactMatrix(down, (Q, P))


def _random_invertible(rng, n, height=3):
    for _ in range(RETRY_CAP):
        g = ExactMatrix([[rng.randint(-height, height) for _ in range(n)] for _ in range(n)], (n, n))
        if g.rank() == n:
            return g
    raise DegenerateSample("no invertible sample found")


def build_representative(pair: DualPair, d: SignedDiagram) -> SymmetricSpaceElement:
    """A point (X, Y) of s' whose signed Jordan type is ``d``.

    Chain bases give 0/1 maps; for Sp(2n,R) and O*(2n) a change of basis Q
    on V'^- (found from a linear system) makes X and Y symmetric or
    alternating in the standard coordinates.
    """
    group = pair.small_group()
    if d.group != group:
        raise UsageError(f"{d.group} is not the smaller member of {pair}")
    require_valid(d)
    rows = _complex_rows_of(d)
    P = sum(row_counts(L, s)[0] for L, s in rows)
    Q = sum(row_counts(L, s)[1] for L, s in rows)
    up, down = _chain_maps(rows, P, Q)
    if group.kind == "Umn":
        return SymmetricSpaceElement(pair, "s_prime", {"X": up, "Y": down})

    n = P
    sign = 1 if group.kind == "Sp2nR" else -1  # symmetric or alternating
    # unknown Q (n x n), vectorized row-major; conditions linear in Q:
    #   Q^t up - sign * up^t Q = 0   and   Q down - sign * (Q down)^t = 0
    eqs = []
    for i in range(n):
        for j in range(n):
            row1 = [ZERO] * (n * n)
            row2 = [ZERO] * (n * n)
            for k in range(n):
                # (Q^t up)[i][j] = sum_k Q[k][i] up[k][j]
                row1[k * n + i] = row1[k * n + i] + up.rows[k][j]
                row1[k * n + j] = row1[k * n + j] - up.rows[k][i] * sign
                # (Q down)[i][j] = sum_k Q[i][k] down[k][j]
                row2[i * n + k] = row2[i * n + k] + down.rows[k][j]
                row2[j * n + k] = row2[j * n + k] - down.rows[k][i] * sign
            eqs += [row1, row2]
    basis = ExactMatrix(eqs, (len(eqs), n * n)).nullspace()
    rng = _rng("rep", pair.label(), d.text())
    for _ in range(RETRY_CAP):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        vec = [sum((c * v[t] for c, v in zip(coeffs, basis)), ZERO) for t in range(n * n)]
        Qm = ExactMatrix([vec[i * n:(i + 1) * n] for i in range(n)], (n, n))
        if Qm.rank() == n:
            X = up @ Qm.inverse()
            Y = Qm @ down
            return SymmetricSpaceElement(pair, "s_prime", {"X": X, "Y": Y})
    raise DegenerateSample(f"no invertible change of basis for {d}")


def _symmetric_normal_form(X: ExactMatrix):
    """(R, diag) with R^t X R diagonal, R invertible."""
    n = X.shape[0]
    M = [list(r) for r in X.rows]
    R = [list(r) for r in ExactMatrix.eye(n).rows]

    def add_col(dst, src, c):  # column/row operation x_dst += c x_src
        for i in range(n):
            M[i][dst] = M[i][dst] + c * M[i][src]
        for j in range(n):
            M[dst][j] = M[dst][j] + c * M[src][j]
        for i in range(n):
            R[i][dst] = R[i][dst] + c * R[i][src]

    def swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        M[a], M[b] = M[b], M[a]
        for row in R:
            row[a], row[b] = row[b], row[a]

    for k in range(n):
        if not M[k][k]:
            j = next((j for j in range(k + 1, n) if M[j][j]), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if M[k][j]), None)
                if j is None:
                    continue
                add_col(k, j, ONE)
        for j in range(k + 1, n):
            if M[k][j]:
                add_col(j, k, -(M[k][j] / M[k][k]))
    diag = [M[i][i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and M[i][j]:
                raise InternalError("symmetric reduction failed")
    return ExactMatrix(R, (n, n)), diag


def _alternating_normal_form(X: ExactMatrix):
    """(R, number of hyperbolic pairs) with R^t X R = diag(H, ..., H, 0, ...)."""
    n = X.shape[0]

    def form(u, v):
        return sum((u[i] * X.rows[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]), ZERO)

    vecs = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    cols = []
    pairs = 0
    while True:
        hit = None
        for a in range(len(vecs)):
            for b in range(a + 1, len(vecs)):
                val = form(vecs[a], vecs[b])
                if val:
                    hit = (a, b, val)
                    break
            if hit:
                break
        if hit is None:
            break
        a, b, val = hit
        u = vecs[a]
        v = [x / val for x in vecs[b]]
        rest = [vecs[t] for t in range(len(vecs)) if t not in (a, b)]
        new = []
        for w in rest:
            fwv, fwu = form(w, v), form(w, u)
            new.append([wi - fwv * ui + fwu * vi for wi, ui, vi in zip(w, u, v)])
        cols += [u, v]
        pairs += 1
        vecs = new
    cols += vecs
    R = ExactMatrix([[cols[j][i] for j in range(n)] for i in range(n)], (n, n))
    return R, pairs


def _orthogonal_frame(X: ExactMatrix, outer: int) -> ExactMatrix:
    """A in M_{outer,n} of rank n with A^t A = X."""
    n = X.shape[0]
    if 2 * n > outer:
        raise UsageError("frame does not fit")
    R, diag = _symmetric_normal_form(X)
    M = ExactMatrix.zeros(outer, n).rows
    M = [list(r) for r in M]
    half = GaussRat(1, 0) / 2
    for i, d in enumerate(diag):
        if d:
            M[2 * i][i] = (d + 1) * half
            M[2 * i + 1][i] = I * (d - 1) * half
        else:
            M[2 * i][i] = ONE
            M[2 * i + 1][i] = I
    return ExactMatrix(M, (outer, n)) @ R.inverse()


def _symplectic_frame(X: ExactMatrix, p: int) -> ExactMatrix:
    """A in M_{2p,n} of rank n with A^t J_p A = X."""
    n = X.shape[0]
    if n > p:
        raise UsageError("frame does not fit")
    R, pairs = _alternating_normal_form(X)
    M = [[ZERO] * n for _ in range(2 * p)]
    t = 0
    col = 0
    for _ in range(pairs):
        M[t][col] = ONE            # e_t
        M[p + t][col + 1] = ONE    # f_t, with e_t^t J f_t = 1
        t += 1
        col += 2
    while col < n:
        M[t][col] = ONE
        t += 1
        col += 1
    return ExactMatrix(M, (2 * p, n)) @ R.inverse()


def _random_orthogonal(rng, n, steps=3):
    g = ExactMatrix.eye(n)
    for _ in range(steps):
        while True:
            v = [rng.randint(-2, 2) for _ in range(n)]
            vv = sum(x * x for x in v)
            if vv:
                break
        col = ExactMatrix([[x] for x in v], (n, 1))
        refl = ExactMatrix.eye(n) - (col @ col.T).scale(GaussRat(2, 0) / vv)
        g = refl @ g
    return g


def _random_symplectic(rng, p, steps=3):
    J = ExactMatrix.symplectic_form(p)
    g = ExactMatrix.eye(2 * p)
    for _ in range(steps):
        v = ExactMatrix([[rng.randint(-2, 2)] for _ in range(2 * p)], (2 * p, 1))
        c = rng.choice([-2, -1, 1, 2])
        g = (ExactMatrix.eye(2 * p) + (v @ v.T @ J).scale(c)) @ g
    return g


def section(pair: DualPair, x: SymmetricSpaceElement, seed=0) -> WPoint:
    """A point w with psi(w) = x whose blocks have full column rank.

    Full rank certifies that w lies in the open K-orbit of the fibre, so
    phi(w) is a generic point of phi(psi^{-1}(x)).
    """
    X, Y = x.blocks["X"], x.blocks["Y"]
    p, q, n = pair.p, pair.q, pair.n
    for attempt in range(RETRY_CAP):
        rng = _rng("section", pair.label(), repr(X.rows), repr(Y.rows), seed, attempt)
        if pair.kind == "OSp":
            A = _random_orthogonal(rng, p) @ _orthogonal_frame(X, p)
            B = _random_orthogonal(rng, q) @ _orthogonal_frame(Y, q)
            w = make_w(pair, A=A, B=B)
            ok = A.rank() == n and B.rank() == n
        elif pair.kind == "SpOstar":
            A = _random_symplectic(rng, p) @ _symplectic_frame(X, p)
            B = _random_symplectic(rng, q) @ _symplectic_frame(Y, q)
            w = make_w(pair, A=A, B=B)
            ok = A.rank() == n and B.rank() == n
        else:
            m = pair.m
            A0 = ExactMatrix.vstack(ExactMatrix.eye(m), ExactMatrix.zeros(p - m, m))
            B0 = ExactMatrix.vstack(X, ExactMatrix.eye(n), ExactMatrix.zeros(p - m - n, n))
            D0 = ExactMatrix.vstack(ExactMatrix.eye(n), ExactMatrix.zeros(q - n, n))
            C0 = ExactMatrix.vstack(Y, ExactMatrix.eye(m), ExactMatrix.zeros(q - m - n, m))
            g, h = _random_invertible(rng, p), _random_invertible(rng, q)
            A, B = g @ A0, g.inverse().T @ B0
            D, C = h @ D0, h.inverse().T @ C0
            w = make_w(pair, A=A, B=B, C=C, D=D)
            ok = A.rank() == m and B.rank() == n and C.rank() == m and D.rank() == n
        if ok and moment_psi(pair, w) == x:
            return w
    raise DegenerateSample(f"no generic section over {x.blocks} after {RETRY_CAP} attempts")


# ---------------------------------------------------------------------------
# end-to-end check

@dataclass
class LiftCheck:
    source: SignedDiagram
    representative_type: SignedDiagram
    geometric: SignedDiagram
    combinatorial: SignedDiagram

    @property
    def ok(self) -> bool:
        return self.representative_type == self.source and self.geometric == self.combinatorial

    def to_json(self):
        return {"diagram": self.source.text(), "geometric": self.geometric.text(),
                "combinatorial": self.combinatorial.text(), "ok": self.ok}


def check_lift(pair: DualPair, d: SignedDiagram, seed=0) -> LiftCheck:
    x_small = build_representative(pair, d)
    rep_type = signed_jordan_type(pair.small_group(), x_small)
    w = section(pair, x_small, seed)
    x_big = moment_phi(pair, w)
    geo = signed_jordan_type(pair.large_group(), x_big)
    return LiftCheck(d, rep_type, geo, theta_lift_diagram(pair, d))


def verify_lift(pair: DualPair, d: SignedDiagram, seed=0) -> bool:
    """True iff the generic point over O'(d) has the combinatorial lift as its type."""
    return check_lift(pair, d, seed).ok
