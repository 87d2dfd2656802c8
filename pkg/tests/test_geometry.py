import random
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from thetaorbit import geometry as geo
from thetaorbit.combinatorics import DualPair, enumerate_orbits, parse_diagram, theta_lift_diagram
from thetaorbit.errors import NotInNullCone, ShapeMismatch
from thetaorbit.exactmatrix import ExactMatrix, GaussRat, I, ONE, ZERO

OSP331 = DualPair.osp(3, 3, 1)
UU2211 = DualPair.uu(2, 2, 1, 1)


def col(*xs):
    return ExactMatrix([[x] for x in xs])


def E(r, c, entries):
    m = [[ZERO] * c for _ in range(r)]
    for (i, j), v in entries.items():
        m[i][j] = GaussRat.of(v)
    return ExactMatrix(m)


# --- moment maps ------------------------------------------------------------

def test_moment_maps_on_isotropic_column():
    a = col(1, I, 0)
    w = geo.make_w(OSP331, A=a, B=a)
    assert geo.moment_psi(OSP331, w).is_zero()
    z = geo.moment_phi(OSP331, w).blocks["Z"]
    assert z.rank() == 1 and z == a @ a.T


def test_moment_maps_vanish_at_zero():
    for pair in (OSP331, UU2211, DualPair.spostar(2, 2, 1)):
        w = geo.make_w(pair)
        assert geo.moment_psi(pair, w).is_zero() and geo.moment_phi(pair, w).is_zero()


def test_symplectic_psi_is_alternating():
    pair = DualPair.spostar(2, 2, 1)
    w = geo.make_w(pair, A=col(1, 0, 0, 0))
    assert geo.moment_psi(pair, w).blocks["X"].is_zero()


def test_unitary_phi():
    e1, e2 = col(1, 0), col(0, 1)
    w = geo.make_w(UU2211, A=e1, C=e1, B=e2, D=e2)
    out = geo.moment_phi(UU2211, w)
    assert out.blocks["Z1"] == e1 @ e1.T and out.blocks["Z2"] == e2 @ e2.T


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        geo.make_w(OSP331, A=col(1, 0))
    with pytest.raises(ShapeMismatch):
        geo.make_w(OSP331, Q=col(1, 0, 0))


# --- null cone --------------------------------------------------------------

def test_nullcone_orbit_examples():
    w = geo.make_w(OSP331, A=col(1, I, 0))
    orb = geo.nullcone_orbit_of(OSP331, w)
    assert orb.ranks_plus == (1,) and orb.dim_plus == 2
    zero = geo.nullcone_orbit_of(OSP331, geo.make_w(OSP331))
    assert zero.dim == 0
    # the open stratum has the dimension of the whole null cone n p - n(n+1)/2
    for p, n in ((3, 1), (5, 2), (7, 3)):
        pair = DualPair.osp(p, p, n)
        assert geo.nullcone_stratum_dim(pair, "plus", (n,)) == n * p - n * (n + 1) // 2
    with pytest.raises(NotInNullCone):
        geo.nullcone_orbit_of(OSP331, geo.make_w(OSP331, A=col(1, 0, 0)))


def _basis(r, c):
    for i, j in product(range(r), range(c)):
        yield E(r, c, {(i, j): 1})


def _span_rank(vectors):
    rows = [[x for row in v.rows for x in row] for v in vectors]
    return ExactMatrix(rows).rank()


def _osp_tangent_dim(A):
    p, n = A.shape
    skew = [E(p, p, {(i, j): 1, (j, i): -1}) for i in range(p) for j in range(i + 1, p)]
    vecs = [X @ A for X in skew] + [A @ Y for Y in _basis(n, n)]
    return _span_rank(vecs)


def _sp_tangent_dim(A):
    twop, n = A.shape
    p = twop // 2
    J = ExactMatrix.symplectic_form(p)
    # sp(2p) = { J S : S symmetric }
    syms = [E(twop, twop, {(i, j): 1, (j, i): 1}) for i in range(twop) for j in range(i, twop)]
    vecs = [J @ S @ A for S in syms] + [A @ Y for Y in _basis(n, n)]
    return _span_rank(vecs)


def _uu_tangent_dim(A, B):
    p, m = A.shape
    n = B.shape[1]
    vecs = []
    for X in _basis(p, p):
        vecs.append(ExactMatrix.hstack(X @ A, -(X.T @ B)))
    for Y in _basis(m, m):
        vecs.append(ExactMatrix.hstack(A @ Y, ExactMatrix.zeros(p, n)))
    for Y in _basis(n, n):
        vecs.append(ExactMatrix.hstack(ExactMatrix.zeros(p, m), B @ Y))
    return _span_rank(vecs)


@pytest.mark.parametrize("p,n,r", [(3, 1, 0), (3, 1, 1), (5, 2, 1), (5, 2, 2), (7, 3, 2)])
def test_orthogonal_stratum_dims_match_tangent_space(p, n, r):
    pair = DualPair.osp(p, p, n)
    cols = [[ZERO] * p for _ in range(n)]
    for k in range(r):
        cols[k][2 * k], cols[k][2 * k + 1] = ONE, I
    A = ExactMatrix(cols).T
    assert geo.moment_psi(pair, geo.make_w(pair, A=A)).blocks["X"].is_zero()
    assert _osp_tangent_dim(A) == geo.nullcone_stratum_dim(pair, "plus", (r,))


@pytest.mark.parametrize("p,n,r", [(2, 1, 1), (3, 2, 1), (3, 2, 2), (4, 3, 3)])
def test_symplectic_stratum_dims_match_tangent_space(p, n, r):
    pair = DualPair.spostar(p, p, n)
    A = E(2 * p, n, {(k, k): 1 for k in range(r)})
    assert _sp_tangent_dim(A) == geo.nullcone_stratum_dim(pair, "plus", (r,))


@pytest.mark.parametrize("p,m,n,r,s", [(2, 1, 1, 1, 0), (2, 1, 1, 1, 1), (4, 2, 1, 2, 1), (4, 1, 2, 1, 2)])
def test_unitary_stratum_dims_match_tangent_space(p, m, n, r, s):
    pair = DualPair.uu(p, p, m, n)
    A = E(p, m, {(k, k): 1 for k in range(r)})
    B = E(p, n, {(r + k, k): 1 for k in range(s)})
    assert (A.T @ B).is_zero()
    assert _uu_tangent_dim(A, B) == geo.nullcone_stratum_dim(pair, "plus", (r, s))


# --- signed Jordan types and lifts -----------------------------------------

def test_zero_element_has_singleton_rows():
    x = geo.moment_phi(OSP331, geo.make_w(OSP331))
    assert geo.signed_jordan_type(OSP331.large_group(), x).text() == "[(+)(+)(+)(-)(-)(-)]"


@pytest.mark.parametrize("a,b,expected", [
    ((1, I, 0), (1, I, 0), "[(+-)(-+)(+)(-)]"),
    ((1, 0, 0), (1, I, 0), "[(-+-)(+)(+)(-)]"),
    ((1, I, 0), (1, 0, 0), "[(+-+)(+)(-)(-)]"),
])
def test_rank_one_elements(a, b, expected):
    x = geo.moment_phi(OSP331, geo.make_w(OSP331, A=col(*a), B=col(*b)))
    assert geo.signed_jordan_type(OSP331.large_group(), x).text() == expected


def test_representatives():
    g = OSP331.small_group()
    assert geo.build_representative(OSP331, parse_diagram("[(+)(-)]", g)).is_zero()
    x = geo.build_representative(OSP331, parse_diagram("[(+-)]", g))
    assert geo.ambient_matrix(x).rank() == 1
    assert (geo.ambient_matrix(x) @ geo.ambient_matrix(x)).is_zero()
    xu = geo.build_representative(UU2211, parse_diagram("[(+-)]", UU2211.small_group()))
    assert geo.signed_jordan_type(UU2211.small_group(), xu).text() == "[(+-)]"


@pytest.mark.parametrize("pair", [OSP331, DualPair.osp(5, 5, 2), UU2211, DualPair.spostar(2, 2, 1),
                                  DualPair.spostar(3, 3, 2), DualPair.uu(3, 3, 2, 1), DualPair.osp(3, 5, 1)])
def test_every_orbit_lifts_correctly(pair):
    for d in enumerate_orbits(pair.small_group()):
        check = geo.check_lift(pair, d)
        assert check.ok, check.to_json()


def test_section_solves_the_fibre():
    for pair in (DualPair.osp(5, 5, 2), UU2211, DualPair.spostar(3, 3, 2)):
        for d in enumerate_orbits(pair.small_group()):
            x = geo.build_representative(pair, d)
            w = geo.section(pair, x, seed=3)
            assert geo.moment_psi(pair, w) == x


def test_lift_check_is_seed_deterministic():
    d = parse_diagram("[(+-)]", OSP331.small_group())
    a = geo.section(OSP331, geo.build_representative(OSP331, d), seed=7)
    b = geo.section(OSP331, geo.build_representative(OSP331, d), seed=7)
    assert a.to_json() == b.to_json()


# --- equivariance -----------------------------------------------------------

def test_equivariance_orthogonal_pair():
    rng = random.Random(5)
    pair = DualPair.osp(5, 5, 2)
    A = ExactMatrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(5)])
    B = ExactMatrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(5)])
    g1, g2 = geo._random_orthogonal(rng, 5), geo._random_orthogonal(rng, 5)
    h = geo._random_invertible(rng, 2)
    w = geo.make_w(pair, A=A, B=B)
    # K acts on the left, K' by h on A and h^{-t} on B
    moved = geo.make_w(pair, A=g1 @ A @ h, B=g2 @ B @ h.inverse().T)
    assert geo.moment_phi(pair, moved).blocks["Z"] == g1 @ geo.moment_phi(pair, w).blocks["Z"] @ g2.T
    psi, psi2 = geo.moment_psi(pair, w), geo.moment_psi(pair, moved)
    assert psi2.blocks["X"] == h.T @ psi.blocks["X"] @ h
    assert psi2.blocks["Y"] == h.inverse() @ psi.blocks["Y"] @ h.inverse().T


def test_equivariance_symplectic_pair():
    rng = random.Random(9)
    pair = DualPair.spostar(2, 2, 1)
    A = ExactMatrix([[rng.randint(-2, 2)] for _ in range(4)])
    B = ExactMatrix([[rng.randint(-2, 2)] for _ in range(4)])
    g = geo._random_symplectic(rng, 2)
    J = ExactMatrix.symplectic_form(2)
    assert g.T @ J @ g == J
    w, moved = geo.make_w(pair, A=A, B=B), geo.make_w(pair, A=g @ A, B=B)
    assert geo.moment_psi(pair, moved) == geo.moment_psi(pair, w)
    assert geo.moment_phi(pair, moved).blocks["Z"] == g @ geo.moment_phi(pair, w).blocks["Z"]


# --- exact linear algebra ---------------------------------------------------

gauss = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_matches_sympy(r, c, data):
    entries = data.draw(st.lists(gauss, min_size=r * c, max_size=r * c))
    ours = ExactMatrix([[GaussRat(*entries[i * c + j]) for j in range(c)] for i in range(r)])
    theirs = sympy.Matrix(r, c, [a + b * sympy.I for a, b in entries])
    assert ours.rank() == theirs.rank()


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_inverse_roundtrip(n, data):
    entries = data.draw(st.lists(gauss, min_size=n * n, max_size=n * n))
    m = ExactMatrix([[GaussRat(*entries[i * n + j]) for j in range(n)] for i in range(n)])
    if m.rank() < n:
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == ExactMatrix.eye(n)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_nullspace_is_kernel(r, c, data):
    entries = data.draw(st.lists(gauss, min_size=r * c, max_size=r * c))
    m = ExactMatrix([[GaussRat(*entries[i * c + j]) for j in range(c)] for i in range(r)])
    basis = m.nullspace()
    assert len(basis) == c - m.rank()
    for v in basis:
        assert (m @ ExactMatrix([[x] for x in v])).is_zero()


def test_matrix_json_roundtrip():
    m = ExactMatrix([[GaussRat(1, 2), 3], [I, GaussRat(0, -1)]])
    assert ExactMatrix.from_json(m.to_json()) == m
