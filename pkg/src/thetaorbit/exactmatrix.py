"""Dense matrices over the Gaussian rationals Q(i)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import ShapeMismatch


class GaussRat:
    """a + b i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def of(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return GaussRat(Fraction(x.real), Fraction(x.imag))
        return GaussRat(x, 0)

    def __add__(self, o):
        o = GaussRat.of(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussRat.of(o)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussRat.of(o) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussRat.of(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussRat.of(o)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = GaussRat.of(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"

    def to_json(self):
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_json(cls, q):
        return cls(Fraction(q[0], q[1]), Fraction(q[2], q[3]))


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _gi_div(a, b):
    """Exact quotient a/b in Z[i]; a, b are (re, im) integer pairs."""
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    if re % n or im % n:
        raise ArithmeticError("inexact division in Z[i]")
    return (re // n, im // n)


def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


class ExactMatrix:
    """Immutable-by-convention dense matrix with ``GaussRat`` entries."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows, shape=None):
        self.rows = [[GaussRat.of(x) for x in row] for row in rows]
        if shape is None:
            shape = (len(self.rows), len(self.rows[0]) if self.rows else 0)
        self.shape = tuple(shape)
        if any(len(r) != self.shape[1] for r in self.rows) or len(self.rows) != self.shape[0]:
            raise ShapeMismatch("ragged matrix")

    # constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, r, c):
        return cls([[ZERO] * c for _ in range(r)], (r, c))

    @classmethod
    def eye(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def vstack(cls, *blocks):
        cols = {b.shape[1] for b in blocks}
        if len(cols) != 1:
            raise ShapeMismatch("vstack needs equal column counts")
        rows = [list(r) for b in blocks for r in b.rows]
        return cls(rows, (sum(b.shape[0] for b in blocks), cols.pop()))

    @classmethod
    def hstack(cls, *blocks):
        nr = {b.shape[0] for b in blocks}
        if len(nr) != 1:
            raise ShapeMismatch("hstack needs equal row counts")
        n = nr.pop()
        rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(n)]
        return cls(rows, (n, sum(b.shape[1] for b in blocks)))

    @classmethod
    def block(cls, grid):
        return cls.vstack(*[cls.hstack(*row) for row in grid])

    @classmethod
    def symplectic_form(cls, p):
        """J_p = [[0, I_p], [-I_p, 0]]."""
        z, e = cls.zeros(p, p), cls.eye(p)
        return cls.block([[z, e], [-e, z]])

    # arithmetic -------------------------------------------------------

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            nz = [(k, v) for k, v in enumerate(row) if v]
            out.append([sum((v * col[k] for k, v in nz), ZERO) for col in cols] if cols
                       else [ZERO] * other.shape[1])
        return ExactMatrix(out, (self.shape[0], other.shape[1]))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.shape)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows], self.shape)

    def scale(self, c):
        c = GaussRat.of(c)
        return ExactMatrix([[c * a for a in r] for r in self.rows], self.shape)

    @property
    def T(self):
        r, c = self.shape
        return ExactMatrix([[self.rows[i][j] for i in range(r)] for j in range(c)], (c, r))

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def column(self, j):
        return [r[j] for r in self.rows]

    def submatrix(self, r0, r1, c0, c1):
        return ExactMatrix([row[c0:c1] for row in self.rows[r0:r1]], (r1 - r0, c1 - c0))

    # linear algebra ---------------------------------------------------

    def rank(self) -> int:
        """Rank by fraction-free (Bareiss) elimination over Z[i]."""
        rows = []
        for row in self.rows:
            den = 1
            for x in row:
                den = lcm(den, x.re.denominator, x.im.denominator)
            ints = [(int(x.re * den), int(x.im * den)) for x in row]
            if any(a or b for a, b in ints):
                rows.append(ints)
        if not rows:
            return 0
        ncols = self.shape[1]
        prev = (1, 0)
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != (0, 0)), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pv = rows[r][c]
            for i in range(r + 1, len(rows)):
                a = rows[i][c]
                new = []
                for j in range(ncols):
                    t1 = _gi_mul(pv, rows[i][j])
                    t2 = _gi_mul(a, rows[r][j])
                    new.append(_gi_div((t1[0] - t2[0], t1[1] - t2[1]), prev))
                rows[i] = new
            prev = pv
            r += 1
            if r == len(rows):
                break
        return r

    def rref(self):
        """Reduced row echelon form over Q(i) and the pivot columns."""
        a = [list(r) for r in self.rows]
        nr, nc = self.shape
        pivots = []
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, nr) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = ONE / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(nr):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return ExactMatrix(a, self.shape), pivots

    def nullspace(self):
        """Basis of the right kernel, as a list of column lists."""
        red, pivots = self.rref()
        nc = self.shape[1]
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for f in free:
            v = [ZERO] * nc
            v[f] = ONE
            for i, pc in enumerate(pivots):
                v[pc] = -red.rows[i][f]
            basis.append(v)
        return basis

    def inverse(self):
        n, m = self.shape
        if n != m:
            raise ShapeMismatch("inverse of a non-square matrix")
        aug = ExactMatrix.hstack(self, ExactMatrix.eye(n))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return red.submatrix(0, n, n, 2 * n)

    # serialization ----------------------------------------------------

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data, cols=None):
        rows = [[GaussRat.from_json(q) for q in r] for r in data]
        return cls(rows, (len(rows), cols if cols is not None else (len(rows[0]) if rows else 0)))

    def __repr__(self):
        return "ExactMatrix(" + repr(self.rows) + ")"
