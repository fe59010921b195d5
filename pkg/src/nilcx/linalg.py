"""Exact dense linear algebra over Gaussian rationals.

Kernels, solves orthogonal to the kernel, and Hermitian orthogonal
complements; the substrate every other module computes on. All routines are
deterministic: reduced row echelon form with leftmost pivot column and
smallest pivot row, so identical inputs produce identical outputs, bit for
bit.

Vectors are tuples of :class:`~nilcx.scalars.GaussianRational`; the Hermitian
form is ``hdot(u, v) = sum u_k * conj(v_k)`` in the given coordinates.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import NotSolvableError, PreconditionError
from .scalars import ONE, ZERO, GaussianRational

Vector = tuple[GaussianRational, ...]


def _as_scalar(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


class Matrix:
    """Immutable dense matrix, row-major."""

    __slots__ = ("rows",)

    rows: tuple[Vector, ...]

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(_as_scalar(x) for x in row) for row in rows)
        if rs:
            w = len(rs[0])
            if any(len(r) != w for r in rs):
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[ZERO] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(_as_scalar(x) for x in c) for c in cols]
        if not cols:
            return cls([])
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)])

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.rows)

    def conj_transpose(self) -> "Matrix":
        return Matrix(
            [
                [self.rows[i][j].conjugate() for i in range(self.nrows)]
                for j in range(self.ncols)
            ]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            ocols = other.ncols
            return Matrix(
                [
                    [
                        sum(
                            (self.rows[i][k] * other.rows[k][j] for k in range(self.ncols)),
                            start=ZERO,
                        )
                        for j in range(ocols)
                    ]
                    for i in range(self.nrows)
                ]
            )
        return NotImplemented

    def matvec(self, v: Sequence) -> Vector:
        v = tuple(_as_scalar(x) for x in v)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(
            sum((row[k] * v[k] for k in range(self.ncols)), start=ZERO)
            for row in self.rows
        )

    def scaled(self, c) -> "Matrix":
        c = _as_scalar(c)
        return Matrix([[c * x for x in row] for row in self.rows])

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + other.scaled(-1)

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.rows
        )
        return f"Matrix[{self.nrows}x{self.ncols}: {body}]"


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Vector) -> Vector:
    c = _as_scalar(c)
    return tuple(c * x for x in v)


def vzero(n: int) -> Vector:
    return (ZERO,) * n


def is_zero_vector(v: Vector) -> bool:
    return all(not x for x in v)


def hdot(u: Sequence, v: Sequence) -> GaussianRational:
    """Standard Hermitian form, linear in the first slot."""
    return sum(
        (_as_scalar(a) * _as_scalar(b).conjugate() for a, b in zip(u, v, strict=True)),
        start=ZERO,
    )


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Pivot choice is leftmost nonzero column, then smallest row index; no
    other freedom exists, so the result is a canonical form of the row
    space.
    """
    rows = [list(r) for r in m.rows]
    nr, nc = len(rows), m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Matrix(rows), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Deterministic basis of ker M, one vector per free column.

    The free-column unit convention: the vector for free column f has a 1 in
    slot f and zeros in all other free slots, with pivot slots filled from
    the reduced rows. Exact rank-nullity holds by construction.
    """
    red, pivots = rref(m)
    nc = m.ncols
    pivot_set = set(pivots)
    free = [c for c in range(nc) if c not in pivot_set]
    out: list[Vector] = []
    for f in free:
        v = [ZERO] * nc
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red.rows[r][f]
        out.append(tuple(v))
    return out


def _particular_solution(m: Matrix, b: Vector) -> Vector:
    aug = Matrix([list(row) + [bb] for row, bb in zip(m.rows, b, strict=True)])
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        raise NotSolvableError("not solvable")
    x = [ZERO] * m.ncols
    for r, p in enumerate(pivots):
        x[p] = red.rows[r][m.ncols]
    return tuple(x)


def solve_in_image(m: Matrix, b: Sequence) -> Vector:
    """Solve M x = b exactly, with x orthogonal to ker M.

    Raises :class:`NotSolvableError` ("not solvable") when b is outside the
    image. The orthogonality normalization makes the solution unique, which
    is what a Green's operator needs to be well defined.
    """
    b = tuple(_as_scalar(x) for x in b)
    x0 = _particular_solution(m, b)
    ker = kernel_basis(m)
    if not ker:
        return x0
    # project x0 onto span(ker) and subtract
    d = len(ker)
    gram = Matrix([[hdot(ker[q], ker[p]) for q in range(d)] for p in range(d)])
    rhs = tuple(hdot(x0, ker[p]) for p in range(d))
    coeffs = _particular_solution(gram, rhs)
    x = x0
    for q in range(d):
        x = vsub(x, vscale(coeffs[q], ker[q]))
    return x


def row_space_basis(vectors: Sequence[Vector]) -> list[Vector]:
    """Canonical echelon basis of the span of the given vectors."""
    vs = [v for v in vectors if not is_zero_vector(v)]
    if not vs:
        return []
    red, pivots = rref(Matrix(vs))
    return [red.rows[i] for i in range(len(pivots))]


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    if is_zero_vector(v):
        return True
    if not basis:
        return False
    return rank(Matrix(list(basis) + [v])) == rank(Matrix(list(basis)))


def coords_in_basis(v: Vector, basis: Sequence[Vector]) -> Vector:
    """Coefficients of v in the given basis; raises if v is outside."""
    m = Matrix.from_columns(basis)
    return solve_in_image(m, v)


def orthogonal_complement(
    s: Sequence[Vector], inside: Sequence[Vector]
) -> list[Vector]:
    """Basis of {v in span(inside) : <v, s> = 0 for all s in S}.

    Precondition: span(S) is contained in span(inside); violations raise
    :class:`PreconditionError`. The output together with a basis of span(S)
    spans span(inside), and the mutual Gram matrix is exactly zero.
    """
    inside_basis = row_space_basis(inside)
    for sv in s:
        if not in_span(sv, inside_basis):
            raise PreconditionError("span(S) not contained in span(inside)")
    if not inside_basis:
        return []
    if not s:
        return list(inside_basis)
    # coefficients x with v = sum x_j b_j, constrained by <v, s_i> = 0
    cons = Matrix(
        [[hdot(bj, si) for bj in inside_basis] for si in s]
    )
    coeffs = kernel_basis(cons)
    out = []
    for cv in coeffs:
        v = vzero(len(inside_basis[0]))
        for c, bj in zip(cv, inside_basis, strict=True):
            v = vadd(v, vscale(c, bj))
        out.append(v)
    return out


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise PreconditionError("matrix not square")
    n = m.nrows
    aug = Matrix(
        [
            list(m.rows[i]) + [ONE if j == i else ZERO for j in range(n)]
            for i in range(n)
        ]
    )
    red, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise NotSolvableError("matrix not invertible")
    return Matrix([red.rows[i][n:] for i in range(n)])


def gram_schmidt(vectors: Sequence[Vector]) -> list[Vector]:
    """Orthogonalize without normalizing; input must be independent."""
    out: list[Vector] = []
    for v in vectors:
        w = v
        for u in out:
            w = vsub(w, vscale(hdot(v, u) / hdot(u, u), u))
        if is_zero_vector(w):
            raise PreconditionError("gram_schmidt input not independent")
        out.append(w)
    return out
