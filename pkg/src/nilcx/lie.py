"""Real nilpotent Lie algebras from rational structure constants.

An algebra is given on a basis e_1..e_m by the nonzero brackets
[e_i, e_j] = sum_k c^k_ij e_k with i < j; antisymmetric closure is implicit.
Structure constants are rational: the algebra is real, and complexification
is the business of the complex-structure layer.

Basis indices are 1-based in the public constructor and in error messages,
matching the e_i naming convention; vectors are coordinate tuples over
:class:`~nilcx.scalars.GaussianRational` (with zero imaginary part for real
data) so the same linear algebra serves both the real and complexified
pictures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, SelfCheckError, ValidationError
from .linalg import (
    Matrix,
    Vector,
    coords_in_basis,
    in_span,
    is_zero_vector,
    kernel_basis,
    rank,
    row_space_basis,
    vadd,
    vscale,
    vzero,
)
from .scalars import ONE, ZERO, GaussianRational


class LieAlgebra:
    """Finite-dimensional real Lie algebra with rational constants."""

    __slots__ = ("dim", "name", "_c")

    def __init__(self, dim: int, brackets, name: str = ""):
        """brackets: {(i, j): {k: rational}} with 1-based i < j."""
        if dim < 0:
            raise ValidationError("dimension must be nonnegative")
        c: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), comps in brackets.items():
            if not (1 <= i < j <= dim):
                raise ValidationError(
                    f"bracket key ({i},{j}) must satisfy 1 <= i < j <= dim"
                )
            row: dict[int, Fraction] = {}
            for k, coef in comps.items():
                if not (1 <= k <= dim):
                    raise ValidationError(f"bracket target e{k} out of range")
                f = Fraction(coef)
                if f != 0:
                    row[k - 1] = f
            if row:
                c[(i - 1, j - 1)] = row
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, nm, value):
        raise AttributeError("LieAlgebra is immutable")

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c^k_ij, 0-based, antisymmetry applied."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self._c.get((i, j), {}).get(k, Fraction(0))
        return -self._c.get((j, i), {}).get(k, Fraction(0))

    def bracket_table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Nonzero brackets with 1-based indices, for display and files."""
        return {
            (i + 1, j + 1): {k + 1: v for k, v in sorted(comps.items())}
            for (i, j), comps in sorted(self._c.items())
        }

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[e_i, e_j] as a coordinate vector, 0-based indices."""
        v = [ZERO] * self.dim
        if i < j:
            for k, coef in self._c.get((i, j), {}).items():
                v[k] = GaussianRational(coef)
        elif j < i:
            for k, coef in self._c.get((j, i), {}).items():
                v[k] = GaussianRational(-coef)
        return tuple(v)

    def bracket(self, u, v) -> Vector:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = [ZERO] * self.dim
        for (i, j), comps in self._c.items():
            f = u[i] * v[j] - u[j] * v[i]
            if f:
                for k, coef in comps.items():
                    out[k] = out[k] + f * coef
        return tuple(out)

    def ad_matrix(self, i: int) -> Matrix:
        """Matrix of X -> [e_i, X], 0-based."""
        cols = [self.bracket_basis(i, j) for j in range(self.dim)]
        return Matrix.from_columns(cols) if cols else Matrix([])

    def basis_vector(self, i: int) -> Vector:
        v = [ZERO] * self.dim
        v[i] = ONE
        return tuple(v)

    def __repr__(self):
        label = self.name or f"dim {self.dim}"
        return f"LieAlgebra({label}, {len(self._c)} brackets)"


@dataclass(frozen=True)
class Flag:
    """Increasing chain of rational subspaces 0 < V_1 < ... < V_k = g.

    Each level is a canonical echelon basis; ``dims`` lists the nonzero
    levels' dimensions.
    """

    levels: tuple[tuple[Vector, ...], ...]
    dims: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(len(lv) for lv in self.levels))

    def level(self, ell: int) -> tuple[Vector, ...]:
        """V_ell, 1-based; level(0) is the zero subspace."""
        if ell == 0:
            return ()
        return self.levels[ell - 1]

    @property
    def depth(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    step: int | None
    errors: tuple[str, ...]


def _annihilator_rows(basis: list[Vector], dim: int) -> list[Vector]:
    # rows N with span(basis) = ker N; for an empty basis that is N = I
    if not basis:
        return [tuple(ONE if c == r else ZERO for c in range(dim)) for r in range(dim)]
    return kernel_basis(Matrix(basis))


def _ascending_levels(a: LieAlgebra) -> tuple[list[list[Vector]], bool]:
    """Levels of the ascending central series and whether it reached g."""
    levels: list[list[Vector]] = []
    current: list[Vector] = []
    while True:
        ann = _annihilator_rows(current, a.dim)
        rows: list[Vector] = []
        for j in range(a.dim):
            adj = a.ad_matrix(j)
            for n in ann:
                # row of n . ad_j as a linear condition on X
                rows.append(
                    tuple(
                        sum((n[k] * adj[k, col] for k in range(a.dim)), start=ZERO)
                        for col in range(a.dim)
                    )
                )
        if not rows:
            nxt = [a.basis_vector(i) for i in range(a.dim)]
        else:
            nxt = kernel_basis(Matrix(rows))
        nxt = row_space_basis(nxt)
        if len(nxt) == len(current):
            return levels, len(current) == a.dim
        current = nxt
        levels.append(current)
        if len(current) == a.dim:
            return levels, True


def validate_lie(a: LieAlgebra) -> ValidationReport:
    """Check Jacobi on all basis triples and nilpotency.

    Antisymmetry holds by construction. On success the report carries the
    nilpotency step k (ascending series reaches g in k steps).
    """
    errors: list[str] = []
    basis = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            for k in range(j + 1, a.dim):
                s = vadd(
                    vadd(
                        a.bracket(a.bracket(basis[i], basis[j]), basis[k]),
                        a.bracket(a.bracket(basis[j], basis[k]), basis[i]),
                    ),
                    a.bracket(a.bracket(basis[k], basis[i]), basis[j]),
                )
                if not is_zero_vector(s):
                    errors.append(f"jacobi violated at ({i + 1},{j + 1},{k + 1})")
    step = None
    if not errors:
        levels, reached = _ascending_levels(a)
        if reached:
            step = len(levels)
        else:
            errors.append("not nilpotent")
    return ValidationReport(ok=not errors, step=step, errors=tuple(errors))


def ascending_series(a: LieAlgebra) -> Flag:
    """The ascending central series as a flag, g_1 = center, top = g.

    Each successive quotient is re-checked to be abelian in the quotient;
    a failure there is a self-check error, not bad input.
    """
    report = validate_lie(a)
    if not report.ok:
        raise ValidationError("; ".join(report.errors))
    levels, _ = _ascending_levels(a)
    for ell, lv in enumerate(levels):
        below = levels[ell - 1] if ell > 0 else []
        for p in range(len(lv)):
            for q in range(p + 1, len(lv)):
                w = a.bracket(lv[p], lv[q])
                if not is_zero_vector(w) and not in_span(w, below):
                    raise SelfCheckError(
                        "ascending series quotient not abelian"
                    )
    return Flag(tuple(tuple(lv) for lv in levels))


def center(a: LieAlgebra) -> list[Vector]:
    """Basis of {X : [X, g] = 0}."""
    if a.dim == 0:
        return []
    rows = []
    for j in range(a.dim):
        adj = a.ad_matrix(j)
        # condition [e_j, X] = 0, one row per output coordinate
        rows.extend(adj.rows)
    sol = kernel_basis(Matrix(rows))
    return row_space_basis(sol)


def complement_indices(subspace: list[Vector], dim: int) -> list[int]:
    """Standard basis vectors extending the subspace to the whole space.

    Greedy echelon extension in index order; deterministic.
    """
    chosen: list[int] = []
    base = list(subspace)
    r = rank(Matrix(base)) if base else 0
    for j in range(dim):
        ej = tuple(ONE if c == j else ZERO for c in range(dim))
        cand = base + [ej]
        if rank(Matrix(cand)) > r:
            base = cand
            r += 1
            chosen.append(j)
        if r == dim:
            break
    return chosen


def quotient(a: LieAlgebra, v: list[Vector]) -> LieAlgebra:
    """Quotient algebra g/V for an ideal V, on a complementary basis.

    Raises "not an ideal" when [g, V] is not contained in span(V). The
    result's Jacobi identity is re-verified.
    """
    vbasis = row_space_basis(v)
    for i in range(a.dim):
        for w in vbasis:
            bw = a.bracket(a.basis_vector(i), w)
            if not in_span(bw, vbasis):
                raise ValidationError("not an ideal")
    comp = complement_indices(vbasis, a.dim)
    qdim = len(comp)
    # coordinates: full basis is (complement e_j's, then V-basis)
    full = [a.basis_vector(j) for j in comp] + list(vbasis)
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for p in range(qdim):
        for q in range(p + 1, qdim):
            w = a.bracket(a.basis_vector(comp[p]), a.basis_vector(comp[q]))
            if is_zero_vector(w):
                continue
            coords = coords_in_basis(w, full)
            comps: dict[int, Fraction] = {}
            for t in range(qdim):
                x = coords[t]
                if x:
                    if not x.is_real:
                        raise SelfCheckError("quotient constants not real")
                    comps[t + 1] = x.re
            if comps:
                brackets[(p + 1, q + 1)] = comps
    name = f"{a.name}/ideal" if a.name else "quotient"
    out = LieAlgebra(qdim, brackets, name=name)
    rep = validate_lie(out)
    if any(e.startswith("jacobi") for e in rep.errors):
        raise SelfCheckError("quotient violates Jacobi")
    return out
