"""Almost complex structures on real Lie algebras.

Integrability and abelianness tests, the J-ascending series with its
nilpotency verdict, adapted (1,0)-frames ordered along the ascending central
series, and an exact Chevalley-Eilenberg calculus on invariant forms with
(p,q) type decomposition.

Sign convention, pinned once for the whole package: for an invariant 1-form,
d a(X, Y) = -a([X, Y]). The structure-coefficient reconstruction self-check
would catch a global flip.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import (
    NotSolvableError,
    PreconditionError,
    SelfCheckError,
    ValidationError,
)
from .lie import Flag, LieAlgebra, ascending_series
from .linalg import (
    Matrix,
    Vector,
    coords_in_basis,
    in_span,
    inverse,
    kernel_basis,
    row_space_basis,
)
from .scalars import I as IMAG
from .scalars import ONE, ZERO, GaussianRational


def _conj_vector(v: Vector) -> Vector:
    return tuple(x.conjugate() for x in v)


class AlmostComplexStructure:
    """Rational operator J with J^2 = -I on the real basis."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: Matrix):
        m = matrix.nrows
        if matrix.ncols != m:
            raise ValidationError("J must be square")
        if m % 2 != 0:
            raise ValidationError("J needs an even-dimensional space")
        for row in matrix.rows:
            for x in row:
                if not x.is_real:
                    raise ValidationError("J must be real")
        if matrix * matrix != Matrix.identity(m).scaled(-1):
            raise ValidationError("J*J != -I")
        object.__setattr__(self, "dim", m)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("AlmostComplexStructure is immutable")

    @classmethod
    def from_images(cls, dim: int, images: dict[int, Vector]) -> "AlmostComplexStructure":
        """Build J from images of selected basis vectors, 0-based.

        Each given J e_i = v also forces J v = -e_i; together the
        constraints must determine J on the whole space. Incomplete or
        inconsistent data is rejected.
        """
        pairs: list[tuple[Vector, Vector]] = []
        for i, v in sorted(images.items()):
            e = tuple(ONE if c == i else ZERO for c in range(dim))
            v = tuple(GaussianRational(x) if not isinstance(x, GaussianRational) else x for x in v)
            pairs.append((e, v))
            pairs.append((v, tuple(-x for x in e)))
        # keep an independent set of domain vectors; a dependent constraint
        # must agree with what the kept ones already imply
        base: list[Vector] = []
        imgs: list[Vector] = []
        for d, r in pairs:
            if in_span(d, base):
                coeffs = coords_in_basis(d, base)
                implied = [ZERO] * dim
                for c, w in zip(coeffs, imgs, strict=True):
                    implied = [x + c * y for x, y in zip(implied, w)]
                if tuple(implied) != r:
                    raise ValidationError("J images inconsistent")
            else:
                base.append(d)
                imgs.append(r)
        if len(base) < dim:
            raise ValidationError("J images incomplete")
        dmat = Matrix.from_columns(base)
        rmat = Matrix.from_columns(imgs)
        return cls(rmat * inverse(dmat))

    def apply(self, v: Vector) -> Vector:
        return self.matrix.matvec(v)

    def __eq__(self, other):
        if not isinstance(other, AlmostComplexStructure):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AlmostComplexStructure(dim {self.dim})"


class InvariantForm:
    """Invariant (p,q)-form in a frame's coframe coordinates.

    Coefficients are stored on strictly increasing index tuples (I, K),
    meaning sum c_IK w^I ^ wb^K with the determinant convention for wedge
    evaluation. Indices are 0-based.
    """

    __slots__ = ("p", "q", "n", "coeffs")

    def __init__(self, p: int, q: int, n: int, coeffs: dict):
        clean = {}
        for (hol, anti), c in coeffs.items():
            hol, anti = tuple(hol), tuple(anti)
            if len(hol) != p or len(anti) != q:
                raise ValidationError("key arity does not match bidegree")
            if any(not (0 <= x < n) for x in hol + anti):
                raise ValidationError("frame index out of range")
            if any(hol[t] >= hol[t + 1] for t in range(len(hol) - 1)) or any(
                anti[t] >= anti[t + 1] for t in range(len(anti) - 1)
            ):
                raise ValidationError("indices must be strictly increasing")
            c = c if isinstance(c, GaussianRational) else GaussianRational(c)
            if c:
                clean[(hol, anti)] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("InvariantForm is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return (
            (self.p, self.q, self.n) == (other.p, other.q, other.n)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.q, self.n, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if (self.p, self.q, self.n) != (other.p, other.q, other.n):
            raise ValidationError("bidegree mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return InvariantForm(self.p, self.q, self.n, out)

    def __neg__(self):
        return self.scaled(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "InvariantForm":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return InvariantForm(
            self.p, self.q, self.n, {k: c * v for k, v in self.coeffs.items()}
        )

    def conjugate(self) -> "InvariantForm":
        # conj(w^I ^ wb^K) = wb^I ^ w^K = (-1)^{|I||K|} w^K ^ wb^I
        sign = -ONE if (self.p * self.q) % 2 else ONE
        return InvariantForm(
            self.q,
            self.p,
            self.n,
            {
                (anti, hol): sign * c.conjugate()
                for (hol, anti), c in self.coeffs.items()
            },
        )

    def wedge(self, other: "InvariantForm") -> "InvariantForm":
        if self.n != other.n:
            raise ValidationError("frame size mismatch")
        p, q = self.p + other.p, self.q + other.q
        out: dict = {}
        for (h1, a1), c1 in self.coeffs.items():
            for (h2, a2), c2 in other.coeffs.items():
                hs, hsign = _merge_sorted(h1, h2)
                if hs is None:
                    continue
                asrt, asign = _merge_sorted(a1, a2)
                if asrt is None:
                    continue
                # move other's hol block past self's anti block
                cross = -ONE if (other.p * self.q) % 2 else ONE
                key = (hs, asrt)
                val = c1 * c2 * cross
                if hsign < 0:
                    val = -val
                if asign < 0:
                    val = -val
                out[key] = out.get(key, ZERO) + val
        return InvariantForm(p, q, self.n, out)

    def items(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (hol, anti), c in self.items():
            legs = [f"w{i + 1}" for i in hol] + [f"wb{k + 1}" for k in anti]
            parts.append(f"({c})*" + "^".join(legs))
        return " + ".join(parts)

    def __repr__(self):
        return f"InvariantForm({self.p},{self.q}): {self}"


def _merge_sorted(a: tuple, b: tuple):
    """Merge two strictly increasing tuples; (None, 0) on collision.

    Returns the merged tuple and the sign of the permutation that sorts
    the concatenation.
    """
    merged = list(a + b)
    sign = 1
    # insertion sort with inversion counting; tuples are tiny
    for i in range(1, len(merged)):
        j = i
        while j > 0 and merged[j - 1] > merged[j]:
            merged[j - 1], merged[j] = merged[j], merged[j - 1]
            sign = -sign
            j -= 1
    for i in range(len(merged) - 1):
        if merged[i] == merged[i + 1]:
            return None, 0
    return tuple(merged), sign


def omega_form(n: int, i: int) -> InvariantForm:
    """The coframe (1,0)-form w^i, 0-based."""
    return InvariantForm(1, 0, n, {((i,), ()): ONE})


def omegabar_form(n: int, k: int) -> InvariantForm:
    """The coframe (0,1)-form wb^k, 0-based."""
    return InvariantForm(0, 1, n, {((), (k,)): ONE})


class ComplexFrame:
    """Basis X_1..X_n of the +i eigenspace of J, with exact dual coframe.

    ``levels``, when present, records the ascending-series level of each
    frame vector; vectors of the deepest level come first and the leading
    vectors of each level prefix span the complexified series member.
    """

    __slots__ = ("algebra", "n", "vectors", "levels", "_basis", "_basis_inv", "_brackets")

    def __init__(self, algebra: LieAlgebra, vectors, levels=None):
        vectors = tuple(tuple(x for x in v) for v in vectors)
        n = len(vectors)
        if algebra.dim != 2 * n:
            raise ValidationError("frame size must be half the real dimension")
        basis = Matrix.from_columns(
            list(vectors) + [_conj_vector(v) for v in vectors]
        )
        try:
            basis_inv = inverse(basis)
        except NotSolvableError:
            raise ValidationError("frame vectors do not span the complexification") from None
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "levels", tuple(levels) if levels is not None else None)
        object.__setattr__(self, "_basis", basis)
        object.__setattr__(self, "_basis_inv", basis_inv)
        object.__setattr__(self, "_brackets", {})

    def __setattr__(self, name, value):
        raise AttributeError("ComplexFrame is immutable")

    def omega(self, i: int) -> Vector:
        """Row covector of w^i in real coordinates."""
        return self._basis_inv.rows[i]

    def frame_vector(self, a: int) -> Vector:
        """Frame basis element by label: 0..n-1 are X, n..2n-1 are conj X."""
        if a < self.n:
            return self.vectors[a]
        return _conj_vector(self.vectors[a - self.n])

    def to_frame(self, v: Vector) -> Vector:
        """Coordinates of a complexified vector in (X_1..X_n, conj...)."""
        return self._basis_inv.matvec(v)

    def from_frame(self, coords: Vector) -> Vector:
        return self._basis.matvec(coords)

    def frame_bracket(self, a: int, b: int) -> Vector:
        """[Z_a, Z_b] in frame coordinates, cached."""
        key = (a, b)
        hit = self._brackets.get(key)
        if hit is None:
            w = self.algebra.bracket(self.frame_vector(a), self.frame_vector(b))
            hit = self.to_frame(w)
            self._brackets[key] = hit
        return hit

    def check_against(self, j: AlmostComplexStructure) -> None:
        for v in self.vectors:
            if j.matrix.matvec(v) != tuple(IMAG * x for x in v):
                raise SelfCheckError("frame vector is not a (1,0)-vector of J")


@dataclass(frozen=True)
class IntegrabilityResult:
    ok: bool
    witness_index: int | None = None
    witness_component: InvariantForm | None = None

    def __bool__(self):
        return self.ok


def eigen_frame(algebra: LieAlgebra, j: AlmostComplexStructure) -> ComplexFrame:
    """Deterministic (1,0)-frame from the +i eigenspace of J.

    No ordering along the ascending series; use adapted_frame for that.
    """
    m = algebra.dim
    mat = Matrix(
        [
            [j.matrix[r, c] - (IMAG if r == c else ZERO) for c in range(m)]
            for r in range(m)
        ]
    )
    vecs = kernel_basis(mat)
    if len(vecs) != m // 2:
        raise SelfCheckError("J eigenspace has wrong dimension")
    return ComplexFrame(algebra, vecs)


def evaluate_form(form: InvariantForm, frame_vectors: list[Vector]) -> GaussianRational:
    """Evaluate on vectors given in frame coordinates (length 2n)."""
    r = form.p + form.q
    if len(frame_vectors) != r:
        raise ValidationError("wrong number of arguments")
    total = ZERO
    for (hol, anti), c in form.coeffs.items():
        labels = list(hol) + [form.n + k for k in anti]
        acc = ZERO
        for perm in permutations(range(r)):
            sign = _perm_sign(perm)
            prod = ONE
            for a, b in enumerate(perm):
                prod = prod * frame_vectors[b][labels[a]]
                if not prod:
                    break
            if prod:
                acc = acc + (prod if sign > 0 else -prod)
        total = total + c * acc
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _eval_on_labels(form: InvariantForm, labels: tuple[int, ...]) -> GaussianRational:
    # evaluation on frame basis elements by label, with sorting sign
    seq = list(labels)
    sg = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sg = -sg
            j -= 1
    for i in range(len(seq) - 1):
        if seq[i] == seq[i + 1]:
            return ZERO
    hol = tuple(x for x in seq if x < form.n)
    anti = tuple(x - form.n for x in seq if x >= form.n)
    if len(hol) != form.p or len(anti) != form.q:
        return ZERO
    c = form.coeffs.get((hol, anti), ZERO)
    return c if sg > 0 else -c


def exterior_derivative(
    algebra: LieAlgebra, frame: ComplexFrame, form: InvariantForm
) -> dict[tuple[int, int], InvariantForm]:
    """Chevalley-Eilenberg differential, decomposed by bidegree.

    d a(Z_0,...,Z_r) = sum_{s<t} (-1)^{s+t} a([Z_s, Z_t], ...rest...),
    which for 1-forms is d a(X, Y) = -a([X, Y]). Only nonzero components
    are returned.
    """
    n = frame.n
    r = form.p + form.q + 1
    out: dict[tuple[int, int], dict] = {}
    for p2 in range(min(n, r) + 1):
        q2 = r - p2
        if q2 < 0 or q2 > n:
            continue
        comp: dict = {}
        for hol in combinations(range(n), p2):
            for anti in combinations(range(n), q2):
                labels = list(hol) + [n + k for k in anti]
                val = ZERO
                for s in range(r):
                    for t in range(s + 1, r):
                        w = frame.frame_bracket(labels[s], labels[t])
                        rest = [labels[u] for u in range(r) if u != s and u != t]
                        inner = ZERO
                        for c in range(2 * n):
                            if w[c]:
                                inner = inner + w[c] * _eval_on_labels(
                                    form, tuple([c] + rest)
                                )
                        if inner:
                            val = val + (-inner if (s + t) % 2 else inner)
                if val:
                    comp[(hol, anti)] = val
        if comp:
            out[(p2, q2)] = InvariantForm(p2, q2, n, comp)
    return out


def is_integrable(algebra: LieAlgebra, j: AlmostComplexStructure) -> IntegrabilityResult:
    """True iff no (1,0)-coframe differential has a (0,2) part.

    On failure the witness carries the offending coframe index and the
    nonzero (0,2) component.
    """
    frame = eigen_frame(algebra, j)
    for i in range(frame.n):
        comps = exterior_derivative(algebra, frame, omega_form(frame.n, i))
        bad = comps.get((0, 2))
        if bad is not None and not bad.is_zero():
            return IntegrabilityResult(False, i, bad)
    return IntegrabilityResult(True)


def is_abelian(algebra: LieAlgebra, j: AlmostComplexStructure) -> bool:
    """[J e_i, J e_j] = [e_i, e_j] for all pairs.

    The bidegree characterization (every d w^i is pure (1,1)) is computed
    independently; disagreement raises a self-check error.
    """
    by_bracket = True
    m = algebra.dim
    jm = j.matrix
    for a in range(m):
        for b in range(a + 1, m):
            lhs = algebra.bracket(jm.column(a), jm.column(b))
            if lhs != algebra.bracket_basis(a, b):
                by_bracket = False
                break
        if not by_bracket:
            break
    frame = eigen_frame(algebra, j)
    by_type = True
    for i in range(frame.n):
        comps = exterior_derivative(algebra, frame, omega_form(frame.n, i))
        if (2, 0) in comps or (0, 2) in comps:
            by_type = False
            break
    if by_bracket != by_type:
        raise SelfCheckError("abelianness criteria disagree")
    return by_bracket


def j_ascending_series(
    algebra: LieAlgebra, j: AlmostComplexStructure
) -> tuple[Flag, bool]:
    """J-compatible ascending series and whether it exhausts the algebra.

    a_l = {X : [X, g] in a_{l-1} and [JX, g] in a_{l-1}}; the structure is
    nilpotent exactly when some a_k is the whole algebra.
    """
    from .lie import _annihilator_rows

    m = algebra.dim
    levels: list[list[Vector]] = []
    current: list[Vector] = []
    while True:
        ann = _annihilator_rows(current, m)
        rows: list[Vector] = []
        for jdx in range(m):
            adj = algebra.ad_matrix(jdx)
            adj_j = adj * j.matrix
            for nrow in ann:
                for mat in (adj, adj_j):
                    rows.append(
                        tuple(
                            sum(
                                (nrow[k] * mat[k, col] for k in range(m)),
                                start=ZERO,
                            )
                            for col in range(m)
                        )
                    )
        nxt = kernel_basis(Matrix(rows)) if rows else [algebra.basis_vector(i) for i in range(m)]
        nxt = row_space_basis(nxt)
        if len(nxt) == len(current):
            return Flag(tuple(tuple(lv) for lv in levels)), len(current) == m
        current = nxt
        levels.append(current)
        if len(current) == m:
            return Flag(tuple(tuple(lv) for lv in levels)), True


def adapted_frame(algebra: LieAlgebra, j: AlmostComplexStructure) -> ComplexFrame:
    """Deterministic (1,0)-frame ordered along the ascending series.

    Walks the series from the center outward; at each level pairs the first
    echelon basis vector b outside the current span with Jb and emits
    X = b - i Jb. Requires J to preserve every series member.
    """
    flag = ascending_series(algebra)
    for ell in range(1, flag.depth + 1):
        lv = list(flag.level(ell))
        for b in lv:
            if not in_span(j.matrix.matvec(b), lv):
                raise PreconditionError("J does not preserve ascending series")
    chosen: list[Vector] = []
    span: list[Vector] = []
    levels: list[int] = []
    for ell in range(1, flag.depth + 1):
        for b in flag.level(ell):
            if in_span(b, span):
                continue
            jb = j.matrix.matvec(b)
            if in_span(jb, span + [b]):
                raise SelfCheckError("J pairs collapse inside a level")
            chosen.append(tuple(x - IMAG * y for x, y in zip(b, jb)))
            span.extend([b, jb])
            levels.append(ell)
    frame = ComplexFrame(algebra, chosen, levels=levels)
    frame.check_against(j)
    return frame


def structure_coefficients(
    algebra: LieAlgebra, j: AlmostComplexStructure, frame: ComplexFrame
) -> dict[tuple[int, int, int], GaussianRational]:
    """Coefficients A with d w^i = sum_jk A[i,j,k] w^j ^ wb^k, 0-based.

    Computed by direct bracket evaluation, then verified against the full
    exterior derivative; a (2,0) or (0,2) remainder means the structure is
    not abelian and is reported as such.
    """
    n = frame.n
    coeffs: dict[tuple[int, int, int], GaussianRational] = {}
    for jj in range(n):
        for k in range(n):
            w = algebra.bracket(frame.vectors[jj], _conj_vector(frame.vectors[k]))
            t = frame.to_frame(w)
            for i in range(n):
                if t[i]:
                    coeffs[(i, jj, k)] = -t[i]
    for i in range(n):
        comps = exterior_derivative(algebra, frame, omega_form(n, i))
        for (p, q), comp in comps.items():
            if (p, q) not in ((1, 1),) and not comp.is_zero():
                raise ValidationError("nonzero (2,0) or (0,2) part")
        got = comps.get((1, 1), InvariantForm(1, 1, n, {}))
        want = InvariantForm(
            1,
            1,
            n,
            {
                ((jj,), (k,)): c
                for (ii, jj, k), c in coeffs.items()
                if ii == i
            },
        )
        if got != want:
            raise SelfCheckError("structure coefficients fail reconstruction")
    return coeffs


def antiholomorphic_differentials(
    algebra: LieAlgebra, frame: ComplexFrame
) -> list[InvariantForm]:
    """d wb^l as (1,1)-forms; the (0,2) parts must vanish (abelian case)."""
    out = []
    for ell in range(frame.n):
        comps = exterior_derivative(algebra, frame, omegabar_form(frame.n, ell))
        bad = comps.get((0, 2))
        if bad is not None and not bad.is_zero():
            raise ValidationError("nonzero (0,2) part in a conjugate coframe differential")
        out.append(comps.get((1, 1), InvariantForm(1, 1, frame.n, {})))
    return out


def check_dbar_closed_conjugates(
    algebra: LieAlgebra, j: AlmostComplexStructure, frame: ComplexFrame
) -> bool:
    """Every conjugate coframe form has d-image with no (0,2) part."""
    for ell in range(frame.n):
        comps = exterior_derivative(algebra, frame, omegabar_form(frame.n, ell))
        bad = comps.get((0, 2))
        if bad is not None and not bad.is_zero():
            return False
    return True
