"""Deformations of abelian complex structures by power series.

The deformation parameter space is the degree-1 cohomology of the vector
valued conjugate-form complex. A series ``Phi(t)`` starts with the harmonic
basis in its linear term and extends order by order through

    phi_r = -1/2 * adjoint(green(sum_{s} {phi_s, phi_{r-s}}))

where ``{.,.}`` is the graded bracket implemented by :func:`schouten`. All
coefficients are exact, so the truncated Maurer-Cartan residual and the
obstruction polynomials are computed without rounding. Evaluating a series
at a parameter point and conjugating the eigenspace splitting produces a
genuine almost complex structure on the same algebra, which the classifier
then inspects with the usual integrability and bracket tests; nothing about
the deformed structure is inferred from the series itself.

Hand-fed instances of :class:`DeformedStructure` (a structure obtained some
other way, wrapped without provenance) are accepted by the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cxs import (
    AlmostComplexStructure,
    InvariantForm,
    antiholomorphic_differentials,
    is_abelian,
    is_integrable,
    j_ascending_series,
)
from .dolbeault import DolbeaultComplex, VectorForm
from .errors import NotSolvableError, PreconditionError, SelfCheckError, ValidationError
from .lie import LieAlgebra
from .linalg import Matrix, Vector, inverse, kernel_basis
from .poly import (
    Monomial,
    Poly,
    coerce_point,
    mono_add,
    mono_degree,
    mono_eval,
)
from .scalars import ZERO, GaussianRational

HALF = GaussianRational(Fraction(1, 2))


def _contraction_table(dc: DolbeaultComplex) -> dict:
    """table[(l, a)][q] = c  where  d wb^l = sum_q c w^a ^ wb^q.

    Contracting a frame vector into a conjugate coframe differential only
    ever meets the holomorphic leg, so this table is the whole bracket
    ingredient list.
    """
    table: dict = {}
    for ell, form in enumerate(antiholomorphic_differentials(dc.algebra, dc.frame)):
        for (hol, anti), c in form.coeffs.items():
            table.setdefault((ell, hol[0]), {})[anti[0]] = c
    return table


def _wedge_pair(i: int, q: int):
    """Sorted key and sign for wb^i ^ wb^q, or None when they collide."""
    if i == q:
        return None
    if i < q:
        return (i, q), False
    return (q, i), True


def _schouten_core(dc: DolbeaultComplex, table: dict, mu: VectorForm, nu: VectorForm) -> VectorForm:
    out: dict = {}
    for ((i,), a), cm in mu.coeffs.items():
        for ((j,), b), cn in nu.coeffs.items():
            c = cm * cn
            for q, coef in table.get((i, b), {}).items():
                hit = _wedge_pair(j, q)
                if hit is None:
                    continue
                pair, flip = hit
                val = c * coef
                key = (pair, a)
                out[key] = out.get(key, ZERO) + (-val if flip else val)
            for q, coef in table.get((j, a), {}).items():
                hit = _wedge_pair(i, q)
                if hit is None:
                    continue
                pair, flip = hit
                val = c * coef
                key = (pair, b)
                out[key] = out.get(key, ZERO) + (-val if flip else val)
    return VectorForm(dc.frame, 2, out)


def schouten(dc: DolbeaultComplex, mu: VectorForm, nu: VectorForm) -> VectorForm:
    """Graded bracket of two degree-1 vector forms; symmetric, degree 2.

    {wb^i (x) A, wb^j (x) B} = wb^j ^ (B _| d wb^i) (x) A
                             + wb^i ^ (A _| d wb^j) (x) B
    with ``_|`` the contraction of a frame vector into the holomorphic leg.
    """
    if mu.degree != 1 or nu.degree != 1:
        raise PreconditionError("bracket arguments must have degree 1")
    dc._own(mu)
    dc._own(nu)
    return _schouten_core(dc, _contraction_table(dc), mu, nu)


def _coform_core(dc: DolbeaultComplex, table: dict, mu: VectorForm, ell: int, weight) -> dict:
    out: dict = {}
    for ((i,), a), cm in mu.coeffs.items():
        for q, coef in table.get((ell, a), {}).items():
            hit = _wedge_pair(i, q)
            if hit is None:
                continue
            pair, flip = hit
            val = cm * coef * weight
            key = ((), pair)
            out[key] = out.get(key, ZERO) + (-val if flip else val)
    return out


def schouten_with_coform(dc: DolbeaultComplex, mu: VectorForm, cof: InvariantForm) -> InvariantForm:
    """Bracket of a degree-1 vector form against a scalar (0,1)-form.

    The vector leg contracts into the coform's differential:
    {wb^i (x) A, wb} = wb^i ^ (A _| d wb), a scalar (0,2)-form. Vanishing
    against every conjugate coframe form is the infinitesimal version of
    staying abelian.
    """
    if mu.degree != 1:
        raise PreconditionError("vector part must have degree 1")
    dc._own(mu)
    if cof.p != 0 or cof.q != 1 or cof.n != dc.n:
        raise ValidationError("coform must be a (0,1)-form on the same frame")
    table = _contraction_table(dc)
    out: dict = {}
    for (_, anti), cw in cof.coeffs.items():
        for key, val in _coform_core(dc, table, mu, anti[0], cw).items():
            out[key] = out.get(key, ZERO) + val
    return InvariantForm(0, 2, dc.n, out)


@dataclass(frozen=True, eq=False)
class DeformationSeries:
    """Truncated deformation series Phi(t) = sum_m t^m phi_m.

    ``coeffs`` maps exponent tuples (one slot per parameter) to degree-1
    vector forms; zero coefficients are omitted. Linear coefficients are
    harmonic, higher ones orthogonal to every harmonic form. ``basis_gram``
    records the inner products of the unnormalized parameter directions.
    """

    dolbeault: DolbeaultComplex
    params: int
    order: int
    coeffs: dict
    basis_gram: Matrix

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("order must be at least 1")
        for mono, f in self.coeffs.items():
            if len(mono) != self.params:
                raise ValidationError("monomial arity does not match parameter count")
            d = mono_degree(mono)
            if not 1 <= d <= self.order:
                raise ValidationError("coefficient degree outside series order")
            if f.degree != 1:
                raise ValidationError("series coefficients must have degree 1")
            self.dolbeault._own(f)

    def by_degree(self, r: int) -> list[tuple[Monomial, VectorForm]]:
        return sorted(
            ((m, f) for m, f in self.coeffs.items() if mono_degree(m) == r),
            key=lambda kv: kv[0],
        )

    def evaluate(self, t_point) -> VectorForm:
        """Phi at a parameter point, a single degree-1 vector form."""
        pt = coerce_point(t_point, self.params)
        out = self.dolbeault.zero_form(1)
        for m, f in sorted(self.coeffs.items()):
            w = mono_eval(m, pt)
            if w:
                out = out + f.scaled(w)
        return out


@dataclass(frozen=True)
class ObstructionSet:
    """One polynomial per degree-2 harmonic direction, truncated at order.

    A parameter point is unobstructed (to this order) exactly when every
    polynomial vanishes there.
    """

    params: int
    order: int
    polys: tuple

    def vanishes_at(self, t_point) -> bool:
        return all(not p.evaluate(t_point) for p in self.polys)


@dataclass(frozen=True, eq=False)
class DeformedStructure:
    """An almost complex structure J obtained by deforming, plus provenance.

    ``base_j`` and ``series`` stay None for structures wrapped from outside
    a deformation run; the classifier only looks at ``j_new``.
    """

    t_point: tuple
    j_new: AlmostComplexStructure
    algebra: LieAlgebra
    base_j: AlmostComplexStructure | None = None
    series: DeformationSeries | None = None

    @property
    def provenance(self):
        order = self.series.order if self.series is not None else None
        return (self.algebra, self.base_j, self.series, order)


@dataclass(frozen=True)
class DeformationReport:
    integrable: bool
    abelian: bool
    nilpotent: bool


def kuranishi_series(dc: DolbeaultComplex, order: int = 6) -> DeformationSeries:
    """Build the deformation series to the requested total degree.

    The linear term runs over the degree-1 harmonic basis, one parameter
    per basis form. Each higher coefficient applies the Green operator and
    the adjoint to the accumulated bracket of lower terms; the two operator
    orders are computed separately and must agree, which exercises the
    commutation of the Green operator with the adjoint on every term.
    """
    if order < 1:
        raise PreconditionError("order must be at least 1")
    coh = dc.cohomology(1)
    nparams = coh.dimension
    table = _contraction_table(dc)
    coeffs: dict = {}
    by_degree: dict = {1: []}
    for k, h in enumerate(coh.harmonic_basis):
        mono = tuple(1 if j == k else 0 for j in range(nparams))
        coeffs[mono] = h
        by_degree[1].append((mono, h))
    for r in range(2, order + 1):
        acc: dict = {}
        for s in range(1, r):
            for ma, fa in by_degree[s]:
                for mb, fb in by_degree[r - s]:
                    br = _schouten_core(dc, table, fa, fb)
                    if br.is_zero():
                        continue
                    m = mono_add(ma, mb)
                    acc[m] = acc[m] + br if m in acc else br
        fresh = []
        for m in sorted(acc):
            first = dc.dbar_adjoint(dc.green(acc[m]))
            second = dc.green(dc.dbar_adjoint(acc[m]))
            if first != second:
                raise SelfCheckError("Green operator does not commute with the adjoint")
            phi = first.scaled(-HALF)
            if not phi.is_zero():
                coeffs[m] = phi
                fresh.append((m, phi))
        by_degree[r] = fresh
    return DeformationSeries(
        dolbeault=dc,
        params=nparams,
        order=order,
        coeffs=coeffs,
        basis_gram=coh.gram,
    )


def _bracket_convolution(series: DeformationSeries, cap: int) -> dict:
    """{Phi, Phi} as a dict monomial -> degree-2 form, degrees above cap dropped.

    Every coefficient of total degree <= cap is complete: only pairs of
    series terms contribute, and both factors are present up to the order.
    """
    dc = series.dolbeault
    table = _contraction_table(dc)
    entries = sorted(series.coeffs.items())
    out: dict = {}
    for ma, fa in entries:
        for mb, fb in entries:
            m = mono_add(ma, mb)
            if mono_degree(m) > cap:
                continue
            br = _schouten_core(dc, table, fa, fb)
            if br.is_zero():
                continue
            out[m] = out[m] + br if m in out else br
    return out


def obstructions(series: DeformationSeries) -> ObstructionSet:
    """Pair {Phi, Phi} against the degree-2 harmonic basis.

    The resulting polynomials vanish identically exactly when the series
    satisfies the structure equation to its order; their common zero locus
    picks out the parameter points that still deform after truncation.
    """
    dc = series.dolbeault
    conv = _bracket_convolution(series, series.order + 1)
    polys = []
    for gamma in dc.cohomology(2).harmonic_basis:
        pc = {}
        for m, v in conv.items():
            c = dc.inner_product(v, gamma)
            if c:
                pc[m] = c
        polys.append(Poly(series.params, pc))
    return ObstructionSet(series.params, series.order, tuple(polys))


def _owned_series(dc: DolbeaultComplex, series: DeformationSeries):
    if series.dolbeault is not dc:
        raise ValidationError("series does not belong to this complex")


def mc_residual(dc: DolbeaultComplex, series: DeformationSeries, t_point) -> VectorForm:
    """dbar Phi(t) + 1/2 {Phi(t), Phi(t)}, truncated past total degree order.

    The bracket convolution is cut at the series order: beyond it there is
    no coefficient left to absorb the non-harmonic part, so degrees above
    order say nothing about the truncated series. Zero exactly when the
    evaluated series solves the structure equation to the stated order at
    that point.
    """
    _owned_series(dc, series)
    pt = coerce_point(t_point, series.params)
    acc = dc.zero_form(2)
    for m, f in sorted(series.coeffs.items()):
        w = mono_eval(m, pt)
        if w:
            acc = acc + dc.dbar(f).scaled(w)
    for m, v in sorted(_bracket_convolution(series, series.order).items()):
        w = mono_eval(m, pt)
        if w:
            acc = acc + v.scaled(w * HALF)
    return acc


def deform_structure(dc: DolbeaultComplex, series: DeformationSeries, t_point) -> DeformedStructure:
    """Almost complex structure whose (0,1)-space is spanned by Xb_j + Phi(Xb_j).

    Fails when that space meets its conjugate, which happens for parameter
    values too large for the eigenspace splitting to survive. At t = 0 the
    base structure is reproduced exactly.
    """
    _owned_series(dc, series)
    pt = coerce_point(t_point, series.params)
    phi = series.evaluate(pt)
    n = dc.n
    frame = dc.frame
    cols = []
    for jj in range(n):
        w = list(frame.frame_vector(n + jj))
        for a in range(n):
            c = phi.coeffs.get(((jj,), a))
            if c:
                xa = frame.vectors[a]
                w = [wi + c * xi for wi, xi in zip(w, xa)]
        cols.append(tuple(w))
    conj_cols = [tuple(x.conjugate() for x in w) for w in cols]
    basis = Matrix.from_columns(conj_cols + cols)
    try:
        binv = inverse(basis)
    except NotSolvableError:
        raise PreconditionError(
            "parameter too large: deformed (0,1)-space degenerate"
        ) from None
    eig = GaussianRational(0, 1)
    scaled_rows = [
        [(eig if i < n else -eig) * x for x in binv.rows[i]] for i in range(2 * n)
    ]
    j_new = AlmostComplexStructure(basis * Matrix(scaled_rows))
    return DeformedStructure(
        t_point=pt, j_new=j_new, algebra=dc.algebra, base_j=dc.j, series=series
    )


def classify_deformation(algebra: LieAlgebra, deformed: DeformedStructure) -> DeformationReport:
    """Integrability, abelianness and series nilpotency of the new structure.

    Each answer comes from the direct test on the finished operator, never
    from properties of the series that produced it.
    """
    j = deformed.j_new
    integrable = bool(is_integrable(algebra, j))
    abelian = is_abelian(algebra, j)
    _, nilpotent = j_ascending_series(algebra, j)
    return DeformationReport(integrable=integrable, abelian=abelian, nilpotent=nilpotent)


def infinitesimal_abelian_locus(dc: DolbeaultComplex) -> list[Vector]:
    """Directions in degree-1 cohomology whose coform brackets all vanish.

    Returns coordinate vectors with respect to the harmonic basis; the
    span is the tangent cone of the abelian deformations to first order.
    """
    coh = dc.cohomology(1)
    table = _contraction_table(dc)
    rows_by_key: dict = {}
    for idx, h in enumerate(coh.harmonic_basis):
        for ell in range(dc.n):
            for (_, pair), c in _coform_core(dc, table, h, ell, 1).items():
                row = rows_by_key.setdefault((ell, pair), [ZERO] * coh.dimension)
                row[idx] = row[idx] + c
    if rows_by_key:
        m = Matrix([rows_by_key[k] for k in sorted(rows_by_key)])
    else:
        m = Matrix.zero(1, coh.dimension)
    return kernel_basis(m)


def graded_center(dc: DolbeaultComplex) -> list[Vector]:
    """Elements bracketing to zero against every vector and coframe form.

    An element is a pair (vector part, coform part); the returned vectors
    have 2n slots, frame coefficients of the vector part first, conjugate
    coframe coefficients of the coform part last. Vector-vector and
    coform-coform brackets vanish identically, so only the mixed
    contractions constrain anything.
    """
    n = dc.n
    table = _contraction_table(dc)
    rows_by_key: dict = {}
    for (ell, a), qs in table.items():
        for q, c in qs.items():
            row = rows_by_key.setdefault(("v", ell, q), [ZERO] * (2 * n))
            row[a] = row[a] + c
            row = rows_by_key.setdefault(("w", a, q), [ZERO] * (2 * n))
            row[n + ell] = row[n + ell] + c
    if rows_by_key:
        m = Matrix([rows_by_key[k] for k in sorted(rows_by_key)])
    else:
        m = Matrix.zero(1, 2 * n)
    return kernel_basis(m)
