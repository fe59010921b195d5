"""The dbar complex of vector-valued antiholomorphic forms.

Chains in degree k are sums of wb^I (x) X_a with |I| = k, over the adapted
(1,0)-frame of an abelian complex structure; the chain basis is declared
orthonormal. On a (1,0)-vector, dbar V = sum_j wb^j (x) [conj X_j, V]^{1,0};
the degree-k extension is dbar(wb^I (x) V) = (-1)^k wb^I ^ dbar V. The
adjoint is the conjugate transpose in the orthonormal coordinates, the
Laplacian is dbar dbar* + dbar* dbar, and the Green's operator inverts the
Laplacian on the orthogonal complement of its kernel.

Everything is exact and deterministic; the differential, Laplacian, and
harmonic-space caches are written once per degree and never mutated after.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .cxs import AlmostComplexStructure, ComplexFrame, adapted_frame, is_abelian
from .errors import PreconditionError, SelfCheckError, ValidationError
from .lie import LieAlgebra
from .linalg import (
    Matrix,
    Vector,
    gram_schmidt,
    hdot,
    is_zero_vector,
    kernel_basis,
    orthogonal_complement,
    row_space_basis,
    solve_in_image,
)
from .scalars import ONE, ZERO, GaussianRational


class VectorForm:
    """(0,k)-form with values in the (1,0)-space, in frame coordinates.

    Coefficients live on keys ``(anti, a)`` where ``anti`` is a strictly
    increasing 0-based index tuple of length ``degree`` and ``a`` indexes
    the frame vector. Zero coefficients are dropped on construction.
    """

    __slots__ = ("frame", "degree", "coeffs")

    def __init__(self, frame: ComplexFrame, degree: int, coeffs: dict):
        n = frame.n
        clean = {}
        for (anti, a), c in coeffs.items():
            anti = tuple(anti)
            if len(anti) != degree:
                raise ValidationError("key arity does not match degree")
            if any(not (0 <= x < n) for x in anti):
                raise ValidationError("frame index out of range")
            if any(anti[t] >= anti[t + 1] for t in range(len(anti) - 1)):
                raise ValidationError("indices must be strictly increasing")
            if not (0 <= a < n):
                raise ValidationError("vector index out of range")
            c = c if isinstance(c, GaussianRational) else GaussianRational(c)
            if c:
                clean[(anti, a)] = c
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("VectorForm is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, VectorForm):
            return NotImplemented
        return (
            self.degree == other.degree
            and _same_frame(self.frame, other.frame)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValidationError("degree mismatch")
        if not _same_frame(self.frame, other.frame):
            raise ValidationError("frame mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return VectorForm(self.frame, self.degree, out)

    def __neg__(self):
        return self.scaled(-ONE)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "VectorForm":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return VectorForm(
            self.frame, self.degree, {k: c * v for k, v in self.coeffs.items()}
        )

    def items(self):
        return sorted(self.coeffs.items())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (anti, a), c in self.items():
            legs = "^".join(f"wb{i + 1}" for i in anti)
            head = f"({c})*{legs} ox " if legs else f"({c})*"
            parts.append(head + f"X{a + 1}")
        return " + ".join(parts)

    def __repr__(self):
        return f"VectorForm(deg {self.degree}): {self}"


def _same_frame(f: ComplexFrame, g: ComplexFrame) -> bool:
    if f is g:
        return True
    # distinct algebras can share frame vectors, so compare brackets too
    return f.vectors == g.vectors and (
        f.algebra is g.algebra
        or f.algebra.bracket_table() == g.algebra.bracket_table()
    )


def basis_vector_form(frame: ComplexFrame, anti, a: int) -> VectorForm:
    """The chain generator wb^anti (x) X_a."""
    anti = tuple(anti)
    return VectorForm(frame, len(anti), {(anti, a): ONE})


@dataclass(frozen=True)
class CohomologySpace:
    degree: int
    dimension: int
    harmonic_basis: tuple[VectorForm, ...]
    gram: Matrix


class DolbeaultComplex:
    """Differentials, metric, Laplacian, and harmonic spaces for one (g, J).

    Construction insists on an abelian J (the degree-k extension rule is
    only a complex in that case). Per-degree matrices and harmonic bases
    are cached on first use; caches are never mutated afterwards, so
    concurrent reads are safe once built.
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        j: AlmostComplexStructure,
        frame: ComplexFrame | None = None,
    ):
        if not is_abelian(algebra, j):
            raise PreconditionError("J is not abelian")
        if frame is None:
            frame = adapted_frame(algebra, j)
        else:
            frame.check_against(j)
        self.algebra = algebra
        self.j = j
        self.frame = frame
        self.n = frame.n
        n = self.n
        # _dv[a][jj] = (1,0)-part of [conj X_jj, X_a] in frame coordinates
        self._dv = tuple(
            tuple(frame.frame_bracket(n + jj, a)[:n] for jj in range(n))
            for a in range(n)
        )
        self._chain: dict[int, tuple] = {}
        self._pos: dict[int, dict] = {}
        self._dbar: dict[int, Matrix] = {}
        self._lap: dict[int, Matrix] = {}
        self._harm: dict[int, list[Vector]] = {}

    # ------------------------------------------------------------ chains

    def chain_dim(self, k: int) -> int:
        return comb(self.n, k) * self.n if 0 <= k <= self.n else 0

    def chain_basis(self, k: int) -> tuple:
        """Keys (anti, a), antiholomorphic block major, lexicographic."""
        got = self._chain.get(k)
        if got is None:
            got = tuple(
                (idx, a)
                for idx in combinations(range(self.n), k)
                for a in range(self.n)
            )
            self._chain[k] = got
            self._pos[k] = {key: r for r, key in enumerate(got)}
        return got

    def form(self, degree: int, coeffs: dict) -> VectorForm:
        return VectorForm(self.frame, degree, coeffs)

    def zero_form(self, degree: int) -> VectorForm:
        return VectorForm(self.frame, degree, {})

    def _to_vec(self, mu: VectorForm) -> Vector:
        self.chain_basis(mu.degree)
        pos = self._pos[mu.degree]
        out = [ZERO] * self.chain_dim(mu.degree)
        for key, c in mu.coeffs.items():
            out[pos[key]] = c
        return tuple(out)

    def _from_vec(self, k: int, vec) -> VectorForm:
        keys = self.chain_basis(k)
        return VectorForm(
            self.frame, k, {keys[r]: c for r, c in enumerate(vec) if c}
        )

    def _own(self, mu: VectorForm) -> None:
        if not _same_frame(mu.frame, self.frame):
            raise ValidationError("frame mismatch")

    # ------------------------------------------------------ differentials

    def dbar_vector(self, v) -> VectorForm:
        """dbar of a (1,0)-vector given in real-basis coordinates."""
        cf = self.frame.to_frame(tuple(v))
        if any(cf[self.n :]):
            raise PreconditionError("vector is not type (1,0)")
        out: dict = {}
        for jj in range(self.n):
            for a in range(self.n):
                if not cf[a]:
                    continue
                for b, comp in enumerate(self._dv[a][jj]):
                    if comp:
                        key = ((jj,), b)
                        out[key] = out.get(key, ZERO) + cf[a] * comp
        return VectorForm(self.frame, 1, out)

    def dbar_matrix(self, k: int) -> Matrix:
        if not 0 <= k < self.n:
            raise PreconditionError("no differential at this degree")
        got = self._dbar.get(k)
        if got is not None:
            return got
        src = self.chain_basis(k)
        self.chain_basis(k + 1)
        posd = self._pos[k + 1]
        data = [[ZERO] * len(src) for _ in range(self.chain_dim(k + 1))]
        for c, (idx, a) in enumerate(src):
            for jj in range(self.n):
                if jj in idx:
                    continue
                # (-1)^k extension sign, then slot wb^jj into wb^idx
                flips = k + sum(1 for t in idx if t > jj)
                sgn = -ONE if flips % 2 else ONE
                merged = tuple(sorted(idx + (jj,)))
                for b, comp in enumerate(self._dv[a][jj]):
                    if comp:
                        r = posd[(merged, b)]
                        data[r][c] = data[r][c] + sgn * comp
        got = Matrix(data)
        self._dbar[k] = got
        return got

    def dbar(self, mu: VectorForm) -> VectorForm:
        self._own(mu)
        k = mu.degree
        if k >= self.n:
            return self.zero_form(k + 1)
        return self._from_vec(k + 1, self.dbar_matrix(k).matvec(self._to_vec(mu)))

    def dbar_adjoint(self, mu: VectorForm) -> VectorForm:
        self._own(mu)
        k = mu.degree
        if k < 1:
            raise PreconditionError("adjoint needs degree at least 1")
        if k > self.n:
            return self.zero_form(k - 1)
        m = self.dbar_matrix(k - 1).conj_transpose()
        return self._from_vec(k - 1, m.matvec(self._to_vec(mu)))

    # ------------------------------------------------------------- metric

    def inner_product(self, mu: VectorForm, nu: VectorForm) -> GaussianRational:
        self._own(mu)
        self._own(nu)
        if mu.degree != nu.degree:
            raise ValidationError("degree mismatch")
        total = ZERO
        for key, c in mu.coeffs.items():
            d = nu.coeffs.get(key)
            if d is not None:
                total = total + c * d.conjugate()
        return total

    # ------------------------------------------- Laplacian, Green, Hodge

    def laplacian_matrix(self, k: int) -> Matrix:
        if not 0 <= k <= self.n:
            raise PreconditionError("degree out of range")
        got = self._lap.get(k)
        if got is not None:
            return got
        dim = self.chain_dim(k)
        total = Matrix.zero(dim, dim)
        if k >= 1:
            d = self.dbar_matrix(k - 1)
            total = total + d * d.conj_transpose()
        if k < self.n:
            d = self.dbar_matrix(k)
            total = total + d.conj_transpose() * d
        self._lap[k] = total
        return total

    def laplacian(self, mu: VectorForm) -> VectorForm:
        self._own(mu)
        k = mu.degree
        return self._from_vec(k, self.laplacian_matrix(k).matvec(self._to_vec(mu)))

    def _harmonic_vectors(self, k: int) -> list[Vector]:
        got = self._harm.get(k)
        if got is not None:
            return got
        if k == self.n:
            ker = [
                tuple(ONE if t == r else ZERO for t in range(self.chain_dim(k)))
                for r in range(self.chain_dim(k))
            ]
        else:
            ker = kernel_basis(self.dbar_matrix(k))
        image = [] if k == 0 else row_space_basis(self.dbar_matrix(k - 1).columns())
        # complement precondition doubles as the complex-property check
        harm = orthogonal_complement(image, ker)
        ortho = gram_schmidt(harm) if harm else []
        lap = self.laplacian_matrix(k)
        for v in ortho:
            if not is_zero_vector(lap.matvec(v)):
                raise SelfCheckError("harmonic candidate not in ker laplacian")
        if len(ortho) != len(kernel_basis(lap)):
            raise SelfCheckError("harmonic dimension mismatch")
        self._harm[k] = ortho
        return ortho

    def cohomology(self, k: int) -> CohomologySpace:
        """Harmonic representatives of degree k, unnormalized, with Gram."""
        if not 0 <= k <= self.n:
            raise PreconditionError("degree out of range")
        vecs = self._harmonic_vectors(k)
        basis = tuple(self._from_vec(k, v) for v in vecs)
        gram = Matrix([[hdot(u, w) for w in vecs] for u in vecs])
        return CohomologySpace(k, len(basis), basis, gram)

    def harmonic_projection(self, mu: VectorForm) -> VectorForm:
        self._own(mu)
        vec = self._to_vec(mu)
        out = self.zero_form(mu.degree)
        for h in self._harmonic_vectors(mu.degree):
            c = hdot(vec, h) / hdot(h, h)
            if c:
                out = out + self._from_vec(mu.degree, h).scaled(c)
        return out

    def green(self, mu: VectorForm) -> VectorForm:
        """Green's operator: zero on harmonics, inverts the Laplacian off them."""
        self._own(mu)
        k = mu.degree
        rest = mu - self.harmonic_projection(mu)
        x = solve_in_image(self.laplacian_matrix(k), self._to_vec(rest))
        return self._from_vec(k, x)
