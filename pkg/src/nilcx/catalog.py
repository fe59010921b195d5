"""Built-in algebras and complex structures, exposed by name.

Four families: the two six-dimensional three-step algebras carrying
abelian structures, a ten-dimensional algebra with a two-parameter
structure family, and even-dimensional abelian algebras with the standard
pairing structure. The ten-dimensional entry is entered through its
coframe differentials and normalized to brackets internally; construction
re-derives the differentials from the brackets and insists on coefficient
equality, so a transcription slip cannot survive silently.

Every entry carries an expected-facts record. Nothing in the package
trusts those numbers: :func:`verify_entry` recomputes each fact from the
live objects and raises on any mismatch, and the test suite runs it on
every entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cxs import (
    AlmostComplexStructure,
    is_abelian,
    is_integrable,
    j_ascending_series,
)
from .dolbeault import DolbeaultComplex
from .errors import SelfCheckError, ValidationError
from .kuranishi import infinitesimal_abelian_locus
from .lie import LieAlgebra, center, validate_lie
from .linalg import Matrix
from .scalars import ONE, ZERO, gr

_H9_BRACKETS = {(1, 2): {3: 1}, (1, 3): {6: 1}, (2, 4): {6: 1}}

_H15_BRACKETS = {
    (1, 2): {4: -1},
    (1, 3): {5: 1},
    (2, 4): {5: 1},
    (1, 4): {6: -1},
    (2, 3): {6: 1},
}

# d e^m = sum over i < j of coeff * e^i ^ e^j, exactly as displayed in the
# source tables; keys absent from this dict have vanishing differential.
_N10_DIFFERENTIALS = {
    4: {(1, 2): Fraction(-1), (1, 3): Fraction(1), (2, 7): Fraction(1)},
    5: {(1, 2): Fraction(-1), (1, 7): Fraction(-1), (2, 3): Fraction(1)},
    6: {
        (1, 4): Fraction(-1),
        (1, 5): Fraction(-1),
        (2, 5): Fraction(-1),
        (2, 4): Fraction(1),
        (1, 9): Fraction(-1),
        (2, 8): Fraction(1),
        (4, 5): Fraction(-2),
        (4, 8): Fraction(1),
        (5, 9): Fraction(1),
        (4, 9): Fraction(-1),
        (5, 8): Fraction(1),
        (8, 9): Fraction(-1),
    },
    8: {
        (1, 7): Fraction(-1),
        (2, 3): Fraction(1),
        (1, 3): Fraction(-1),
        (2, 7): Fraction(-1),
    },
    9: {
        (1, 2): Fraction(2),
        (1, 7): Fraction(1),
        (2, 3): Fraction(-1),
        (1, 3): Fraction(-1),
        (2, 7): Fraction(-1),
    },
}

_N10_DIM = 10


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A named algebra with its structures and an expected-facts record.

    ``structures`` is an ordered tuple of (name, structure) pairs;
    ``structure_facts`` maps each name to the classifications it is
    expected to satisfy. ``params`` records constructor parameters for the
    parameterized families and is None otherwise.
    """

    name: str
    algebra: LieAlgebra
    structures: tuple
    facts: dict
    structure_facts: dict
    display: tuple
    params: tuple | None = None


def names() -> tuple[str, ...]:
    return ("h9", "h15", "n10", "torus")


def _rational(x, what: str) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"{what} must be rational") from None
    raise ValidationError(f"{what} must be rational")


def brackets_from_differentials(dim: int, diffs: dict) -> dict:
    """Invert d e^m = -sum c^m_ij e^i ^ e^j into bracket coefficients."""
    out: dict = {}
    for m, table in diffs.items():
        for (i, j), c in table.items():
            if not 1 <= i < j <= dim or not 1 <= m <= dim:
                raise ValidationError("differential index out of range")
            out.setdefault((i, j), {})[m] = -c
    return out


def differentials_from_brackets(algebra: LieAlgebra) -> dict:
    """Coframe differentials of an algebra, coefficient tables by index."""
    out: dict = {}
    for (i, j), targets in algebra.bracket_table().items():
        for m, c in targets.items():
            if c:
                out.setdefault(m, {})[(i, j)] = -c
    return out


def _render_differentials(dim: int, diffs: dict) -> tuple:
    lines = []
    for m in range(1, dim + 1):
        table = diffs.get(m)
        if not table:
            lines.append(f"de{m} = 0")
            continue
        parts = []
        for (i, j) in sorted(table):
            c = table[(i, j)]
            if c == 1:
                parts.append(f"e{i}{j}" if j < 10 else f"e{i},{j}")
            elif c == -1:
                parts.append(f"-e{i}{j}" if j < 10 else f"-e{i},{j}")
            else:
                parts.append(f"{c}*e{i}{j}" if j < 10 else f"{c}*e{i},{j}")
        text = " + ".join(parts).replace("+ -", "- ")
        lines.append(f"de{m} = {text}")
    return tuple(lines)


def _render_brackets(brackets: dict) -> tuple:
    lines = []
    for (i, j) in sorted(brackets):
        targets = brackets[(i, j)]
        parts = []
        for m in sorted(targets):
            c = targets[m]
            if c == 1:
                parts.append(f"e{m}")
            elif c == -1:
                parts.append(f"-e{m}")
            else:
                parts.append(f"{c}*e{m}")
        lines.append(f"[e{i},e{j}] = " + " + ".join(parts).replace("+ -", "- "))
    return tuple(lines)


def standard_pairing(dim: int) -> AlmostComplexStructure:
    """J pairing consecutive basis vectors: e_odd -> e_even -> -e_odd."""
    if dim % 2:
        raise ValidationError("J needs an even-dimensional space")
    cols = []
    for k in range(0, dim, 2):
        cols.append(tuple(ONE if c == k + 1 else ZERO for c in range(dim)))
        cols.append(tuple(-ONE if c == k else ZERO for c in range(dim)))
    return AlmostComplexStructure(Matrix.from_columns(cols))


def _n10_structure(s: Fraction, t: Fraction) -> AlmostComplexStructure:
    m = _N10_DIM
    images = {
        0: tuple(gr(1) if c == 1 else gr(0) for c in range(m)),
        3: tuple(gr(1) if c == 4 else gr(0) for c in range(m)),
        7: tuple(gr(1) if c == 8 else gr(0) for c in range(m)),
        2: tuple(gr(t) if c == 5 else (gr(s) if c == 6 else gr(0)) for c in range(m)),
        9: tuple(
            gr(-s) if c == 5 else (gr(-t) if c == 6 else gr(0)) for c in range(m)
        ),
    }
    return AlmostComplexStructure.from_images(m, images)


def _validated(algebra: LieAlgebra) -> LieAlgebra:
    report = validate_lie(algebra)
    if not report.ok:
        raise SelfCheckError(f"catalog algebra invalid: {report.errors[0]}")
    return algebra


def get(name: str, s=None, t=None, n=None) -> CatalogEntry:
    """Fetch a catalog entry by name.

    n10 needs rational s and t with t^2 != s^2; torus needs a positive
    half-dimension n. The other entries take no parameters.
    """
    if name == "h9":
        algebra = _validated(LieAlgebra(6, _H9_BRACKETS, name="h9"))
        return CatalogEntry(
            name="h9",
            algebra=algebra,
            structures=(("J", standard_pairing(6)),),
            facts={"dim": 6, "step": 3, "center_dim": 2, "h1_dim": 3, "locus_dim": 3},
            structure_facts={
                "J": {"integrable": True, "abelian": True, "nilpotent": True}
            },
            display=_render_brackets(_H9_BRACKETS),
        )
    if name == "h15":
        algebra = _validated(LieAlgebra(6, _H15_BRACKETS, name="h15"))
        return CatalogEntry(
            name="h15",
            algebra=algebra,
            structures=(("J", standard_pairing(6)),),
            facts={"dim": 6, "step": 3, "center_dim": 2, "h1_dim": 5, "locus_dim": 3},
            structure_facts={
                "J": {"integrable": True, "abelian": True, "nilpotent": True}
            },
            display=_render_brackets(_H15_BRACKETS),
        )
    if name == "n10":
        if s is None or t is None:
            raise ValidationError("n10 requires rational parameters s and t")
        s = _rational(s, "s")
        t = _rational(t, "t")
        if t * t == s * s:
            raise ValidationError("t^2 = s^2 is rejected")
        brackets = brackets_from_differentials(_N10_DIM, _N10_DIFFERENTIALS)
        algebra = _validated(LieAlgebra(_N10_DIM, brackets, name="n10"))
        back = differentials_from_brackets(algebra)
        if back != _N10_DIFFERENTIALS:
            raise SelfCheckError("differential round trip failed for n10")
        return CatalogEntry(
            name="n10",
            algebra=algebra,
            structures=(("J", _n10_structure(s, t)),),
            facts={"dim": 10, "step": 2, "center_dim": 4},
            structure_facts={
                "J": {
                    "integrable": True,
                    "abelian": s == 1 and t == 0,
                    "nilpotent": True,
                }
            },
            display=_render_differentials(_N10_DIM, _N10_DIFFERENTIALS),
            params=(s, t),
        )
    if name == "torus":
        if n is None:
            raise ValidationError("torus requires a positive half-dimension n")
        if not isinstance(n, int) or n < 1:
            raise ValidationError("torus requires a positive half-dimension n")
        algebra = _validated(LieAlgebra(2 * n, {}, name=f"torus{n}"))
        return CatalogEntry(
            name="torus",
            algebra=algebra,
            structures=(("J", standard_pairing(2 * n)),),
            facts={
                "dim": 2 * n,
                "step": 1,
                "center_dim": 2 * n,
                "h1_dim": n * n,
                "locus_dim": n * n,
            },
            structure_facts={
                "J": {"integrable": True, "abelian": True, "nilpotent": True}
            },
            display=("abelian",),
            params=(n,),
        )
    raise ValidationError(f"unknown catalog name: {name}")


def _expect(name: str, key: str, stored, computed):
    if stored != computed:
        raise SelfCheckError(
            f"stale fact {key} for {name}: stored {stored}, computed {computed}"
        )


def verify_entry(entry: CatalogEntry) -> dict:
    """Recompute every stored fact and return the live values.

    Raises a self-check error on the first disagreement, naming the fact.
    The structure classifications always run; the cohomology and locus
    facts run when the entry records them (they need an abelian structure).
    """
    live: dict = {}
    report = validate_lie(entry.algebra)
    if not report.ok:
        raise SelfCheckError(f"catalog algebra invalid: {report.errors[0]}")
    live["dim"] = entry.algebra.dim
    live["step"] = report.step
    live["center_dim"] = len(center(entry.algebra))
    for key in ("dim", "step", "center_dim"):
        _expect(entry.name, key, entry.facts[key], live[key])
    for sname, j in entry.structures:
        expected = entry.structure_facts[sname]
        got = {
            "integrable": bool(is_integrable(entry.algebra, j)),
            "abelian": is_abelian(entry.algebra, j),
            "nilpotent": j_ascending_series(entry.algebra, j)[1],
        }
        for key, val in expected.items():
            _expect(entry.name, f"{sname}.{key}", val, got[key])
        live[sname] = got
    if "h1_dim" in entry.facts or "locus_dim" in entry.facts:
        dc = DolbeaultComplex(entry.algebra, entry.structures[0][1])
        if "h1_dim" in entry.facts:
            live["h1_dim"] = dc.cohomology(1).dimension
            _expect(entry.name, "h1_dim", entry.facts["h1_dim"], live["h1_dim"])
        if "locus_dim" in entry.facts:
            live["locus_dim"] = len(infinitesimal_abelian_locus(dc))
            _expect(entry.name, "locus_dim", entry.facts["locus_dim"], live["locus_dim"])
    return live
