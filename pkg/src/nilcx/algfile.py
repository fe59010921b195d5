"""Line-oriented text format for algebras and their structures.

Layout, in order: one ``algebra NAME`` line, one ``dim M`` line, zero or
more ``bracket ei ej = c1*ek + c2*el ...`` lines with i < j, then zero or
more blocks of ``structure NAME`` followed by ``J ei = c*ej + ...`` lines.
Coefficients are integers or fractions ``p/q``; ``#`` starts a comment;
spacing within a line is free. The writer emits every column of J, so a
rendered file is self-checking on re-parse: redundant image lines must
agree with the rest or parsing fails.

Syntax problems raise :class:`~nilcx.errors.ParseError` with position;
well-formed files with bad mathematics (Jacobi failure, inconsistent J)
raise :class:`~nilcx.errors.ValidationError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .cxs import AlmostComplexStructure
from .errors import ParseError, ValidationError
from .lie import LieAlgebra, validate_lie
from .scalars import gr

_WORD_RE = re.compile(r"\s*(\S+)")
_NAME_RE = re.compile(r"\s*(\S+)\s*$")
_DIM_RE = re.compile(r"\s*(\d+)\s*$")
_BRACKET_HEAD_RE = re.compile(r"\s*e(\d+)\s+e(\d+)\s*=")
_J_HEAD_RE = re.compile(r"\s*e(\d+)\s*=")
_TERM_RE = re.compile(r"(-?\d+(?:/\d+)?)\s*\*\s*e(\d+)")


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    algebra: LieAlgebra
    structures: tuple


def _parse_terms(text: str, lineno: int, base: int, dim: int) -> dict:
    """``c1*ek + c2*el ...`` into {k: Fraction}, 1-based targets."""
    out: dict = {}
    pos = 0
    expect_term = True
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if expect_term:
            m = _TERM_RE.match(text, pos)
            if not m:
                raise ParseError("expected a term like c*ek", lineno, base + pos + 1)
            k = int(m.group(2))
            if not 1 <= k <= dim:
                raise ParseError(
                    "vector index out of range", lineno, base + m.start(2)
                )
            if k in out:
                raise ParseError("repeated target index", lineno, base + m.start(2))
            out[k] = Fraction(m.group(1))
            pos = m.end()
            expect_term = False
        elif text[pos] == "+":
            pos += 1
            expect_term = True
        else:
            raise ParseError("expected '+'", lineno, base + pos + 1)
    if expect_term:
        raise ParseError("expected a term like c*ek", lineno, base + pos + 1)
    return out


def parse_text(text: str) -> AlgebraFile:
    name = None
    dim = None
    brackets: dict = {}
    blocks: list = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head = _WORD_RE.match(line)
        keyword = head.group(1)
        col = head.start(1) + 1
        rest = line[head.end() :]
        base = head.end()
        if keyword == "algebra":
            if name is not None:
                raise ParseError("duplicate algebra line", lineno, col)
            m = _NAME_RE.match(rest)
            if not m:
                raise ParseError("algebra needs a single name", lineno, base + 1)
            name = m.group(1)
        elif keyword == "dim":
            if name is None:
                raise ParseError("dim before algebra line", lineno, col)
            if dim is not None:
                raise ParseError("duplicate dim line", lineno, col)
            m = _DIM_RE.match(rest)
            if not m or int(m.group(1)) < 1:
                raise ParseError("dim needs a positive integer", lineno, base + 1)
            dim = int(m.group(1))
        elif keyword == "bracket":
            if dim is None:
                raise ParseError("bracket before dim line", lineno, col)
            if blocks:
                raise ParseError("bracket after a structure block", lineno, col)
            m = _BRACKET_HEAD_RE.match(rest)
            if not m:
                raise ParseError("expected: bracket ei ej = terms", lineno, base + 1)
            i, j = int(m.group(1)), int(m.group(2))
            if not 1 <= i <= dim or not 1 <= j <= dim:
                raise ParseError("vector index out of range", lineno, base + m.start(1))
            if i >= j:
                raise ParseError("bracket needs i < j", lineno, base + m.start(1))
            if (i, j) in brackets:
                raise ParseError("duplicate bracket", lineno, base + m.start(1))
            brackets[(i, j)] = _parse_terms(
                rest[m.end() :], lineno, base + m.end(), dim
            )
        elif keyword == "structure":
            if dim is None:
                raise ParseError("structure before dim line", lineno, col)
            m = _NAME_RE.match(rest)
            if not m:
                raise ParseError("structure needs a single name", lineno, base + 1)
            if any(b[0] == m.group(1) for b in blocks):
                raise ParseError("duplicate structure name", lineno, base + 1)
            blocks.append((m.group(1), {}))
        elif keyword == "J":
            if not blocks:
                raise ParseError("J line outside a structure block", lineno, col)
            m = _J_HEAD_RE.match(rest)
            if not m:
                raise ParseError("expected: J ei = terms", lineno, base + 1)
            i = int(m.group(1))
            if not 1 <= i <= dim:
                raise ParseError("vector index out of range", lineno, base + m.start(1))
            images = blocks[-1][1]
            if i in images:
                raise ParseError("repeated J image", lineno, base + m.start(1))
            images[i] = _parse_terms(rest[m.end() :], lineno, base + m.end(), dim)
        else:
            raise ParseError(f"unknown keyword '{keyword}'", lineno, col)
    tail = max(1, len(lines))
    if name is None:
        raise ParseError("missing algebra line", tail, 1)
    if dim is None:
        raise ParseError("missing dim line", tail, 1)
    algebra = LieAlgebra(dim, brackets, name=name)
    report = validate_lie(algebra)
    if not report.ok:
        raise ValidationError(f"algebra fails validation: {report.errors[0]}")
    structures = []
    for sname, images in blocks:
        if not images:
            raise ValidationError(f"structure {sname} has no J lines")
        cols = {
            i - 1: tuple(
                gr(terms.get(k, 0)) for k in range(1, dim + 1)
            )
            for i, terms in images.items()
        }
        structures.append((sname, AlmostComplexStructure.from_images(dim, cols)))
    return AlgebraFile(name=name, algebra=algebra, structures=tuple(structures))


def parse(path) -> AlgebraFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def _terms_text(pairs) -> str:
    return " + ".join(f"{c}*e{k}" for k, c in pairs)


def render(name: str, algebra: LieAlgebra, structures=()) -> str:
    """Deterministic text for an algebra and named structures.

    Renders the full bracket table sorted by index pair and every J column
    in order; parsing the output reproduces the inputs exactly.
    """
    lines = [f"algebra {name}", f"dim {algebra.dim}"]
    table = algebra.bracket_table()
    for (i, j) in sorted(table):
        pairs = [(k, c) for k, c in sorted(table[(i, j)].items()) if c]
        if pairs:
            lines.append(f"bracket e{i} e{j} = {_terms_text(pairs)}")
    for sname, j in structures:
        lines.append(f"structure {sname}")
        for col in range(algebra.dim):
            vec = j.matrix.column(col)
            pairs = [(k + 1, x.re) for k, x in enumerate(vec) if x]
            lines.append(f"J e{col + 1} = {_terms_text(pairs)}")
    return "\n".join(lines) + "\n"


def render_entry(entry) -> str:
    """Catalog entry as file text."""
    return render(entry.name, entry.algebra, entry.structures)
