"""Text file formats for polynomials, matrices and generator lists.

Polynomial files:
    zeta 8
    degree 4
    4 0 0 : 1
    0 4 0 : 1/2*z^3 - z + 2

Matrix files: a `zeta <n>` header and three lines of three comma-separated
scalar expressions.  Generator files are matrix blocks separated by blank
lines, each with its own header (conductors may differ; consumers embed
into the least common one).  Parsing is exact and order-insensitive;
emission is canonical, so emit(parse(text)) is stable.
"""

from __future__ import annotations

from typing import Iterable

from .cyclo import CycloElem, ScalarParseError, format_scalar, parse_scalar
from .polyring import TernaryForm
from .projgroup import ProjTransform


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _logical_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        yield lineno, stripped


def parse_polynomial(text: str) -> TernaryForm:
    conductor = None
    degree = None
    terms: dict = {}
    for lineno, line in _logical_lines(text):
        if not line:
            continue
        if line.startswith("zeta"):
            conductor = _parse_header_int(line, "zeta", lineno)
            continue
        if line.startswith("degree"):
            degree = _parse_header_int(line, "degree", lineno)
            continue
        if conductor is None or degree is None:
            raise ParseError(lineno, "term before zeta/degree headers")
        if ":" not in line:
            raise ParseError(lineno, "expected 'i j k : scalar'")
        left, right = line.split(":", 1)
        parts = left.split()
        if len(parts) != 3:
            raise ParseError(lineno, "expected three exponents before ':'")
        try:
            i, j, k = (int(p) for p in parts)
        except ValueError:
            raise ParseError(lineno, "exponents must be integers") from None
        if i + j + k != degree or min(i, j, k) < 0:
            raise ParseError(lineno, f"exponents {i},{j},{k} do not sum to degree {degree}")
        try:
            coeff = parse_scalar(right.strip(), conductor)
        except ScalarParseError as exc:
            raise ParseError(lineno, str(exc)) from None
        key = (i, j, k)
        terms[key] = terms.get(key, CycloElem.from_rational(0)) + coeff
    if conductor is None or degree is None:
        raise ParseError(0, "missing zeta/degree headers")
    return TernaryForm(degree, terms)


def emit_polynomial(form: TernaryForm) -> str:
    lines = [f"zeta {form.n}", f"degree {form.degree}"]
    for (i, j, k), coeff in sorted(form.terms.items(), reverse=True):
        lines.append(f"{i} {j} {k} : {format_scalar(coeff, form.n)}")
    return "\n".join(lines) + "\n"


def _parse_header_int(line: str, keyword: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword:
        raise ParseError(lineno, f"malformed {keyword} header")
    try:
        value = int(parts[1])
    except ValueError:
        raise ParseError(lineno, f"{keyword} needs an integer") from None
    if value < 1:
        raise ParseError(lineno, f"{keyword} must be positive")
    return value


def parse_matrix_block(lines: list[tuple[int, str]]) -> ProjTransform:
    conductor = None
    rows = []
    for lineno, line in lines:
        if line.startswith("zeta"):
            conductor = _parse_header_int(line, "zeta", lineno)
            continue
        if conductor is None:
            raise ParseError(lineno, "matrix row before zeta header")
        entries = [e.strip() for e in line.split(",")]
        if len(entries) != 3:
            raise ParseError(lineno, "expected three comma-separated entries")
        try:
            rows.append(tuple(parse_scalar(e, conductor) for e in entries))
        except ScalarParseError as exc:
            raise ParseError(lineno, str(exc)) from None
    if conductor is None:
        raise ParseError(0, "missing zeta header")
    if len(rows) != 3:
        raise ParseError(0, f"expected 3 matrix rows, got {len(rows)}")
    return ProjTransform(tuple(rows))


def parse_matrix(text: str) -> ProjTransform:
    lines = [(n, l) for n, l in _logical_lines(text) if l]
    return parse_matrix_block(lines)


def emit_matrix(transform: ProjTransform) -> str:
    lines = [f"zeta {transform.n}"]
    for row in transform.rows:
        lines.append(", ".join(format_scalar(c, transform.n) for c in row))
    return "\n".join(lines) + "\n"


def parse_generators(text: str) -> list[ProjTransform]:
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in _logical_lines(text):
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((lineno, line))
    gens = [parse_matrix_block(b) for b in blocks if b]
    if not gens:
        raise ParseError(0, "no matrices found")
    return gens


def emit_generators(gens: Iterable[ProjTransform]) -> str:
    return "\n".join(emit_matrix(g) for g in gens)
