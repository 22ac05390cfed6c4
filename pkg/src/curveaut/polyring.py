"""Homogeneous ternary forms over cyclotomic fields.

Provides the curve-side toolbox: evaluation, the pullback action of
projective transformations, core/low decomposition, restriction to lines,
intersection multiplicities, tangents and exact smoothness testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Optional

from . import linalg, unipoly
from .cyclo import CycloElem, rational, zeta

QQ = Fraction


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# points and lines


def _canonical_triple(coords) -> tuple[CycloElem, ...]:
    vals = [CycloElem.coerce(c) for c in coords]
    n = math.lcm(*[v.n for v in vals])
    vals = [v.embed_to(n) for v in vals]
    pivot = next((v for v in vals if not v.is_zero()), None)
    if pivot is None:
        raise GeometryError("projective triple cannot be all zero")
    inv = pivot.inverse()
    return tuple(v * inv for v in vals)


class ProjPoint:
    """A point of P^2, scaled so the first nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, x, y, z):
        self.coords = _canonical_triple((x, y, z))

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        from .cyclo import format_scalar

        return "(" + " : ".join(format_scalar(c) for c in self.coords) + ")"


class ProjLine:
    """The line a*X + b*Y + c*Z = 0, with canonically scaled dual triple."""

    __slots__ = ("dual",)

    def __init__(self, a, b, c):
        self.dual = _canonical_triple((a, b, c))

    def contains(self, p: ProjPoint) -> bool:
        value = sum((d * c for d, c in zip(self.dual, p.coords)), rational(0))
        return value.is_zero()

    def basis_points(self) -> tuple[ProjPoint, ProjPoint]:
        """Two canonical points spanning the line, chosen from the pivot of
        smallest index; deterministic so restrictions are reproducible."""
        a = self.dual
        i0 = next(i for i in range(3) if not a[i].is_zero())
        others = [i for i in range(3) if i != i0]
        pts = []
        for j in others:
            coords = [rational(0)] * 3
            coords[j] = a[i0]
            coords[i0] = -a[j]
            pts.append(ProjPoint(*coords))
        return pts[0], pts[1]

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.dual == other.dual

    def __hash__(self):
        return hash(self.dual)

    def __repr__(self):
        from .cyclo import format_scalar

        return "[" + " : ".join(format_scalar(c) for c in self.dual) + "]"


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    (x1, y1, z1), (x2, y2, z2) = p.coords, q.coords
    a = y1 * z2 - z1 * y2
    b = z1 * x2 - x1 * z2
    c = x1 * y2 - y1 * x2
    return ProjLine(a, b, c)


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    (a1, b1, c1), (a2, b2, c2) = l1.dual, l2.dual
    return ProjPoint(b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    m = (p.coords, q.coords, r.coords)
    return linalg.det(m).is_zero()


# ---------------------------------------------------------------------------
# ternary forms


class TernaryForm:
    """A homogeneous polynomial in X, Y, Z with cyclotomic coefficients.

    Terms map exponent triples (i, j, k), i+j+k = degree, to nonzero
    coefficients, all embedded into one conductor.
    """

    __slots__ = ("degree", "n", "terms")

    def __init__(self, degree: int, terms: dict):
        clean = {}
        conductor = 1
        for key, value in terms.items():
            value = CycloElem.coerce(value)
            if value.is_zero():
                continue
            i, j, k = key
            if i + j + k != degree or min(i, j, k) < 0:
                raise GeometryError(f"exponents {key} invalid for degree {degree}")
            conductor = math.lcm(conductor, value.n)
            clean[(i, j, k)] = value
        self.degree = degree
        self.n = conductor
        self.terms = {k: v.embed_to(conductor) for k, v in sorted(clean.items())}

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int, k: int) -> CycloElem:
        return self.terms.get((i, j, k), rational(0))

    def scaled(self, c) -> "TernaryForm":
        c = CycloElem.coerce(c)
        return TernaryForm(self.degree, {k: v * c for k, v in self.terms.items()})

    def plus(self, other: "TernaryForm") -> "TernaryForm":
        if other.degree != self.degree:
            raise GeometryError("cannot add forms of different degree")
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms.get(key, rational(0)) + value
        return TernaryForm(self.degree, terms)

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms))))

    def __repr__(self):
        from .cyclo import format_scalar

        if not self.terms:
            return f"TernaryForm<deg {self.degree}, 0>"
        bits = []
        for (i, j, k), c in self.terms.items():
            mono = "".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip("XYZ", (i, j, k))
                if e
            ) or "1"
            bits.append(f"({format_scalar(c)})*{mono}")
        return f"TernaryForm<deg {self.degree}, " + " + ".join(bits) + ">"


def form_from_monomials(degree: int, entries: Iterable[tuple[int, int, int, object]]) -> TernaryForm:
    terms = {}
    for i, j, k, c in entries:
        terms[(i, j, k)] = terms.get((i, j, k), rational(0)) + CycloElem.coerce(c)
    return TernaryForm(degree, terms)


def evaluate(form: TernaryForm, point: ProjPoint) -> CycloElem:
    """Value of the form at the canonical representative of the point."""
    x, y, z = point.coords
    total = rational(0)
    for (i, j, k), c in form.terms.items():
        total = total + c * (x ** i) * (y ** j) * (z ** k)
    return total


def lies_on(form: TernaryForm, point: ProjPoint) -> bool:
    return evaluate(form, point).is_zero()


def partial(form: TernaryForm, var: int) -> TernaryForm:
    terms = {}
    for (i, j, k), c in form.terms.items():
        e = (i, j, k)[var]
        if e == 0:
            continue
        key = tuple(v - (1 if idx == var else 0) for idx, v in enumerate((i, j, k)))
        terms[key] = c * e
    return TernaryForm(form.degree - 1, terms)


def substitute(form: TernaryForm, rows) -> TernaryForm:
    """Substitute X_r -> sum_c rows[r][c] * X_c, i.e. compute F(A x)."""
    rows = [[CycloElem.coerce(c) for c in row] for row in rows]
    lin = []
    for row in rows:
        lin.append({(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]})

    def dict_mul(a, b):
        out = {}
        for (i1, j1, k1), c1 in a.items():
            if c1.is_zero():
                continue
            for (i2, j2, k2), c2 in b.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                out[key] = out.get(key, rational(0)) + c1 * c2
        return out

    power_cache: dict[tuple[int, int], dict] = {}

    def lin_power(var, e):
        if e == 0:
            return {(0, 0, 0): rational(1)}
        key = (var, e)
        if key not in power_cache:
            half = lin_power(var, e // 2)
            sq = dict_mul(half, half)
            if e % 2:
                sq = dict_mul(sq, lin[var])
            power_cache[key] = sq
        return power_cache[key]

    acc: dict = {}
    for (i, j, k), c in form.terms.items():
        mono = {(0, 0, 0): c}
        for var, e in ((0, i), (1, j), (2, k)):
            if e:
                mono = dict_mul(mono, lin_power(var, e))
        for key, value in mono.items():
            acc[key] = acc.get(key, rational(0)) + value
    return TernaryForm(form.degree, acc)


def transform_action(form: TernaryForm, transform) -> TernaryForm:
    """The pullback F^M = F o M^{-1}.

    With this convention a diagonal [X, Y, cZ] multiplies the coefficient
    of X^(d-1)Z by c^{-1}, matching the scalar bookkeeping used by the
    invariance certificates throughout the package.
    """
    rows = _rows_of(transform)
    d = linalg.det(rows)
    if d.is_zero():
        raise GeometryError("transform must be invertible")
    return substitute(form, linalg.inverse(rows))


def _rows_of(transform):
    if hasattr(transform, "rows"):
        return transform.rows
    return linalg.mat_from(transform)


def preserves_up_to_scalar(form: TernaryForm, transform) -> Optional[CycloElem]:
    """Return c with F^M = c*F when it exists, else None."""
    image = transform_action(form, transform)
    if form.is_zero():
        raise GeometryError("invariance test needs a nonzero form")
    key = next(iter(form.terms))
    if key not in image.terms:
        return None
    scalar = image.terms[key] / form.terms[key]
    return scalar if image == form.scaled(scalar) else None


def monomial_exponent(key: tuple[int, int, int]) -> int:
    return max(key)


def core_decomposition(form: TernaryForm) -> tuple[TernaryForm, TernaryForm]:
    """Split a form into its core (terms of greatest exponent) and low part."""
    if form.is_zero():
        raise GeometryError("core of the zero form is undefined")
    top = max(monomial_exponent(k) for k in form.terms)
    core = {k: v for k, v in form.terms.items() if monomial_exponent(k) == top}
    low = {k: v for k, v in form.terms.items() if monomial_exponent(k) < top}
    return TernaryForm(form.degree, core), TernaryForm(form.degree, low)


def genus(d: int) -> int:
    if d < 1:
        raise GeometryError(f"degree must be >= 1, got {d}")
    return (d - 1) * (d - 2) // 2


# ---------------------------------------------------------------------------
# restriction to a line and intersection numbers


def restrict_to_line(form: TernaryForm, line: ProjLine) -> list[CycloElem]:
    """Pull the form back along the canonical parametrization of the line.

    Returns the binary form b(s, t) as coefficients [c_0, ..., c_d] with
    c_i the coefficient of s^(d-i) t^i.  All zero means the line lies in
    the zero set of the form.
    """
    b0, b1 = line.basis_points()
    d = form.degree
    coeffs = [rational(0)] * (d + 1)
    # expand F(s*B0 + t*B1) monomial by monomial
    for (i, j, k), c in form.terms.items():
        contrib = {0: c}
        for var, e in ((0, i), (1, j), (2, k)):
            if not e:
                continue
            u, v = b0.coords[var], b1.coords[var]
            expanded = _binomial_power(u, v, e)
            new = {}
            for tdeg, cur in contrib.items():
                for extra, factor in expanded.items():
                    new[tdeg + extra] = new.get(tdeg + extra, rational(0)) + cur * factor
            contrib = new
        for tdeg, value in contrib.items():
            coeffs[tdeg] = coeffs[tdeg] + value
    return coeffs


def _binomial_power(u: CycloElem, v: CycloElem, e: int) -> dict[int, CycloElem]:
    """(s*u + t*v)^e as {power of t: coefficient}."""
    out = {}
    for r in range(e + 1):
        c = math.comb(e, r)
        term = (u ** (e - r)) * (v ** r) * c
        if not term.is_zero():
            out[r] = term
    return out


def line_parameter(line: ProjLine, point: ProjPoint) -> tuple[CycloElem, CycloElem]:
    """Parameter (s : t) of a point on the line, in the canonical basis."""
    b0, b1 = line.basis_points()
    a = line.dual
    i0 = next(i for i in range(3) if not a[i].is_zero())
    others = [i for i in range(3) if i != i0]
    s = point.coords[others[0]] / b0.coords[others[0]]
    t = point.coords[others[1]] / b1.coords[others[1]]
    combo = [s * b0.coords[r] + t * b1.coords[r] for r in range(3)]
    if any(combo) and ProjPoint(*combo) == point:
        return s, t
    raise GeometryError(f"point {point} does not lie on line {line}")


def binary_form_order_at(coeffs: list[CycloElem], s: CycloElem, t: CycloElem) -> int:
    """Vanishing order of the binary form at the parameter value (s : t)."""
    d = len(coeffs) - 1
    if all(c.is_zero() for c in coeffs):
        raise GeometryError("zero binary form has no finite vanishing order")
    if t.is_zero():
        # order of the factor t^i at the point (1 : 0)
        return next(i for i in range(d + 1) if not coeffs[i].is_zero())
    u0 = s / t
    # p(u) = b(u, 1) with low-degree-first coefficients; at (1 : 0) the
    # degree drop accounts for the root at infinity, not relevant here
    p = unipoly.trim([coeffs[d - m] for m in range(d + 1)])
    order = 0
    while p:
        value = CycloElem.coerce(unipoly.eval_at(p, u0))
        if not value.is_zero():
            break
        p, _ = unipoly.divmod_poly(p, [-u0, rational(1)])
        order += 1
    return order


def intersection_multiplicity(form: TernaryForm, line: ProjLine, point: ProjPoint) -> int:
    """Order of contact of the curve and the line at the given point."""
    coeffs = restrict_to_line(form, line)
    if all(c.is_zero() for c in coeffs):
        raise GeometryError("line is contained in the curve")
    s, t = line_parameter(line, point)
    return binary_form_order_at(coeffs, s, t)


def line_meet_count(form: TernaryForm, line: ProjLine) -> int:
    """Number of distinct points of the curve on the line (no roots taken:
    count via the squarefree part of the restriction)."""
    coeffs = restrict_to_line(form, line)
    if all(c.is_zero() for c in coeffs):
        raise GeometryError("line is contained in the curve")
    d = len(coeffs) - 1
    p = unipoly.trim([coeffs[d - m] for m in range(d + 1)])
    count = unipoly.squarefree_degree(p)
    if unipoly.degree(p) < d:
        count += 1  # the basis point with t = 0 is on the curve
    return count


def tangent_line(form: TernaryForm, point: ProjPoint) -> ProjLine:
    if not lies_on(form, point):
        raise GeometryError(f"{point} is not on the curve")
    grads = [evaluate(partial(form, var), point) for var in range(3)]
    if all(g.is_zero() for g in grads):
        raise GeometryError(f"curve is singular at {point}")
    return ProjLine(*grads)


# ---------------------------------------------------------------------------
# smoothness
#
# Chart-wise elimination: in each affine chart the three dehomogenized
# partials f1, f2, f3 must not share a zero.  After a deterministic shear
# makes the top y-coefficient of f1 constant, the resultant
# R(x, T) = Res_y(f1, f2 + T*f3) vanishes identically in T at exactly the
# x-values below a common zero, so the partials share a zero iff the gcd
# of the T-coefficients of R is nonconstant.  R is recovered exactly by
# evaluation at integer nodes and Newton interpolation; no factorization
# and no numeric roots are involved.


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    witness: Optional[ProjPoint]
    constructive: bool


BiPoly = dict[tuple[int, int], CycloElem]


def _bi_from_chart(form: TernaryForm, chart: int) -> BiPoly:
    """Dehomogenize by setting variable `chart` to 1; remaining variables
    keep their cyclic order."""
    keep = [v for v in range(3) if v != chart]
    out: BiPoly = {}
    for key, c in form.terms.items():
        bikey = (key[keep[0]], key[keep[1]])
        out[bikey] = out.get(bikey, rational(0)) + c
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bi_total_degree(f: BiPoly) -> int:
    return max(i + j for i, j in f)


def _bi_shear(f: BiPoly, c: int) -> BiPoly:
    """Apply x -> x + c*y."""
    if c == 0:
        return dict(f)
    out: BiPoly = {}
    for (i, j), coeff in f.items():
        for r in range(i + 1):
            key = (r, j + i - r)
            add = coeff * (math.comb(i, r) * c ** (i - r))
            out[key] = out.get(key, rational(0)) + add
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bi_y_degree(f: BiPoly) -> int:
    return max(j for _, j in f) if f else -1


def _bi_eval_x(f: BiPoly, x0) -> list[CycloElem]:
    """Substitute x = x0; returns a univariate polynomial in y."""
    x0 = CycloElem.coerce(x0)
    ydeg = _bi_y_degree(f)
    out = [rational(0)] * (ydeg + 1)
    for (i, j), c in f.items():
        out[j] = out[j] + c * (x0 ** i)
    return out


def _bi_eval(f: BiPoly, x0, y0) -> CycloElem:
    x0, y0 = CycloElem.coerce(x0), CycloElem.coerce(y0)
    total = rational(0)
    for (i, j), c in f.items():
        total = total + c * (x0 ** i) * (y0 ** j)
    return total


def _uni_resultant(p: list, q: list) -> CycloElem:
    """Resultant of univariate polynomials over the field, by the
    Euclidean remainder sequence."""
    p, q = unipoly.trim(p), unipoly.trim(q)
    if not p or not q:
        return rational(0)
    sign = 1
    result = rational(1)
    while True:
        dp, dq = len(p) - 1, len(q) - 1
        if dq == 0:
            return result * (q[0] ** dp) * sign
        if dp < dq:
            p, q = q, p
            if dp % 2 and dq % 2:
                sign = -sign
            continue
        rem = unipoly.divmod_poly(p, q)[1]
        if not rem:
            return rational(0)
        dr = len(rem) - 1
        result = result * (q[-1] ** (dp - dr))
        if dp % 2 and dq % 2:
            sign = -sign
        p, q = q, rem


def _declared_resultant(p: list, q: list, declared_q_degree: int) -> CycloElem:
    """Sylvester determinant taken at declared degrees: when deg q drops
    below the declared degree it equals lc(p)^drop times the actual
    resultant, provided p keeps its full degree (the shear guarantees it).
    Evaluating this fixed determinant keeps interpolation consistent."""
    p, q = unipoly.trim(p), unipoly.trim(q)
    if not q:
        return rational(0)
    drop = declared_q_degree - (len(q) - 1)
    base = _uni_resultant(p, q)
    if drop:
        base = base * (p[-1] ** drop)
    return base


def _newton_interpolate(values: list, nodes: list[int]) -> list:
    """Coefficients (low first) of the polynomial through (node, value)."""
    k = len(values)
    coeffs = list(values)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / rational(nodes[i] - nodes[i - j])
    poly: list = []
    for i in reversed(range(k)):
        poly = unipoly.add(unipoly.mul(poly, [rational(-nodes[i]), rational(1)]), [coeffs[i]])
    return poly


def _pair_has_common_zero(f1: BiPoly, f2: BiPoly) -> bool:
    """Common zero in C^2 of two nonconstant bivariate polynomials; f1 must
    have constant leading y-coefficient of full total degree."""
    e1, e2 = _bi_total_degree(f1), _bi_total_degree(f2)
    nodes = list(range(e1 * e2 + 1))
    values = []
    for x0 in nodes:
        p = _bi_eval_x(f1, x0)
        q = _bi_eval_x(f2, x0)
        values.append(_declared_resultant(p, q, _bi_y_degree(f2)))
    res = unipoly.trim(_newton_interpolate(values, nodes))
    return unipoly.degree(res) != 0


def _triple_has_common_zero(f1: BiPoly, f2: BiPoly, f3: BiPoly) -> bool:
    e1 = _bi_total_degree(f1)
    e2 = max(_bi_total_degree(f2), _bi_total_degree(f3))
    m2 = max(_bi_y_degree(f2), _bi_y_degree(f3))
    x_nodes = list(range(e1 * e2 + 1))
    t_nodes = list(range(e1 + 1))
    per_x: list[list] = []
    for x0 in x_nodes:
        p = _bi_eval_x(f1, x0)
        q2 = _bi_eval_x(f2, x0)
        q3 = _bi_eval_x(f3, x0)
        samples = []
        for t0 in t_nodes:
            q = unipoly.add(q2, unipoly.scale(q3, rational(t0)))
            samples.append(_declared_resultant(p, q, m2))
        per_x.append(unipoly.trim(_newton_interpolate(samples, t_nodes)))
    # coefficient j of R(x, T) in T, interpolated over x
    max_tdeg = max((len(c) for c in per_x), default=0)
    g: list = []
    for j in range(max_tdeg):
        vals = [c[j] if j < len(c) else rational(0) for c in per_x]
        cj = _newton_interpolate(vals, x_nodes)
        g = unipoly.gcd(g, cj)
        if unipoly.degree(g) == 0:
            return False
    return True  # gcd nonconstant, or R identically zero


def _chart_common_zero(parts: list[BiPoly]) -> bool:
    fs = [f for f in parts if f]
    if not fs:
        return True
    for f in fs:
        if set(f) == {(0, 0)}:
            return False  # a partial is a nonzero constant in this chart
    if len(fs) == 1:
        return True  # a single nonconstant polynomial always has zeros
    # shear so the first polynomial gets a constant leading y-coefficient
    f1 = fs[0]
    m = _bi_total_degree(f1)
    shear = 0
    for c in range(m + 1):
        candidate = _bi_shear(f1, c)
        if candidate.get((0, m)) and _bi_y_degree(candidate) == m:
            shear = c
            break
    else:
        raise GeometryError("no shear normalizes the leading coefficient")
    fs = [_bi_shear(f, shear) for f in fs]
    if len(fs) == 2:
        return _pair_has_common_zero(fs[0], fs[1])
    return _triple_has_common_zero(fs[0], fs[1], fs[2])


def _witness_candidates(form: TernaryForm) -> list[CycloElem]:
    rationals = [0, 1, -1, 2, -2, 3, -3, QQ(1, 2), QQ(-1, 2), QQ(1, 3), QQ(3, 2)]
    out = [rational(q) for q in rationals]
    n = form.n
    if n > 1:
        for j in range(1, n):
            for q in (1, -1, 2):
                out.append(zeta(n, j) * q)
    return out


def _search_witness(form: TernaryForm, parts: list[TernaryForm]) -> Optional[ProjPoint]:
    candidates = _witness_candidates(form)
    for chart in (2, 1, 0):
        chart_parts = [_bi_from_chart(p, chart) for p in parts]
        if not _chart_common_zero(chart_parts):
            continue
        for x0, y0 in iproduct(candidates, candidates):
            if all(_bi_eval(f, x0, y0).is_zero() for f in chart_parts):
                coords = [None, None, None]
                keep = [v for v in range(3) if v != chart]
                coords[chart] = rational(1)
                coords[keep[0]] = x0
                coords[keep[1]] = y0
                return ProjPoint(*coords)
    return None


def is_smooth(form: TernaryForm) -> SmoothnessReport:
    """Exact smoothness of the projective plane curve Z(form)."""
    if form.is_zero() or form.degree < 2:
        raise GeometryError("smoothness test needs a nonzero form of degree >= 2")
    parts = [partial(form, var) for var in range(3)]
    singular = any(
        _chart_common_zero([_bi_from_chart(p, chart) for p in parts])
        for chart in (2, 1, 0)
    )
    if not singular:
        return SmoothnessReport(True, None, True)
    witness = _search_witness(form, parts)
    return SmoothnessReport(False, witness, witness is not None)
