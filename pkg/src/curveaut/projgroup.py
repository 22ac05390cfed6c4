"""Projective transformations modulo scalars and finite matrix groups.

Matrices are canonicalized so the first nonzero entry in row-major order
equals 1, which turns projective equality into coefficient comparison.
Group closure is a deterministic breadth-first walk over canonical forms.
Eigenstructure is computed exactly: multiplicity patterns come from
gcd(chi, chi'), eigenvalues of monomial matrices from root-of-unity square
and cube roots, and the remaining dense cases from a finite search over
eigenvalue ratios, which are k-th roots of unity for an element of
projective order k.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg, unipoly
from .cyclo import CycloElem, cbrt_cyclo, rational, sqrt_cyclo, zeta
from .polyring import ProjLine, ProjPoint, collinear, line_through, meet

QQ = Fraction


class GroupError(ValueError):
    pass


class ClosureCapExceeded(GroupError):
    def __init__(self, cap: int, partial: int):
        super().__init__(f"closure exceeded cap {cap} (partial count {partial})")
        self.cap = cap
        self.partial = partial


class OrderCapExceeded(GroupError):
    def __init__(self, cap: int):
        super().__init__(f"element order exceeds cap {cap}")
        self.cap = cap


class EigenvalueError(GroupError):
    pass


class ProjTransform:
    """An invertible matrix modulo scalars, canonically scaled."""

    __slots__ = ("n", "rows", "size", "_key")

    def __init__(self, rows):
        rows = linalg.mat_from(rows)
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise GroupError("matrix must be square")
        n = 1
        for row in rows:
            for entry in row:
                n = math.lcm(n, entry.n)
        rows = tuple(tuple(c.embed_to(n) for c in row) for row in rows)
        if linalg.det(rows).is_zero():
            raise GroupError("matrix is singular")
        pivot = next(c for row in rows for c in row if not c.is_zero())
        inv = pivot.inverse()
        rows = tuple(tuple(c * inv for c in row) for row in rows)
        self.n = n
        self.rows = rows
        self.size = size
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.n, tuple(c.coeffs for row in self.rows for c in row))
        return self._key

    def embed_to(self, N: int) -> "ProjTransform":
        if N == self.n:
            return self
        return ProjTransform(tuple(tuple(c.embed_to(N) for c in row) for row in self.rows))

    def __mul__(self, other: "ProjTransform") -> "ProjTransform":
        a, b = self.rows, other.rows
        if self.n != other.n:
            N = math.lcm(self.n, other.n)
            a = tuple(tuple(c.embed_to(N) for c in row) for row in a)
            b = tuple(tuple(c.embed_to(N) for c in row) for row in b)
        return ProjTransform(linalg.mat_mul(a, b))

    def inverse(self) -> "ProjTransform":
        return ProjTransform(linalg.inverse(self.rows))

    def transpose(self) -> "ProjTransform":
        return ProjTransform(linalg.transpose(self.rows))

    def __pow__(self, k: int) -> "ProjTransform":
        if k < 0:
            return self.inverse() ** (-k)
        result = identity_transform(self.size, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_identity(self) -> bool:
        one, zero = rational(1), rational(0)
        return all(
            self.rows[i][j] == (one if i == j else zero)
            for i in range(self.size)
            for j in range(self.size)
        )

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(*linalg.mat_vec(self.rows, p.coords))

    def apply_line(self, line: ProjLine) -> ProjLine:
        inv = linalg.inverse(self.rows)
        return ProjLine(*linalg.mat_vec(linalg.transpose(inv), line.dual))

    def det(self) -> CycloElem:
        return linalg.det(self.rows)

    def trace(self) -> CycloElem:
        return sum((self.rows[i][i] for i in range(self.size)), rational(0))

    def __eq__(self, other):
        if not isinstance(other, ProjTransform):
            return NotImplemented
        if self.n == other.n:
            return self.rows == other.rows
        N = math.lcm(self.n, other.n)
        return self.embed_to(N).rows == other.embed_to(N).rows

    def __hash__(self):
        return hash(tuple(c for row in self.rows for c in row))

    def __repr__(self):
        from .cyclo import format_scalar

        body = "; ".join(
            ", ".join(format_scalar(c) for c in row) for row in self.rows
        )
        return f"ProjTransform<z{self.n}: {body}>"


def identity_transform(size: int = 3, n: int = 1) -> ProjTransform:
    t = ProjTransform(linalg.identity(size))
    return t.embed_to(n)


def canonicalize(rows) -> ProjTransform:
    """Canonical representative of a raw matrix modulo scalars."""
    return ProjTransform(rows)


def element_order(m: ProjTransform, cap: int = 600) -> int:
    """Least k >= 1 with m^k projectively the identity."""
    power = m
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power * m
    raise OrderCapExceeded(cap)


# ---------------------------------------------------------------------------
# closure


class MatrixGroup:
    """A finite closed set of canonical projective transforms."""

    def __init__(self, generators: Sequence[ProjTransform], elements: Sequence[ProjTransform]):
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._keys = {g.key() for g in self.elements}
        self._order_multiset: Optional[Counter] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.elements[0].n if self.elements else 1

    def __contains__(self, m: ProjTransform) -> bool:
        if m.n == self.n:
            return m.key() in self._keys
        if self.n % m.n == 0:
            return m.embed_to(self.n).key() in self._keys
        return any(g == m for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element_order_multiset(self) -> Counter:
        if self._order_multiset is None:
            cap = max(2 * self.order, 16)
            self._order_multiset = Counter(element_order(g, cap) for g in self.elements)
        return self._order_multiset

    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if a * b != b * a:
                    return False
        return True

    def conjugated(self, u: ProjTransform) -> "MatrixGroup":
        """The group u^-1 G u, element by element (no re-closure needed)."""
        uinv = u.inverse()
        gens = tuple(uinv * g * u for g in self.generators)
        elems = tuple(uinv * g * u for g in self.elements)
        return MatrixGroup(gens, elems)


def closure(gens: Iterable[ProjTransform], cap: int = 25000) -> MatrixGroup:
    """Breadth-first closure of the generators, deterministic ordering."""
    gens = [g if isinstance(g, ProjTransform) else ProjTransform(g) for g in gens]
    if not gens:
        ident = identity_transform()
        return MatrixGroup((), (ident,))
    n = math.lcm(*[g.n for g in gens])
    gens = [g.embed_to(n) for g in gens]
    ident = identity_transform(gens[0].size, n)
    seen = {ident.key()}
    elements = [ident]
    queue = deque([ident])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = current * g
            key = product.key()
            if key not in seen:
                seen.add(key)
                elements.append(product)
                queue.append(product)
                if len(elements) > cap:
                    raise ClosureCapExceeded(cap, len(elements))
    return MatrixGroup(tuple(gens), tuple(elements))


def subgroup_closure(group: MatrixGroup, gens: Sequence[ProjTransform], cap: int = 25000) -> MatrixGroup:
    sub = closure(gens, cap)
    for g in sub.elements:
        if g not in group:
            raise GroupError("generated subgroup leaves the ambient group")
    return sub


# ---------------------------------------------------------------------------
# eigenstructure


@dataclass(frozen=True)
class EigenStructure:
    is_identity: bool
    eigenvalues: tuple  # ((value, multiplicity), ...)
    fixed_points: tuple  # isolated fixed points
    fixed_lines: tuple  # invariant lines that are isolated in the dual
    pointwise_fixed_line: Optional[ProjLine]  # homology axis
    pencil_point: Optional[ProjPoint]  # homology center (pencil of lines)

    @property
    def is_homology(self) -> bool:
        return self.pointwise_fixed_line is not None


@dataclass(frozen=True)
class HomologyData:
    is_homology: bool
    center: Optional[ProjPoint]
    axis: Optional[ProjLine]


def _char_poly(m: ProjTransform) -> list[CycloElem]:
    """chi(x) = det(xI - M) for a 3x3 transform, low degree first."""
    a = m.rows
    t = m.trace()
    s = rational(0)
    for i in range(3):
        for j in range(i + 1, 3):
            s = s + (a[i][i] * a[j][j] - a[i][j] * a[j][i])
    d = m.det()
    return [-d, s, -t, rational(1)]


def _is_monomial(m: ProjTransform):
    """Return the permutation i -> image row if m is monomial, else None."""
    perm = {}
    for j in range(3):
        hits = [i for i in range(3) if not m.rows[i][j].is_zero()]
        if len(hits) != 1:
            return None
        perm[j] = hits[0]
    return perm


def _cube_roots_of(d: CycloElem) -> list[CycloElem]:
    root = cbrt_cyclo(d)
    return [] if root is None else [root]


def _eigenvalues_distinct(m: ProjTransform, chi: list[CycloElem], order_cap: int) -> list[CycloElem]:
    """The three distinct eigenvalues, in a large enough cyclotomic field."""
    diag = all(m.rows[i][j].is_zero() for i in range(3) for j in range(3) if i != j)
    if diag:
        return [m.rows[i][i] for i in range(3)]
    perm = _is_monomial(m)
    if perm is not None:
        values = _monomial_eigenvalues(m, perm)
        if values is not None:
            return values
    return _eigenvalues_by_ratio_search(m, chi, order_cap)


def _monomial_eigenvalues(m: ProjTransform, perm: dict) -> Optional[list[CycloElem]]:
    fixed = [j for j in range(3) if perm[j] == j]
    if len(fixed) == 1:
        k = fixed[0]
        i, j = [v for v in range(3) if v != k]
        w = m.rows[k][k]
        ab = m.rows[i][j] * m.rows[j][i]
        s = sqrt_cyclo(ab)
        if s is None:
            return None
        return [w, s, -s]
    if len(fixed) == 0:
        det = m.det()  # 3-cycles have positive sign, so lambda^3 = det
        roots = _cube_roots_of(det)
        if not roots:
            return None
        lam = roots[0]
        omega = zeta(3)
        return [lam, lam * omega, lam * omega * omega]
    return None  # two fixed columns cannot happen for a permutation


def _eigenvalues_by_ratio_search(m: ProjTransform, chi: list[CycloElem], order_cap: int) -> list[CycloElem]:
    k = element_order(m, order_cap)
    t = m.trace()
    d = m.det()
    candidates = [zeta(k, j) for j in range(1, k)]
    for ui in range(len(candidates)):
        for vi in range(ui + 1, len(candidates)):
            u, v = candidates[ui], candidates[vi]
            w = rational(1) + u + v
            if not w.is_zero():
                if t.is_zero():
                    continue
                lam = t / w
            else:
                # ratio set {1, omega, omega^2}: lambda^3 = det
                roots = _cube_roots_of(d)
                if not roots:
                    continue
                lam = roots[0]
            trio = [lam, lam * u, lam * v]
            if all(CycloElem.coerce(unipoly.eval_at(chi, x)).is_zero() for x in trio):
                return trio
    raise EigenvalueError(
        "eigenvalues do not lie in a cyclotomic field reachable by ratio search"
    )


def eigen_structure(m: ProjTransform, order_cap: int = 600) -> EigenStructure:
    """Exact eigen data of a finite-order projective transformation."""
    if m.size != 3:
        raise GroupError("eigen structure implemented for 3x3 transforms")
    if m.is_identity():
        return EigenStructure(True, (), (), (), None, None)
    chi = _char_poly(m)
    g = unipoly.gcd(chi, unipoly.derivative(chi))
    pattern = unipoly.degree(g)
    if pattern == 2:
        # triple eigenvalue on a diagonalizable (finite order) matrix would
        # be a scalar, i.e. the identity projectively
        raise EigenvalueError("non-identity transform with triple eigenvalue")
    if pattern == 1:
        a = -g[0]  # repeated eigenvalue, axis side
        b = m.det() / (a * a)
        if not CycloElem.coerce(unipoly.eval_at(chi, b)).is_zero():
            raise EigenvalueError("inconsistent homology eigenvalues")
        center = _kernel_point(m, b)
        axis = _axis_line(m, a)
        return EigenStructure(
            False,
            ((a, 2), (b, 1)),
            (center,),
            (axis,),
            axis,
            center,
        )
    values = _eigenvalues_distinct(m, chi, order_cap)
    N = math.lcm(m.n, *[v.n for v in values])
    mm = m.embed_to(N)
    points, lines = [], []
    for lam in values:
        points.append(_kernel_point(mm, lam.embed_to(N)))
        lines.append(_kernel_line(mm, lam.embed_to(N)))
    return EigenStructure(
        False,
        tuple((v, 1) for v in values),
        tuple(points),
        tuple(lines),
        None,
        None,
    )


def _shifted(m: ProjTransform, lam: CycloElem):
    n = math.lcm(m.n, lam.n)
    lam = lam.embed_to(n)
    rows = tuple(tuple(c.embed_to(n) for c in row) for row in m.rows)
    return tuple(
        tuple(rows[i][j] - (lam if i == j else rational(0)) for j in range(3))
        for i in range(3)
    )


def _kernel_point(m: ProjTransform, lam: CycloElem) -> ProjPoint:
    basis = linalg.kernel_basis(_shifted(m, lam))
    if len(basis) != 1:
        raise EigenvalueError(f"eigenvalue {lam!r} does not have a 1-dim eigenspace")
    return ProjPoint(*basis[0])


def _kernel_line(m: ProjTransform, lam: CycloElem) -> ProjLine:
    basis = linalg.kernel_basis(linalg.transpose(_shifted(m, lam)))
    if len(basis) != 1:
        raise EigenvalueError(f"eigenvalue {lam!r} is not simple for the transpose")
    return ProjLine(*basis[0])


def _axis_line(m: ProjTransform, a: CycloElem) -> ProjLine:
    shifted = _shifted(m, a)
    for row in shifted:
        if any(row):
            return ProjLine(*row)
    raise EigenvalueError("homology shift vanished entirely")


def homology_data(m: ProjTransform) -> HomologyData:
    """Classify a non-identity finite-order transform as homology or not."""
    if m.is_identity():
        raise GroupError("homology test undefined for the identity")
    eig = eigen_structure(m)
    if eig.is_homology:
        return HomologyData(True, eig.pencil_point, eig.pointwise_fixed_line)
    return HomologyData(False, None, None)


# ---------------------------------------------------------------------------
# fixed configurations


@dataclass(frozen=True)
class FixedConfiguration:
    points: tuple  # common fixed points of the group
    lines: tuple  # common invariant lines
    triangles: tuple  # invariant triangles, each a 3-tuple of ProjLine
    whole_plane: bool = False  # trivial group fixes everything


def _locus_member(p, pts, line_dual) -> bool:
    if p in pts:
        return True
    if line_dual is not None:
        return sum((a * b for a, b in zip(line_dual, p.coords)), rational(0)).is_zero()
    return False


def _intersect_loci(loci):
    """Intersect loci of the form (points, optional pointwise line).

    Works in the primal plane for fixed points and, with lines encoded as
    dual points, for invariant lines.  Returns (points, line or None).
    """
    if not loci:
        return None
    pts, line = loci[0]
    pts = list(dict.fromkeys(pts))
    for other_pts, other_line in loci[1:]:
        new_line = None
        candidates = list(pts) + list(other_pts)
        if line is not None and other_line is not None:
            if line == other_line:
                new_line = line
            else:
                crossing = _dual_cross(line, other_line)
                if crossing is not None:
                    candidates.append(crossing)
        survivors = []
        for p in dict.fromkeys(candidates):
            if new_line is not None and _locus_member(p, (), new_line):
                continue  # already represented by the common line
            if _locus_member(p, pts, line) and _locus_member(p, other_pts, other_line):
                survivors.append(p)
        pts, line = survivors, new_line
    return pts, line


def _dual_cross(l1_dual, l2_dual):
    (a1, b1, c1), (a2, b2, c2) = l1_dual, l2_dual
    coords = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
    if all(x.is_zero() for x in coords):
        return None
    return ProjPoint(*coords)


def _point_orbit(group: MatrixGroup, p: ProjPoint, limit: int) -> Optional[frozenset]:
    seen = {p}
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for g in group.generators:
                image = g.apply_point(q)
                if image not in seen:
                    if len(seen) >= limit:
                        return None
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return frozenset(seen)


def fixed_configuration(group: MatrixGroup) -> FixedConfiguration:
    """Common fixed points, invariant lines and invariant triangles."""
    nontrivial = [g for g in group.elements if not g.is_identity()]
    if not nontrivial:
        return FixedConfiguration((), (), (), whole_plane=True)

    eigens = {}
    for g in nontrivial:
        eigens[g.key()] = eigen_structure(g)

    # common fixed points: intersect over generators (a point fixed by all
    # generators is fixed by the whole group)
    gen_list = [g for g in group.generators if not g.is_identity()] or nontrivial
    point_loci = []
    line_loci = []
    for g in gen_list:
        eig = eigens.get(g.key()) or eigen_structure(g)
        if eig.is_homology:
            point_loci.append((list(eig.fixed_points), eig.pointwise_fixed_line.dual))
            line_loci.append(
                ([_line_as_dual_point(eig.pointwise_fixed_line)], eig.pencil_point.coords)
            )
        else:
            point_loci.append((list(eig.fixed_points), None))
            line_loci.append(([_line_as_dual_point(l) for l in eig.fixed_lines], None))

    fixed_pts, fixed_line = _intersect_loci(point_loci)
    common_points = list(fixed_pts)
    if fixed_line is not None:
        # a whole line of fixed points: include it as an invariant line and
        # keep its two canonical basis points among the fixed points
        base = ProjLine(*fixed_line)
        common_points.extend(base.basis_points())

    dual_pts, dual_line = _intersect_loci(line_loci)
    common_lines = [ProjLine(*p.coords) for p in dual_pts]
    if fixed_line is not None:
        line_obj = ProjLine(*fixed_line)
        if line_obj not in common_lines:
            common_lines.append(line_obj)
    if dual_line is not None:
        # a whole pencil of invariant lines through one point; record its two
        # canonical members so downstream frame choices have enough lines
        for p in ProjLine(*dual_line).basis_points():
            pencil_line = ProjLine(*p.coords)
            if pencil_line not in common_lines:
                common_lines.append(pencil_line)

    # invariant triangles from the candidate vertex search
    candidates = set()
    homology_axes = []
    for g in nontrivial:
        eig = eigens[g.key()]
        candidates.update(eig.fixed_points)
        if eig.is_homology:
            candidates.add(eig.pencil_point)
            homology_axes.append(eig.pointwise_fixed_line)
    cut_lines = homology_axes + common_lines
    for i in range(len(cut_lines)):
        for j in range(i + 1, len(cut_lines)):
            if cut_lines[i] != cut_lines[j]:
                candidates.add(meet(cut_lines[i], cut_lines[j]))

    orbits = set()
    for p in candidates:
        orbit = _point_orbit(group, p, 4)
        if orbit is not None and len(orbit) <= 3:
            orbits.add(orbit)
    orbit_list = sorted(orbits, key=lambda o: (len(o), sorted(repr(p) for p in o)))
    triangles = []
    seen_triangles = set()
    for vertex_set in _vertex_combinations(orbit_list):
        p, q, r = sorted(vertex_set, key=repr)
        if collinear(p, q, r):
            continue
        edges = frozenset({line_through(p, q), line_through(q, r), line_through(r, p)})
        if edges in seen_triangles:
            continue
        seen_triangles.add(edges)
        triangles.append(tuple(sorted(edges, key=repr)))

    points_sorted = tuple(sorted(dict.fromkeys(common_points), key=repr))
    lines_sorted = tuple(sorted(dict.fromkeys(common_lines), key=repr))
    return FixedConfiguration(points_sorted, lines_sorted, tuple(triangles))


def _line_as_dual_point(line: ProjLine) -> ProjPoint:
    return ProjPoint(*line.dual)


def _vertex_combinations(orbits):
    sizes = {1: [], 2: [], 3: []}
    for o in orbits:
        sizes[len(o)].append(o)
    for o in sizes[3]:
        yield set(o)
    for o2 in sizes[2]:
        for o1 in sizes[1]:
            if not (o2 & o1):
                yield set(o2) | set(o1)
    ones = sizes[1]
    for i in range(len(ones)):
        for j in range(i + 1, len(ones)):
            for k in range(j + 1, len(ones)):
                union = set(ones[i]) | set(ones[j]) | set(ones[k])
                if len(union) == 3:
                    yield union
