"""Small exact matrix helpers over cyclotomic scalars.

Matrices are tuples of row tuples of CycloElem.  Only the tiny sizes the
package needs (2x2 and 3x3) are supported by the closed-form routines;
kernel computation works for any size via Gaussian elimination.
"""

from __future__ import annotations

from .cyclo import CycloElem, rational

Mat = tuple[tuple[CycloElem, ...], ...]


def mat_from(rows) -> Mat:
    return tuple(tuple(CycloElem.coerce(c) for c in row) for row in rows)


def identity(size: int) -> Mat:
    one, zero = rational(1), rational(0)
    return tuple(
        tuple(one if i == j else zero for j in range(size)) for i in range(size)
    )


def mat_mul(a: Mat, b: Mat) -> Mat:
    size = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(size)), rational(0))
            for j in range(size)
        )
        for i in range(size)
    )


def mat_vec(a: Mat, v) -> tuple[CycloElem, ...]:
    return tuple(sum((row[k] * v[k] for k in range(len(v))), rational(0)) for row in a)


def transpose(a: Mat) -> Mat:
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


def mat_scale(a: Mat, c) -> Mat:
    return tuple(tuple(entry * c for entry in row) for row in a)


def det(a: Mat) -> CycloElem:
    if len(a) == 1:
        return a[0][0]
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if len(a) == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise ValueError(f"unsupported matrix size {len(a)}")


def adjugate3(a: Mat) -> Mat:
    def cof(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        minor = a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
        return minor if (i + j) % 2 == 0 else -minor

    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def inverse(a: Mat) -> Mat:
    d = det(a)
    if d.is_zero():
        raise ZeroDivisionError("singular matrix")
    if len(a) == 2:
        return (
            (a[1][1] / d, -a[0][1] / d),
            (-a[1][0] / d, a[0][0] / d),
        )
    if len(a) == 3:
        adj = adjugate3(a)
        return tuple(tuple(entry / d for entry in row) for row in adj)
    raise ValueError(f"unsupported matrix size {len(a)}")


def kernel_basis(a: Mat) -> list[tuple[CycloElem, ...]]:
    """Basis of the right kernel, by fraction-full Gaussian elimination."""
    nrows, ncols = len(a), len(a[0])
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = rational(0), rational(1)
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for ri, pc in enumerate(pivots):
            vec[pc] = -rows[ri][fc]
        basis.append(tuple(vec))
    return basis
