"""Isomorphism fingerprinting of small projective groups and the
block-diagonal split.

Fingerprints compare the order and element-order multiset of a group
against reference models: alternating and symmetric groups enumerated as
permutations, PSL(2, F7) as Moebius maps over F7, dihedral and cyclic
multisets from arithmetic, the three Hessian groups from closures of
their defining matrices, and the full automorphism model of the Fermat
curve as an abstract semidirect product.  A fingerprint certifies
isomorphism type only within this menagerie; anything else is reported
as `other` with its raw invariants.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .cyclo import zeta
from .projgroup import MatrixGroup, ProjTransform, closure, element_order


# ---------------------------------------------------------------------------
# reference element-order multisets


def _perm_order(perm: tuple[int, ...]) -> int:
    order = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        node = start
        while not seen[node]:
            seen[node] = True
            node = perm[node]
            length += 1
        order = math.lcm(order, length)
    return order


def _parity(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        node = start
        while not seen[node]:
            seen[node] = True
            node = perm[node]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def alternating_multiset(n: int) -> tuple[tuple[int, int], ...]:
    counter = Counter(
        _perm_order(p) for p in permutations(range(n)) if _parity(p) == 1
    )
    return tuple(sorted(counter.items()))


@lru_cache(maxsize=None)
def symmetric_multiset(n: int) -> tuple[tuple[int, int], ...]:
    counter = Counter(_perm_order(p) for p in permutations(range(n)))
    return tuple(sorted(counter.items()))


@lru_cache(maxsize=None)
def psl27_multiset() -> tuple[tuple[int, int], ...]:
    """Element orders of PSL(2, F7) acting on the 8-point projective line."""
    p = 7
    points = list(range(p)) + [p]  # p encodes infinity

    def act(a, b, c, d, z):
        if z == p:
            return (a * pow(c, p - 2, p)) % p if c % p else p
        num, den = (a * z + b) % p, (c * z + d) % p
        if den == 0:
            return p
        return (num * pow(den, p - 2, p)) % p

    perms = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        perms.add(tuple(act(a, b, c, d, z) for z in points))
    counter = Counter(_perm_order(q) for q in perms)
    return tuple(sorted(counter.items()))


def cyclic_multiset(m: int) -> tuple[tuple[int, int], ...]:
    counter = Counter(m // math.gcd(k, m) for k in range(m))
    return tuple(sorted(counter.items()))


def dihedral_multiset(m: int) -> tuple[tuple[int, int], ...]:
    counter = Counter(m // math.gcd(k, m) for k in range(m))
    counter[2] += m  # the m reflections
    return tuple(sorted(counter.items()))


def _s3_elements():
    return [p for p in permutations(range(3))]


def _fermat_model_elements(d: int):
    """Aut(F_d) as pairs (torus class, coordinate permutation): the torus is
    Z_d^3 modulo the diagonal, a permutation acts by permuting exponents."""
    elements = []
    for a in range(d):
        for b in range(d):
            for perm in _s3_elements():
                elements.append(((a, b, 0), perm))
    return elements


def _fermat_model_mul(x, y, d):
    (v, p), (w, q) = x, y
    moved = [0, 0, 0]
    for i in range(3):
        moved[p[i]] = w[i]  # conjugating the torus by the permutation
    combined = tuple((v[i] + moved[i]) % d for i in range(3))
    norm = tuple((combined[i] - combined[2]) % d for i in range(3))
    comp = tuple(p[q[i]] for i in range(3))
    return (norm, comp)


@lru_cache(maxsize=None)
def fermat_model_multiset(d: int) -> tuple[tuple[int, int], ...]:
    identity = ((0, 0, 0), (0, 1, 2))
    counter: Counter = Counter()
    for g in _fermat_model_elements(d):
        power, order = g, 1
        while power != identity:
            power = _fermat_model_mul(power, g, d)
            order += 1
        counter[order] += 1
    return tuple(sorted(counter.items()))


def _hessian_matrices() -> list[ProjTransform]:
    w = zeta(3)
    h1 = ProjTransform(((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    h2 = ProjTransform(((1, 0, 0), (0, w, 0), (0, 0, w * w)))
    h3 = ProjTransform(((1, 1, 1), (1, w, w * w), (1, w * w, w)))
    h4 = ProjTransform(((1, 0, 0), (0, w, 0), (0, 0, w)))
    return [h1, h2, h3, h4]


@lru_cache(maxsize=None)
def hessian_reference(order: int) -> tuple[tuple[int, int], ...]:
    """Element-order multiset of the Hessian group (216) or its primitive
    subgroups of order 72 and 36."""
    h1, h2, h3, h4 = _hessian_matrices()
    if order == 216:
        group = closure([h1, h2, h3, h4])
    elif order == 72:
        group = closure([h1, h2, h3, h4.inverse() * h3 * h4])
    elif order == 36:
        group = closure([h1, h2, h3])
    else:
        raise ValueError(f"no Hessian reference of order {order}")
    assert group.order == order
    return tuple(sorted(group.element_order_multiset().items()))


# ---------------------------------------------------------------------------
# fingerprint


@dataclass(frozen=True)
class GroupLabel:
    kind: str  # cyclic | dihedral | A4 | S4 | A5 | A6 | PSL27 |
    #            hessian216 | hessian72 | hessian36 | fermat_semidirect | other
    order: int
    m: Optional[int] = None  # cyclic order parameter, or d for the Fermat label
    multiset: Optional[tuple] = None  # populated for `other`

    def __str__(self):
        if self.kind == "cyclic":
            return f"Z_{self.m}"
        if self.kind == "dihedral":
            return f"D_{self.order}"
        if self.kind == "fermat_semidirect":
            return f"Z_{self.m}^2:S_3"
        if self.kind == "other":
            return f"other(order={self.order}, orders={dict(self.multiset or ())})"
        return {
            "A4": "A_4",
            "S4": "S_4",
            "A5": "A_5",
            "A6": "A_6",
            "PSL27": "PSL(2,F_7)",
            "hessian216": "Hessian_216",
            "hessian72": "Hessian_72",
            "hessian36": "Hessian_36",
        }[self.kind]


def multiset_of(group: MatrixGroup) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(group.element_order_multiset().items()))


def _max_order(ms) -> int:
    return max(order for order, _ in ms)


def fingerprint(group: MatrixGroup) -> GroupLabel:
    """Identify the group against the classification's candidate list."""
    o = group.order
    ms = multiset_of(group)
    if o == 12 and ms == alternating_multiset(4):
        return GroupLabel("A4", o)
    if o == 24 and ms == symmetric_multiset(4):
        return GroupLabel("S4", o)
    if o == 60 and ms == alternating_multiset(5):
        return GroupLabel("A5", o)
    if o == 360 and ms == alternating_multiset(6):
        return GroupLabel("A6", o)
    if o == 168 and ms == psl27_multiset():
        return GroupLabel("PSL27", o)
    for hess in (216, 72, 36):
        if o == hess and ms == hessian_reference(hess):
            return GroupLabel(f"hessian{hess}", o)
    if o % 6 == 0:
        d2 = o // 6
        d = math.isqrt(d2)
        if d >= 2 and d * d == d2 and ms == fermat_model_multiset(d):
            return GroupLabel("fermat_semidirect", o, m=d)
    if _max_order(ms) == o:
        return GroupLabel("cyclic", o, m=o)
    if o % 2 == 0 and ms == dihedral_multiset(o // 2):
        return GroupLabel("dihedral", o, m=o // 2)
    return GroupLabel("other", o, multiset=ms)


# ---------------------------------------------------------------------------
# the block-diagonal subgroup PBD(2,1) and its split


@dataclass(frozen=True)
class PbdSplit:
    member: bool
    kernel_order: Optional[int] = None
    kernel_is_cyclic: Optional[bool] = None
    image_order: Optional[int] = None
    image_label: Optional[GroupLabel] = None
    m: Optional[int] = None  # cyclic/dihedral parameter of the image


def _block_shape(g: ProjTransform) -> bool:
    r = g.rows
    return all(r[i][j].is_zero() for i, j in ((0, 2), (1, 2), (2, 0), (2, 1)))


def _is_kernel_element(g: ProjTransform) -> bool:
    r = g.rows
    return (
        _block_shape(g)
        and r[0][1].is_zero()
        and r[1][0].is_zero()
        and r[0][0] == r[1][1]
    )


def _image_element(g: ProjTransform) -> ProjTransform:
    return ProjTransform(((g.rows[0][0], g.rows[0][1]), (g.rows[1][0], g.rows[1][1])))


def pbd_split(group: MatrixGroup) -> PbdSplit:
    """Split a subgroup of PBD(2,1) along the restriction map to PGL(2).

    The group must already be in standard position (the caller conjugates
    the common fixed point to (0:0:1) and the invariant line to Z=0);
    member=False is returned when some element breaks the block shape.
    """
    if not all(_block_shape(g) for g in group.elements):
        return PbdSplit(member=False)
    kernel = [g for g in group.elements if _is_kernel_element(g)]
    image = {}
    for g in group.elements:
        h = _image_element(g)
        image.setdefault(h.key(), h)
    image_elements = list(image.values())
    image_order = len(image_elements)
    kernel_order = len(kernel)
    order_cap = max(2 * image_order, 16)
    image_ms = tuple(
        sorted(Counter(element_order(h, order_cap) for h in image_elements).items())
    )
    label, m = _pgl2_label(image_order, image_ms)
    kernel_cyclic = any(
        element_order(g, max(2 * kernel_order, 16)) == kernel_order for g in kernel
    )
    return PbdSplit(
        member=True,
        kernel_order=kernel_order,
        kernel_is_cyclic=kernel_cyclic,
        image_order=image_order,
        image_label=label,
        m=m,
    )


def _pgl2_label(order: int, ms) -> tuple[GroupLabel, Optional[int]]:
    if order == 12 and ms == alternating_multiset(4):
        return GroupLabel("A4", order), None
    if order == 24 and ms == symmetric_multiset(4):
        return GroupLabel("S4", order), None
    if order == 60 and ms == alternating_multiset(5):
        return GroupLabel("A5", order), None
    if _max_order(ms) == order:
        return GroupLabel("cyclic", order, m=order), order
    if order % 2 == 0 and ms == dihedral_multiset(order // 2):
        return GroupLabel("dihedral", order, m=order // 2), order // 2
    return GroupLabel("other", order, multiset=ms), None
