"""Genus-based upper bounds for automorphism groups of curves.

Hurwitz's bound with its refined ratio list, the Oikawa and Arakawa
inequalities for groups with invariant finite subsets, and the per-case
order bounds of the plane-curve classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

QQ = Fraction

# admissible values of |G|/(g-1) above 24
HURWITZ_RATIOS = (QQ(84), QQ(48), QQ(40), QQ(36), QQ(30), QQ(132, 5))


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    name: str
    inputs: dict
    value: int
    ratios: Optional[tuple] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "inputs": dict(self.inputs), "value": self.value}
        if self.ratios is not None:
            out["ratios"] = [str(r) for r in self.ratios]
        return out


def hurwitz(g: int) -> BoundReport:
    """|G| <= 84(g-1), with the refined list of admissible ratios."""
    if g < 2:
        raise BoundsError(f"Hurwitz bound needs genus >= 2, got {g}")
    return BoundReport("hurwitz", {"g": g}, 84 * (g - 1), HURWITZ_RATIOS)


def hurwitz_admits(g: int, order: int) -> bool:
    """Whether the refined ratio list allows a group of this order."""
    ratio = QQ(order, g - 1)
    return ratio <= 24 or ratio in HURWITZ_RATIOS


def oikawa(g: int, k: int) -> BoundReport:
    """|G| <= 12(g-1) + 6k for a group with an invariant k-point subset."""
    if g < 2:
        raise BoundsError(f"Oikawa bound needs genus >= 2, got {g}")
    if k < 1:
        raise BoundsError(f"Oikawa bound needs an invariant set of size >= 1, got {k}")
    return BoundReport("oikawa", {"g": g, "k": k}, 12 * (g - 1) + 6 * k)


def arakawa(g: int, k1: int, k2: int, k3: int) -> BoundReport:
    """|G| <= 2(g-1) + k1 + k2 + k3 for three distinct invariant subsets."""
    if g < 2:
        raise BoundsError(f"Arakawa bound needs genus >= 2, got {g}")
    if min(k1, k2, k3) < 1:
        raise BoundsError("Arakawa bound needs nonempty invariant sets")
    return BoundReport(
        "arakawa", {"g": g, "k1": k1, "k2": k2, "k3": k3}, 2 * (g - 1) + k1 + k2 + k3
    )


CASE_LABELS = ("a-i", "a-ii", "b-i", "b-ii", "c")


def case_bound(case: str, d: int) -> int:
    """The order bound attached to each case of the classification."""
    if d < 4:
        raise BoundsError(f"case bounds apply to degree >= 4, got {d}")
    if case == "a-i":
        return d * (d - 1)
    if case == "a-ii":
        return max(2 * d * (d - 2), 60 * d)
    if case == "b-i":
        return 6 * d * d
    if case == "b-ii":
        return 3 * (d * d - 3 * d + 3) if d >= 5 else 168
    if case == "c":
        return 360
    raise BoundsError(f"unknown case label {case!r}")
