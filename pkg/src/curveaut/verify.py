"""Named verification suites over the curve families.

Each suite runs a fixed list of exact checks (closure orders, splits,
Galois points, homology laws, bound pipelines, audits) and returns a
deterministic structured result.  The same suites back the CLI `verify`
subcommand, the service endpoint and the acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from . import bounds as bounds_mod
from .classify import classify, theorem2_audit, theorem3_audit
from .curves import (
    descendant_check,
    dcurve_form,
    fprime_form,
    fdoubleprime_form,
    galois_group_at,
    hessian_generators,
    make_family,
)
from .cyclo import rational, zeta
from .groupid import fingerprint, pbd_split
from .polyring import (
    ProjPoint,
    form_from_monomials,
    genus,
    is_smooth,
    lies_on,
    preserves_up_to_scalar,
    substitute,
)
from .projgroup import (
    MatrixGroup,
    ProjTransform,
    closure,
    eigen_structure,
    element_order,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


class _Checks:
    def __init__(self):
        self.results: list[CheckResult] = []

    def add(self, name: str, passed: bool, detail: str = ""):
        self.results.append(CheckResult(name, bool(passed), detail))

    def equal(self, name: str, actual, expected):
        self.add(name, actual == expected, f"{actual} (expected {expected})")


@lru_cache(maxsize=None)
def family_group(label: str, d: int, lam=None, cap: int = 25000) -> MatrixGroup:
    inst = make_family(label, d, lam)
    return closure(inst.standard_generators, cap)


def _homology_law(checks: _Checks, name: str, form, group: MatrixGroup):
    """Homology orders divide d-1 (center on curve) or d (center off);
    non-homologies have exactly three fixed points."""
    d = form.degree
    ok = True
    detail = ""
    for g in group.elements:
        if g.is_identity():
            continue
        eig = eigen_structure(g)
        if eig.is_homology:
            order = element_order(g, 2 * group.order)
            divisor = d - 1 if lies_on(form, eig.pencil_point) else d
            if divisor % order != 0:
                ok = False
                detail = f"homology of order {order} violates divisor {divisor}"
                break
        else:
            if len(eig.fixed_points) != 3:
                ok = False
                detail = f"non-homology with {len(eig.fixed_points)} fixed points"
                break
    checks.add(name, ok, detail)


def suite_fermat(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    for d in (4, 5, 6, 7, 8):
        group = family_group("fermat", d, None, cap)
        checks.equal(f"fermat d={d} closure order", group.order, 6 * d * d)
        label = fingerprint(group)
        checks.add(
            f"fermat d={d} fingerprint",
            label.kind == "fermat_semidirect" and label.m == d,
            str(label),
        )
    for d in (4, 5, 6, 7, 8):
        inst = make_family("fermat", d)
        _homology_law(checks, f"fermat d={d} homology law", inst.form, family_group("fermat", d, None, cap))
    oik = bounds_mod.oikawa(genus(5), 3 * 5).value
    checks.equal("oikawa(genus(5), 15) matches the d=5 closure order", oik, 150)
    checks.equal("fermat d=5 closure equals the bound", family_group("fermat", 5).order, oik)
    return SuiteResult("fermat", tuple(checks.results))


def suite_klein(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    for d, expected in ((5, 39), (6, 63), (7, 93)):
        group = family_group("klein", d, None, cap)
        checks.equal(f"klein d={d} closure order", group.order, expected)
        checks.add(
            f"klein d={d} has no involution",
            2 not in group.element_order_multiset(),
            str(dict(group.element_order_multiset())),
        )
    quartic = family_group("kleinquartic", 4, None, cap)
    checks.equal("klein quartic generators give order", quartic.order, 21)
    for d in (5, 6, 7):
        inst = make_family("klein", d)
        _homology_law(checks, f"klein d={d} homology law", inst.form, family_group("klein", d, None, cap))
    checks.equal("oikawa(genus(5), 3)", bounds_mod.oikawa(genus(5), 3).value, 78)
    checks.add(
        "oikawa(genus(5), 3) dominates the d=5 order",
        bounds_mod.oikawa(genus(5), 3).value >= 39,
    )
    return SuiteResult("klein", tuple(checks.results))


def suite_fdd1(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    for d in (5, 6, 7):
        inst = make_family("fdd1", d)
        group = family_group("fdd1", d, None, cap)
        checks.equal(f"fdd1 d={d} closure order", group.order, d * (d - 1))
        checks.add(
            f"fdd1 d={d} cyclic",
            max(group.element_order_multiset()) == group.order,
            str(dict(group.element_order_multiset())),
        )
        _homology_law(checks, f"fdd1 d={d} homology law", inst.form, group)
    inst = make_family("fdd1", 5)
    group = family_group("fdd1", 5, None, cap)
    report = classify(inst.form, group)
    checks.equal("fdd1 d=5 primary case", report.primary, "a-i")
    checks.equal(
        "fdd1 d=5 fixed point",
        report.witnesses.get("fixed_point_on_curve", {}).get("coords"),
        ["0", "0", "1"],
    )
    galois = galois_group_at(inst.form, group, ProjPoint(0, 0, 1))
    checks.equal("fdd1 d=5 inner Galois verdict", galois.verdict, "inner")
    checks.equal("fdd1 d=5 Galois group order", galois.subgroup_order, 4)
    checks.equal("arakawa(6,1,1,4)", bounds_mod.arakawa(6, 1, 1, 4).value, 16)
    return SuiteResult("fdd1", tuple(checks.results))


def suite_dcurve(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    for d in (5, 7, 8):
        inst = make_family("dcurve", d)
        group = family_group("dcurve", d, None, cap)
        checks.equal(f"dcurve d={d} closure order", group.order, 2 * d * (d - 2))
        split = pbd_split(group)
        checks.add(f"dcurve d={d} block member", split.member)
        checks.equal(f"dcurve d={d} kernel order", split.kernel_order, d)
        checks.add(
            f"dcurve d={d} image dihedral of order 2(d-2)",
            split.image_label is not None
            and split.image_label.kind == "dihedral"
            and split.image_order == 2 * (d - 2),
            str(split.image_label),
        )
        galois = galois_group_at(inst.form, group, ProjPoint(0, 0, 1))
        checks.equal(f"dcurve d={d} outer Galois verdict", galois.verdict, "outer")
        checks.equal(f"dcurve d={d} Galois group order", galois.subgroup_order, d)
        _homology_law(checks, f"dcurve d={d} homology law", inst.form, group)
    # degree 4: the substitution X -> X+iY, Y -> X-iY transforms the quartic
    # into Z^4 + 2(X^4 - Y^4) exactly
    i = zeta(4)
    transformed = substitute(dcurve_form(4), ((1, i, 0), (1, -i, 0), (0, 0, 1)))
    expected = form_from_monomials(4, [(0, 0, 4, 1), (4, 0, 0, 2), (0, 4, 0, -2)])
    checks.add("dcurve d=4 substitution identity", transformed == expected)
    return SuiteResult("dcurve", tuple(checks.results))


def suite_fprime(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    inst = make_family("fprime", 6, 2)
    group = family_group("fprime", 6, 2, cap)
    checks.equal("fprime (6, lambda=2) closure order", group.order, 72)
    cert = descendant_check(inst.form, group, "fermat")
    checks.add("fprime descends from the Fermat sextic", cert.is_descendant)
    report = is_smooth(fprime_form(6, rational(1)))
    checks.add(
        "fprime lambda=1 rejected with witness (1:1:1)",
        not report.smooth and report.witness == ProjPoint(1, 1, 1),
        repr(report.witness),
    )
    _homology_law(checks, "fprime homology law", inst.form, group)
    return SuiteResult("fprime", tuple(checks.results))


def suite_fdoubleprime(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    inst = make_family("fdoubleprime", 8, 1)
    group = family_group("fdoubleprime", 8, 1, cap)
    checks.equal("fdoubleprime (8, lambda=1) closure order", group.order, 96)
    cert = descendant_check(inst.form, group, "fermat")
    checks.add("fdoubleprime descends from the Fermat octic", cert.is_descendant)
    report = is_smooth(fdoubleprime_form(8, rational(-1)))
    checks.add(
        "fdoubleprime lambda=-1 rejected with witness (1:1:1)",
        not report.smooth and report.witness == ProjPoint(1, 1, 1),
        repr(report.witness),
    )
    _homology_law(checks, "fdoubleprime homology law", inst.form, group)
    return SuiteResult("fdoubleprime", tuple(checks.results))


def suite_hessian(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    inst = make_family("hessian6", 6)
    h1, h2, h3, h4 = hessian_generators()
    full = family_group("hessian6", 6, None, cap)
    checks.equal("hessian full closure order", full.order, 216)
    sub36 = closure([h1, h2, h3], cap)
    checks.equal("hessian <h1,h2,h3> order", sub36.order, 36)
    u = h4.inverse() * h3 * h4
    sub72 = closure([h1, h2, h3, u], cap)
    checks.equal("hessian <h1,h2,h3,u> order (u an order-4 conjugate of h3)", sub72.order, 72)
    literal = h1.inverse() * (h4 * h4) * h1
    checks.equal(
        "conjugating h4^2 by h1 instead generates the full group",
        closure([h1, h2, h3, literal], cap).order,
        216,
    )
    for name, group in (("216", full), ("36", sub36), ("72", sub72)):
        ok = all(
            preserves_up_to_scalar(inst.form, g) is not None for g in group.generators
        )
        checks.add(f"hessian {name}-group preserves the sextic", ok)
    report = classify(inst.form, full)
    checks.equal("hessian classify primary", report.primary, "c")
    checks.equal(
        "hessian primitive label",
        report.witnesses.get("primitive_label"),
        "Hessian_216",
    )
    cert = descendant_check(inst.form, full, "fermat")
    checks.add("hessian sextic is not a Fermat descendant", not cert.is_descendant)
    for name, group in (("216", full), ("36", sub36), ("72", sub72)):
        _homology_law(checks, f"hessian {name} homology law", inst.form, group)
    return SuiteResult("hessian", tuple(checks.results))


def suite_galois(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    inner = galois_group_at(
        make_family("fdd1", 5).form, family_group("fdd1", 5, None, cap), ProjPoint(0, 0, 1)
    )
    checks.add(
        "fdd1 d=5 projects with inner Galois point of order 4",
        inner.verdict == "inner" and inner.subgroup_order == 4,
    )
    outer = galois_group_at(
        make_family("dcurve", 8).form, family_group("dcurve", 8, None, cap), ProjPoint(0, 0, 1)
    )
    checks.add(
        "dcurve d=8 projects with outer Galois point of order 8",
        outer.verdict == "outer" and outer.subgroup_order == 8,
    )
    none = galois_group_at(
        make_family("fermat", 5).form, family_group("fermat", 5, None, cap), ProjPoint(1, 1, 1)
    )
    checks.add(
        "fermat d=5 has no Galois structure at (1:1:1)",
        none.verdict == "none" and none.subgroup_order == 1,
    )
    return SuiteResult("galois", tuple(checks.results))


def suite_theorem2(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    for d in (4, 5, 6, 7, 8):
        report = theorem2_audit(d, cap=cap)
        checks.add(f"theorem2 audit d={d}", report.ok)
    wiman = make_family("wiman6", 6)
    smooth = is_smooth(wiman.form)
    checks.add("wiman sextic is smooth", smooth.smooth)
    checks.equal("wiman genus", genus(6), 10)
    checks.add("hurwitz refinement admits 360 at genus 10", bounds_mod.hurwitz_admits(10, 360))
    checks.equal("hurwitz(3)", bounds_mod.hurwitz(3).value, 168)
    return SuiteResult("theorem2", tuple(checks.results))


def suite_theorem3(cap: int = 25000) -> SuiteResult:
    checks = _Checks()
    report = theorem3_audit(60)
    checks.add("theorem3 formula audit d=60", report.ok)
    values = {r.family: r.expected_order for r in report.rows if r.note == "formula"}
    checks.equal(
        "theorem3 d=60 exceptional orders",
        [values.get(f) for f in ("fermat", "klein", "dcurve", "fprime", "fdoubleprime")],
        [21600, 10269, 6960, 7200, 5400],
    )
    checks.add("theorem3 d=60 all exceed 3600", all(v > 3600 for k, v in values.items() if k != "fdd1"))
    cross = theorem3_audit(8, cap=cap)
    checks.add("theorem3 closure cross-check d=8", cross.ok)
    verified = {
        r.family: r.verified_order for r in cross.rows if r.note.startswith("closure")
    }
    checks.equal(
        "theorem3 d=8 closure orders",
        [verified.get(f) for f in ("fermat", "klein", "dcurve", "fdoubleprime")],
        [384, 129, 96, 96],
    )
    prime_d = theorem3_audit(61)
    families = {r.family for r in prime_d.rows}
    checks.add(
        "theorem3 d=61 drops the divisibility families",
        "fprime" not in families and "fdoubleprime" not in families,
    )
    return SuiteResult("theorem3", tuple(checks.results))


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "fermat": suite_fermat,
    "klein": suite_klein,
    "fdd1": suite_fdd1,
    "dcurve": suite_dcurve,
    "fprime": suite_fprime,
    "fdoubleprime": suite_fdoubleprime,
    "hessian": suite_hessian,
    "galois": suite_galois,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
}


def run_suite(name: str, cap: int = 25000) -> list[SuiteResult]:
    """Run one named suite, or all of them in a fixed order."""
    if name == "all":
        return [SUITES[key](cap) for key in SUITES]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return [SUITES[name](cap)]
