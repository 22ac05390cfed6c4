"""Tests for the classification decision procedure and the audits."""

import pytest

from curveaut import classify as classify_mod
from curveaut.classify import (
    ClassifyError,
    classify,
    theorem2_audit,
    theorem3_audit,
    verify_action,
)
from curveaut.curves import make_family
from curveaut.cyclo import zeta
from curveaut.polyring import ProjPoint, form_from_monomials
from curveaut.projgroup import ProjTransform, closure


def family_group(label, d, lam=None, cap=25000):
    inst = make_family(label, d, lam)
    return inst, closure(inst.standard_generators, cap)


class TestVerifyAction:
    def test_fermat_generators_verified(self):
        inst = make_family("fermat", 4)
        group = verify_action(inst.form, inst.standard_generators)
        assert group.order == 96

    def test_non_automorphism_rejected(self):
        inst = make_family("fermat", 4)
        shear = ProjTransform(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
        with pytest.raises(ClassifyError, match="generator #0"):
            verify_action(inst.form, [shear])

    def test_singular_curve_rejected(self):
        # X^6+Y^6+Z^6 - 3 X^2Y^2Z^2 is singular (the excluded parameter)
        from curveaut.curves import fprime_form
        from curveaut.cyclo import rational

        form = fprime_form(6, rational(1))
        with pytest.raises(ClassifyError, match="singular"):
            verify_action(form, [])

    def test_hessian_216(self):
        inst = make_family("hessian6", 6)
        group = verify_action(inst.form, inst.standard_generators)
        assert group.order == 216


class TestClassify:
    def test_fdd1_primary_ai(self):
        inst, group = family_group("fdd1", 5)
        report = classify(inst.form, group)
        assert report.primary == "a-i"
        assert report.witnesses["cyclic"]
        assert report.witnesses["fixed_point_on_curve"]["coords"] == ["0", "0", "1"]
        assert group.order == 20
        # the same group also fixes points off the curve
        assert "a-ii" in report.cases
        assert all(row["ok"] for row in report.bounds)

    def test_dcurve8_primary_aii(self):
        inst, group = family_group("dcurve", 8)
        report = classify(inst.form, group)
        assert report.primary == "a-ii"
        assert report.witnesses["kernel_order"] == 8
        assert report.witnesses["image_label"] == "D_12"
        assert report.witnesses["m"] == 6
        assert report.witnesses["dihedral_side_condition"]
        assert report.witnesses["fixed_point_off_curve"]["coords"] == ["0", "0", "1"]

    def test_fermat_primary_bi(self):
        inst, group = family_group("fermat", 5)
        report = classify(inst.form, group)
        assert report.primary == "b-i"
        assert report.cases == ["b-i"]
        assert report.witnesses["ancestor"] == "fermat"

    def test_klein_primary_bii(self):
        inst, group = family_group("klein", 5)
        report = classify(inst.form, group)
        assert report.primary == "b-ii"
        assert report.witnesses["ancestor"] == "klein"
        assert all(row["ok"] for row in report.bounds)

    def test_fprime_descendant_case(self):
        inst, group = family_group("fprime", 6, 2)
        report = classify(inst.form, group)
        assert report.primary == "b-i"
        assert report.witnesses["ancestor"] == "fermat"

    def test_hessian_primary_c(self):
        inst, group = family_group("hessian6", 6)
        report = classify(inst.form, group)
        assert report.primary == "c"
        assert report.cases == ["c"]
        assert report.witnesses["primitive_label"] == "Hessian_216"

    def test_hessian_subgroups_case_c(self):
        inst = make_family("hessian6", 6)
        h1, h2, h3, h4 = inst.standard_generators
        group36 = closure([h1, h2, h3])
        report = classify(inst.form, group36)
        assert report.primary == "c"
        assert report.witnesses["primitive_label"] == "Hessian_36"
        group72 = closure([h1, h2, h3, h4.inverse() * h3 * h4])
        report = classify(inst.form, group72)
        assert report.witnesses["primitive_label"] == "Hessian_72"

    def test_subgroup_monotonicity(self):
        # bound audits never fail on generated subgroups
        inst = make_family("fermat", 4)
        z = zeta(4)
        subgroup_gens = [
            [ProjTransform(((0, 1, 0), (0, 0, 1), (1, 0, 0)))],
            [ProjTransform(((z, 0, 0), (0, 1, 0), (0, 0, 1)))],
            list(inst.standard_generators[:2]),
        ]
        for gens in subgroup_gens:
            group = closure(gens)
            report = classify(inst.form, group)
            assert all(row["ok"] for row in report.bounds), report.to_dict()

    def test_report_roundtrip_shape(self):
        inst, group = family_group("fdd1", 5)
        data = classify(inst.form, group).to_dict()
        assert set(data) == {
            "degree",
            "order",
            "cases",
            "primary",
            "witnesses",
            "bounds",
            "flags",
        }


class TestClaims:
    def test_claim_a_kernel_cyclic_divides_d(self):
        # in every verified a-ii split the kernel is cyclic of order dividing d
        for label, d, lam in (("dcurve", 5, None), ("dcurve", 8, None), ("fdd1", 5, None)):
            inst, group = family_group(label, d, lam)
            report = classify(inst.form, group)
            if "a-ii" in report.cases:
                assert report.witnesses["kernel_cyclic"]
                assert d % report.witnesses["kernel_order"] == 0

    def test_claim_b_contrapositive(self):
        # a nontrivial kernel forces transversal intersections at P1 and P2
        from curveaut.polyring import ProjLine, intersection_multiplicity, lies_on

        inst, group = family_group("dcurve", 8)
        report = classify(inst.form, group)
        assert report.witnesses["kernel_order"] > 1
        line = ProjLine(0, 0, 1)
        for point in (ProjPoint(1, 0, 0), ProjPoint(0, 1, 0)):
            if lies_on(inst.form, point):
                assert intersection_multiplicity(inst.form, line, point) <= 1

    def test_claim_d_dihedral_parameter_divides_d_minus_1(self):
        # a dihedral image on a curve meeting the fixed line only at P1, P2
        # has m dividing d-1; X^2Y^2 + X^3Z + Y^3Z + Z^4 is such a quartic
        form = form_from_monomials(
            4, [(2, 2, 0, 1), (3, 0, 1, 1), (0, 3, 1, 1), (0, 0, 4, 1)]
        )
        w = zeta(3)
        sigma = ProjTransform(((w, 0, 0), (0, w * w, 0), (0, 0, 1)))
        tau = ProjTransform(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        group = verify_action(form, [sigma, tau])
        report = classify(form, group)
        assert "a-ii" in report.cases
        assert report.witnesses["image_label"] == "D_6"
        m = report.witnesses["m"]
        assert (form.degree - 1) % m == 0


class TestAudits:
    def test_theorem2_d5(self):
        report = theorem2_audit(5)
        assert report.ok
        orders = {
            row.family: (row.verified_order or row.expected_order) for row in report.rows
        }
        assert max(orders.values()) == 150
        assert orders["fermat"] == 150

    def test_theorem2_d4_klein_quartic_exception(self):
        report = theorem2_audit(4)
        assert report.ok
        row = next(r for r in report.rows if r.family == "kleinquartic")
        assert row.exceptional and row.expected_order == 168

    def test_theorem2_d6_hessian_attains_bound(self):
        report = theorem2_audit(6)
        assert report.ok
        hess = next(r for r in report.rows if r.family == "hessian6")
        assert hess.verified_order == 216 == 6 * 36
        wiman = next(r for r in report.rows if r.family == "wiman6")
        assert wiman.exceptional and wiman.expected_order == 360

    def test_theorem3_d60_values(self):
        report = theorem3_audit(60)
        assert report.ok
        values = {row.family: row.expected_order for row in report.rows if row.note == "formula"}
        assert values == {
            "fermat": 21600,
            "klein": 10269,
            "dcurve": 6960,
            "fprime": 7200,
            "fdoubleprime": 5400,
            "fdd1": 3540,
        }
        assert all(v > 3600 for f, v in values.items() if f != "fdd1")
        assert values["fdd1"] <= 3600

    def test_theorem3_d61_applicability(self):
        report = theorem3_audit(61)
        families = {row.family for row in report.rows}
        assert "fprime" not in families and "fdoubleprime" not in families

    def test_theorem3_d8_closure_crosscheck(self):
        report = theorem3_audit(8)
        assert report.ok
        verified = {
            row.family: row.verified_order
            for row in report.rows
            if row.note.startswith("closure")
        }
        assert verified["fermat"] == 384
        assert verified["klein"] == 129
        assert verified["dcurve"] == 96
        assert verified["fdoubleprime"] == 96
        assert verified["fdd1"] == 56
