"""Tests for the named curve families, Galois points and descendants."""

from fractions import Fraction as QQ

import pytest

from curveaut import curves
from curveaut.curves import (
    descendant_check,
    galois_group_at,
    hessian_generators,
    make_family,
)
from curveaut.cyclo import rational, zeta
from curveaut.polyring import ProjPoint, lies_on
from curveaut.projgroup import closure, element_order


class TestMakeFamily:
    def test_fermat5(self):
        inst = make_family("fermat", 5)
        assert inst.expected_order == 150
        assert closure(inst.standard_generators).order == 150

    def test_fprime_6_lambda2(self):
        inst = make_family("fprime", 6, 2)
        assert inst.expected_order == 72
        assert closure(inst.standard_generators).order == 72

    def test_fdoubleprime_8_lambda1(self):
        inst = make_family("fdoubleprime", 8, 1)
        assert inst.expected_order == 96
        assert closure(inst.standard_generators).order == 96

    def test_fprime_rejects_bad_lambda(self):
        with pytest.raises(curves.FamilyError):
            make_family("fprime", 6, 1)
        with pytest.raises(curves.FamilyError):
            make_family("fprime", 6, 0)
        with pytest.raises(curves.FamilyError):
            make_family("fprime", 6, zeta(3))  # a cube root of unity

    def test_fdoubleprime_rejects_excluded_lambda(self):
        for bad in (0, -1, 2, -2):
            with pytest.raises(curves.FamilyError):
                make_family("fdoubleprime", 8, bad)

    def test_klein_orders(self):
        for d, expected in ((5, 39), (6, 63), (7, 93)):
            inst = make_family("klein", d)
            assert inst.expected_order == expected

    def test_kleinquartic_partial(self):
        inst = make_family("kleinquartic", 4)
        assert inst.expected_order == 168
        assert not inst.generators_are_full_group
        assert closure(inst.standard_generators).order == 21

    def test_wiman_smooth_no_generators(self):
        inst = make_family("wiman6", 6)
        assert inst.standard_generators == ()
        assert inst.expected_order == 360

    def test_dcurve_special_degrees_flagged(self):
        assert not make_family("dcurve", 4).generators_are_full_group
        assert not make_family("dcurve", 6).generators_are_full_group
        assert make_family("dcurve", 5).generators_are_full_group

    def test_generator_scalars_recorded(self):
        from curveaut.polyring import transform_action

        inst = make_family("klein", 5)
        # scalars certify invariance for the canonical representatives
        for g, scalar in zip(inst.standard_generators, inst.generator_scalars):
            assert transform_action(inst.form, g) == inst.form.scaled(scalar)
        assert inst.generator_scalars[1] == rational(1)  # [Y,Z,X] fixes the form
        # the scalar of the scaling generator is a primitive 13th root power
        assert inst.generator_scalars[0].root_of_unity_order() == 13

    def test_unknown_family(self):
        with pytest.raises(curves.FamilyError):
            make_family("elliptic", 3)


class TestGaloisPoints:
    def test_fdd1_inner(self):
        inst = make_family("fdd1", 5)
        group = closure(inst.standard_generators)
        report = galois_group_at(inst.form, group, ProjPoint(0, 0, 1))
        assert report.verdict == "inner"
        assert report.subgroup_order == 4
        assert report.point_on_curve

    def test_dcurve_outer(self):
        inst = make_family("dcurve", 8)
        group = closure(inst.standard_generators)
        report = galois_group_at(inst.form, group, ProjPoint(0, 0, 1))
        assert report.verdict == "outer"
        assert report.subgroup_order == 8
        assert not report.point_on_curve

    def test_fermat_center_without_homologies(self):
        inst = make_family("fermat", 5)
        group = closure(inst.standard_generators)
        report = galois_group_at(inst.form, group, ProjPoint(1, 1, 1))
        assert report.verdict == "none"
        assert report.subgroup_order == 1


class TestDescendants:
    def test_fprime_descends_from_fermat(self):
        inst = make_family("fprime", 6, 2)
        group = closure(inst.standard_generators)
        cert = descendant_check(inst.form, group, "fermat")
        assert cert.is_descendant
        assert len(cert.generator_scalars) == len(inst.standard_generators)

    def test_fdoubleprime_descends_from_fermat(self):
        inst = make_family("fdoubleprime", 8, 1)
        group = closure(inst.standard_generators)
        assert descendant_check(inst.form, group, "fermat").is_descendant

    def test_hessian_sextic_not_a_descendant(self):
        inst = make_family("hessian6", 6)
        group = closure(inst.standard_generators)
        cert = descendant_check(inst.form, group, "fermat")
        assert not cert.is_descendant
        # the core is Fermat, the action on it fails
        assert cert.core_scalar is not None
        assert cert.failing_generator is not None

    def test_klein_descends_from_itself(self):
        inst = make_family("klein", 5)
        group = closure(inst.standard_generators)
        assert descendant_check(inst.form, group, "klein").is_descendant


class TestStructuralFacts:
    def test_klein_groups_have_odd_order_no_involution(self):
        for d in (5, 6, 7):
            inst = make_family("klein", d)
            group = closure(inst.standard_generators)
            orders = group.element_order_multiset()
            assert 2 not in orders
            assert group.order % 2 == 1

    def test_fermat_rigidity(self):
        # a degree-d form with Fermat core preserved by two of the scaling
        # maps [zX,Y,Z], [X,zY,Z] must be the Fermat polynomial: only the
        # pure power monomials survive both invariance constraints
        for d in (4, 5, 6, 7, 8):
            surviving = []
            for i in range(d + 1):
                for j in range(d + 1 - i):
                    k = d - i - j
                    if i % d == 0 and j % d == 0:
                        surviving.append((i, j, k))
            assert sorted(surviving) == [(0, 0, d), (0, d, 0), (d, 0, 0)]

    def test_dcurve4_substitution_identity(self):
        from curveaut.polyring import form_from_monomials, substitute

        i = zeta(4)
        f = curves.dcurve_form(4)
        g = substitute(f, ((1, i, 0), (1, -i, 0), (0, 0, 1)))
        expected = form_from_monomials(
            4, [(0, 0, 4, 1), (4, 0, 0, 2), (0, 4, 0, -2)]
        )
        assert g == expected

    def test_hessian_216_preserves_sextic(self):
        from curveaut.polyring import preserves_up_to_scalar

        form = curves.hessian_sextic_form()
        for g in hessian_generators():
            assert preserves_up_to_scalar(form, g) is not None
