"""Tests for ternary forms: evaluation, group action, restriction and
smoothness."""

from fractions import Fraction as QQ

import pytest

from curveaut import polyring
from curveaut.cyclo import rational, zeta
from curveaut.polyring import (
    ProjLine,
    ProjPoint,
    TernaryForm,
    core_decomposition,
    evaluate,
    form_from_monomials,
    genus,
    intersection_multiplicity,
    is_smooth,
    lies_on,
    line_meet_count,
    preserves_up_to_scalar,
    restrict_to_line,
    substitute,
    tangent_line,
    transform_action,
)


def fermat(d):
    return form_from_monomials(d, [(d, 0, 0, 1), (0, d, 0, 1), (0, 0, d, 1)])


def klein(d):
    return form_from_monomials(
        d, [(1, d - 1, 0, 1), (0, 1, d - 1, 1), (d - 1, 0, 1, 1)]
    )


def fdd1(d):
    # Y*Z^(d-1) + X^d + Y^d
    return form_from_monomials(d, [(0, 1, d - 1, 1), (d, 0, 0, 1), (0, d, 0, 1)])


P1 = ProjPoint(1, 0, 0)
P2 = ProjPoint(0, 1, 0)
P3 = ProjPoint(0, 0, 1)


def perm_matrix():
    # [Y, Z, X]
    return ((0, 1, 0), (0, 0, 1), (1, 0, 0))


def diag(a, b, c):
    return ((a, 0, 0), (0, b, 0), (0, 0, c))


class TestEvaluate:
    def test_fermat_off_curve(self):
        assert evaluate(fermat(4), P3) == rational(1)
        assert not lies_on(fermat(4), P3)

    def test_fdd1_inner_point(self):
        assert lies_on(fdd1(5), P3)

    def test_klein_passes_through_p1(self):
        assert lies_on(klein(5), P1)


class TestTransformAction:
    def test_symmetric_form_fixed_by_cycle(self):
        f = fermat(4)
        assert transform_action(f, perm_matrix()) == f

    def test_homology_scales_xd1z_coefficient(self):
        # F = X^(d-1)Z moves to zeta^{-1} X^(d-1)Z under [X, Y, zeta Z]
        d = 5
        f = form_from_monomials(d, [(d - 1, 0, 1, 1)])
        z = zeta(d)
        g = transform_action(f, diag(1, 1, z))
        assert g.coeff(d - 1, 0, 1) == z.inverse()

    def test_klein_generator_scalar(self):
        # diag(xi^-3, xi, 1) with xi = zeta_13 scales K_5 by xi^{-1}
        xi = zeta(13)
        f = klein(5)
        g = transform_action(f, diag(xi ** -3, xi, 1))
        assert g == f.scaled(xi.inverse())
        assert xi ** 13 == rational(1)  # d^2 - 3d + 3 = 13 at d = 5

    def test_action_composition_property(self):
        f = klein(5)
        xi = zeta(13)
        m1 = diag(xi ** -3, xi, 1)
        m2 = perm_matrix()
        from curveaut import linalg

        prod = linalg.mat_mul(linalg.mat_from(m2), linalg.mat_from(m1))
        lhs = transform_action(transform_action(f, m1), m2)
        assert lhs == transform_action(f, prod)

    def test_singular_matrix_rejected(self):
        with pytest.raises(polyring.GeometryError):
            transform_action(fermat(4), ((1, 0, 0), (1, 0, 0), (0, 0, 1)))


class TestPreserves:
    def test_fermat_diag(self):
        assert preserves_up_to_scalar(fermat(4), diag(zeta(4), 1, 1)) == rational(1)

    def test_shear_not_invariant(self):
        assert preserves_up_to_scalar(fermat(4), ((1, 1, 0), (0, 1, 0), (0, 0, 1))) is None

    def test_scalar_product_multiplicative(self):
        f = klein(5)
        xi = zeta(13)
        m1, m2 = diag(xi ** -3, xi, 1), perm_matrix()
        from curveaut import linalg

        c1 = preserves_up_to_scalar(f, m1)
        c2 = preserves_up_to_scalar(f, m2)
        prod = linalg.mat_mul(linalg.mat_from(m1), linalg.mat_from(m2))
        assert preserves_up_to_scalar(f, prod) == c1 * c2


class TestCore:
    def test_fermat_plus_cross_term(self):
        f = fermat(4).plus(form_from_monomials(4, [(2, 2, 0, 1)]))
        core, low = core_decomposition(f)
        assert core == fermat(4)
        assert low == form_from_monomials(4, [(2, 2, 0, 1)])
        assert core.plus(low) == f

    def test_klein_is_its_own_core(self):
        core, low = core_decomposition(klein(5))
        assert core == klein(5)
        assert low.is_zero()

    def test_fprime_core(self):
        # X^6 + Y^6 + Z^6 - 3*lambda*X^2Y^2Z^2 has Fermat core
        f = fermat(6).plus(form_from_monomials(6, [(2, 2, 2, -6)]))
        core, low = core_decomposition(f)
        assert core == fermat(6)
        assert low.coeff(2, 2, 2) == rational(-6)

    def test_exponent_separation(self):
        f = fermat(4).plus(form_from_monomials(4, [(2, 2, 0, 3)]))
        core, low = core_decomposition(f)
        top = max(polyring.monomial_exponent(k) for k in core.terms)
        for key in low.terms:
            assert polyring.monomial_exponent(key) < top


def test_genus():
    assert genus(4) == 3
    assert genus(5) == 6
    assert genus(6) == 10
    with pytest.raises(polyring.GeometryError):
        genus(0)


class TestRestriction:
    def test_fermat_z_line(self):
        b = restrict_to_line(fermat(4), ProjLine(0, 0, 1))
        # s^4 + t^4
        assert b[0] == rational(1) and b[4] == rational(1)
        assert all(b[i].is_zero() for i in (1, 2, 3))

    def test_klein_y_line(self):
        # parametrized (s : 0 : t): ZX^4 restricts to t*s^4
        b = restrict_to_line(klein(5), ProjLine(0, 1, 0))
        assert b[1] == rational(1)
        assert all(b[i].is_zero() for i in (0, 2, 3, 4, 5))

    def test_contained_line_gives_zero(self):
        # F = Z * X^3 restricted to Z = 0
        f = form_from_monomials(4, [(3, 0, 1, 1)])
        b = restrict_to_line(f, ProjLine(0, 0, 1))
        assert all(c.is_zero() for c in b)


class TestIntersectionMultiplicity:
    def test_klein_inflection(self):
        assert intersection_multiplicity(klein(5), ProjLine(0, 1, 0), P3) == 4

    def test_fermat_total_inflection(self):
        z8 = zeta(8)
        point = ProjPoint(1, z8, 0)
        line = tangent_line(fermat(4), point)
        assert line == ProjLine(1, z8 ** 3, 0)
        assert intersection_multiplicity(fermat(4), line, point) == 4

    def test_fermat_transversal(self):
        point = ProjPoint(1, 0, zeta(8))
        assert lies_on(fermat(4), point)
        assert intersection_multiplicity(fermat(4), ProjLine(0, 1, 0), point) == 1

    def test_point_off_line_rejected(self):
        with pytest.raises(polyring.GeometryError):
            intersection_multiplicity(fermat(4), ProjLine(0, 0, 1), P3)

    def test_contained_line_rejected(self):
        f = form_from_monomials(4, [(3, 0, 1, 1)])
        with pytest.raises(polyring.GeometryError):
            intersection_multiplicity(f, ProjLine(0, 0, 1), P1)

    def test_bezout_sum_on_coordinate_lines(self):
        # the total intersection multiplicity along a line is the degree
        cases = [
            (fermat(4), ProjLine(0, 0, 1), [ProjPoint(zeta(8, 2 * k + 1), 1, 0) for k in range(4)]),
            (klein(5), ProjLine(0, 1, 0), [P3, P1]),
            (fdd1(5), ProjLine(0, 0, 1), [ProjPoint(zeta(10, 2 * k + 1), 1, 0) for k in range(5)]),
        ]
        for form, line, points in cases:
            for p in points:
                assert lies_on(form, p) and line.contains(p)
            total = sum(intersection_multiplicity(form, line, p) for p in points)
            assert total == form.degree


class TestMeetCount:
    def test_fermat_z(self):
        assert line_meet_count(fermat(4), ProjLine(0, 0, 1)) == 4

    def test_klein_y(self):
        assert line_meet_count(klein(5), ProjLine(0, 1, 0)) == 2

    def test_fdd1_z(self):
        assert line_meet_count(fdd1(5), ProjLine(0, 0, 1)) == 5


class TestTangent:
    def test_klein_at_p3(self):
        assert tangent_line(klein(5), P3) == ProjLine(0, 1, 0)

    def test_fdd1_at_p3(self):
        assert tangent_line(fdd1(5), P3) == ProjLine(0, 1, 0)

    def test_point_not_on_curve(self):
        with pytest.raises(polyring.GeometryError):
            tangent_line(fermat(4), P3)


def fprime(d, lam):
    m = d // 3
    return fermat(d).plus(form_from_monomials(d, [(m, m, m, rational(-3) * lam)]))


def fdouble(d, lam):
    m = d // 2
    return fermat(d).plus(
        form_from_monomials(d, [(m, m, 0, lam), (0, m, m, lam), (m, 0, m, lam)])
    )


class TestSmoothness:
    def test_fermat_all_degrees(self):
        for d in range(4, 9):
            report = is_smooth(fermat(d))
            assert report.smooth

    def test_klein_smooth(self):
        for d in (4, 5, 6, 7):
            assert is_smooth(klein(d)).smooth

    def test_fprime_lambda_one_singular(self):
        report = is_smooth(fprime(6, rational(1)))
        assert not report.smooth
        assert report.witness == ProjPoint(1, 1, 1)
        assert report.constructive

    def test_fprime_lambda_two_smooth(self):
        assert is_smooth(fprime(6, rational(2))).smooth

    def test_fdoubleprime_lambda_minus_one_singular(self):
        report = is_smooth(fdouble(8, rational(-1)))
        assert not report.smooth
        assert report.witness == ProjPoint(1, 1, 1)

    def test_fdoubleprime_lambda_one_smooth(self):
        assert is_smooth(fdouble(8, rational(1))).smooth

    def test_singular_witness_satisfies_partials(self):
        f = fprime(6, rational(1))
        report = is_smooth(f)
        for var in range(3):
            assert evaluate(polyring.partial(f, var), report.witness).is_zero()

    def test_nodal_cubic_singular(self):
        # Z*Y^2 - X^2*(X + Z) has a node at the origin of the Z chart
        f = form_from_monomials(3, [(0, 2, 1, 1), (3, 0, 0, -1), (2, 0, 1, -1)])
        report = is_smooth(f)
        assert not report.smooth
        assert report.witness == P3

    def test_smooth_grid_cross_check(self):
        # no singular point among a small grid of cyclotomic candidates
        forms = [fermat(5), klein(5), fdd1(5)]
        candidates = [rational(0), rational(1), rational(-1), zeta(5), zeta(5, 2)]
        for f in forms:
            parts = [polyring.partial(f, v) for v in range(3)]
            for x in candidates:
                for y in candidates:
                    for z in candidates:
                        if x.is_zero() and y.is_zero() and z.is_zero():
                            continue
                        p = ProjPoint(x, y, z)
                        assert not all(
                            evaluate(g, p).is_zero() for g in parts
                        ), (f, p)


class TestSubstitute:
    def test_dcurve4_to_fermat_like(self):
        # X -> X + iY, Y -> X - iY turns Z^4 + XY(X^2 + Y^2)
        # into Z^4 + 2(X^4 - Y^4)
        i = zeta(4)
        f = form_from_monomials(
            4, [(0, 0, 4, 1), (3, 1, 0, 1), (1, 3, 0, 1)]
        )
        g = substitute(f, ((1, i, 0), (1, -i, 0), (0, 0, 1)))
        expected = form_from_monomials(4, [(0, 0, 4, 1), (4, 0, 0, 2), (0, 4, 0, -2)])
        assert g == expected
