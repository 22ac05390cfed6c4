"""Tests for projective transforms, closures and eigen structure."""

import pytest

from curveaut import projgroup
from curveaut.cyclo import rational, zeta
from curveaut.polyring import ProjLine, ProjPoint
from curveaut.projgroup import (
    ClosureCapExceeded,
    MatrixGroup,
    ProjTransform,
    canonicalize,
    closure,
    eigen_structure,
    element_order,
    fixed_configuration,
    homology_data,
    identity_transform,
)


def diag(a, b, c):
    return ProjTransform(((a, 0, 0), (0, b, 0), (0, 0, c)))


CYCLE = ProjTransform(((0, 1, 0), (0, 0, 1), (1, 0, 0)))  # [Y, Z, X]
SWAP_XY = ProjTransform(((0, 1, 0), (1, 0, 0), (0, 0, 1)))  # [Y, X, Z]
SWAP_YZ = ProjTransform(((1, 0, 0), (0, 0, 1), (0, 1, 0)))  # [X, Z, Y]


def fermat_generators(d):
    z = zeta(d)
    return [diag(z, 1, 1), diag(1, z, 1), CYCLE, SWAP_YZ]


def klein_generators(d):
    xi = zeta(d * d - 3 * d + 3)
    return [diag(xi ** (-(d - 2)), xi, 1), CYCLE]


def hessian_generators():
    w = zeta(3)
    h1 = CYCLE
    h2 = diag(1, w, w * w)
    h3 = ProjTransform(((1, 1, 1), (1, w, w * w), (1, w * w, w)))
    h4 = diag(1, w, w)
    return [h1, h2, h3, h4]


def dcurve_generators(d):
    xi = zeta(d * (d - 2))
    z = zeta(d)
    sigma = diag(xi, xi ** (-(d - 1)), 1)
    return [sigma, SWAP_XY, diag(1, 1, z)]


class TestCanonicalize:
    def test_scalar_matrices_are_identity(self):
        assert canonicalize(((2, 0, 0), (0, 2, 0), (0, 0, 2))).is_identity()

    def test_singular_rejected(self):
        with pytest.raises(projgroup.GroupError):
            canonicalize(((1, 0, 0), (1, 0, 0), (0, 0, 1)))

    def test_scalar_invariance(self):
        w = zeta(3)
        h3 = ((1, 1, 1), (1, w, w * w), (1, w * w, w))
        scaled = tuple(tuple(w * c for c in row) for row in h3)
        assert canonicalize(h3) == canonicalize(scaled)


class TestElementOrder:
    def test_diag_zeta5(self):
        assert element_order(diag(zeta(5), 1, 1)) == 5

    def test_cycle(self):
        assert element_order(CYCLE) == 3

    def test_dcurve_sigma_order(self):
        # sigma of the degree-8 binomial curve has order d(d-2) = 48
        xi = zeta(48)
        assert element_order(diag(xi, xi ** -7, 1)) == 48

    def test_cap_exceeded(self):
        with pytest.raises(projgroup.OrderCapExceeded):
            element_order(diag(zeta(5), 1, 1), cap=3)


class TestClosureOrders:
    def test_fermat4(self):
        assert closure(fermat_generators(4)).order == 96

    def test_klein5(self):
        assert closure(klein_generators(5)).order == 39

    def test_hessian_full_and_subgroups(self):
        h1, h2, h3, h4 = hessian_generators()
        assert closure([h1, h2, h3, h4]).order == 216
        assert closure([h1, h2, h3]).order == 36
        # the order-72 primitive subgroup needs an order-4 conjugate of h3
        u = h4.inverse() * h3 * h4
        assert closure([h1, h2, h3, u]).order == 72

    def test_hessian_literal_conjugate_gives_full_group(self):
        # conjugating h4^2 by h1 yields an order-3 diagonal; together with
        # h1, h2, h3 it generates the whole group of order 216, not 72
        h1, h2, h3, h4 = hessian_generators()
        v = h1.inverse() * (h4 * h4) * h1
        assert element_order(v) == 3
        assert closure([h1, h2, h3, v]).order == 216

    def test_cap(self):
        with pytest.raises(ClosureCapExceeded):
            closure(fermat_generators(4), cap=50)

    def test_deterministic_element_order(self):
        a = closure(fermat_generators(4))
        b = closure(fermat_generators(4))
        assert [g.key() for g in a.elements] == [g.key() for g in b.elements]

    def test_lagrange_consistency(self):
        group = closure(fermat_generators(4))
        for g in group.elements:
            assert group.order % element_order(g, 2 * group.order) == 0


class TestEigenStructure:
    def test_cycle_fixed_points(self):
        eig = eigen_structure(CYCLE)
        w = zeta(3)
        expected = {
            ProjPoint(1, 1, 1),
            ProjPoint(1, w, w * w),
            ProjPoint(1, w * w, w),
        }
        assert set(eig.fixed_points) == expected
        assert not eig.is_homology

    def test_homology_diag(self):
        eig = eigen_structure(diag(1, 1, zeta(5)))
        assert eig.is_homology
        assert eig.fixed_points == (ProjPoint(0, 0, 1),)
        assert eig.pointwise_fixed_line == ProjLine(0, 0, 1)

    def test_identity_flagged(self):
        eig = eigen_structure(identity_transform())
        assert eig.is_identity

    def test_hessian_h3_eigenvalues(self):
        # h3^2 is 3 times a transposition, so eigenvalues need sqrt(3)
        w = zeta(3)
        h3 = ProjTransform(((1, 1, 1), (1, w, w * w), (1, w * w, w)))
        eig = eigen_structure(h3)
        assert not eig.is_homology
        assert len(eig.fixed_points) == 3

    def test_transposition_monomial(self):
        m = ProjTransform(((0, zeta(8), 0), (zeta(8, 3), 0, 0), (0, 0, 1)))
        eig = eigen_structure(m)
        values = [v for v, _ in eig.eigenvalues]
        assert len(values) == 3
        for v, _ in eig.eigenvalues:
            chi = projgroup._char_poly(m)
            from curveaut import unipoly
            from curveaut.cyclo import CycloElem

            assert CycloElem.coerce(unipoly.eval_at(chi, v)).is_zero()


class TestHomologyData:
    def test_diag_homology(self):
        data = homology_data(diag(1, 1, zeta(4)))
        assert data.is_homology
        assert data.center == ProjPoint(0, 0, 1)
        assert data.axis == ProjLine(0, 0, 1)

    def test_h4_homology(self):
        w = zeta(3)
        data = homology_data(diag(1, w, w))
        assert data.is_homology
        assert data.center == ProjPoint(1, 0, 0)
        assert data.axis == ProjLine(1, 0, 0)

    def test_cycle_not_homology(self):
        assert not homology_data(CYCLE).is_homology

    def test_identity_rejected(self):
        with pytest.raises(projgroup.GroupError):
            homology_data(identity_transform())

    def test_swap_is_homology(self):
        data = homology_data(SWAP_XY)
        assert data.is_homology
        assert data.center == ProjPoint(1, -1, 0)

    def test_homology_xor_three_fixed_points(self):
        # every finite-order non-identity transform is either a homology or
        # has exactly three fixed points
        group = closure(fermat_generators(4))
        for g in group.elements:
            if g.is_identity():
                continue
            eig = eigen_structure(g)
            assert eig.is_homology != (len(eig.fixed_points) == 3)


class TestFixedConfiguration:
    def test_diagonal_group(self):
        group = closure([diag(zeta(5), 1, 1), diag(1, 1, zeta(4))])
        config = fixed_configuration(group)
        assert set(config.points) == {
            ProjPoint(1, 0, 0),
            ProjPoint(0, 1, 0),
            ProjPoint(0, 0, 1),
        }
        assert set(config.lines) == {
            ProjLine(1, 0, 0),
            ProjLine(0, 1, 0),
            ProjLine(0, 0, 1),
        }
        coordinate_triangle = {
            ProjLine(1, 0, 0),
            ProjLine(0, 1, 0),
            ProjLine(0, 0, 1),
        }
        assert any(set(t) == coordinate_triangle for t in config.triangles)

    def test_fermat_group(self):
        group = closure(fermat_generators(4))
        config = fixed_configuration(group)
        assert config.points == ()
        assert config.lines == ()
        coordinate_triangle = {
            ProjLine(1, 0, 0),
            ProjLine(0, 1, 0),
            ProjLine(0, 0, 1),
        }
        assert any(set(t) == coordinate_triangle for t in config.triangles)

    def test_hessian_group_primitive(self):
        group = closure(hessian_generators())
        config = fixed_configuration(group)
        assert config.points == ()
        assert config.lines == ()
        assert config.triangles == ()

    def test_trivial_group(self):
        config = fixed_configuration(MatrixGroup((), (identity_transform(),)))
        assert config.whole_plane


class TestConjugation:
    def test_conjugated_order_preserved(self):
        group = closure([diag(zeta(5), 1, 1), diag(1, 1, zeta(4))])
        u = ProjTransform(((1, 1, 0), (0, 1, 0), (0, 0, 1)))
        conj = group.conjugated(u)
        assert conj.order == group.order
