"""Moment cones, volumes, the optimizer, and weight-matrix quotients.

Volume values are cross-checked against Qhull (scipy.spatial.ConvexHull)
on the slice polytope, a fully independent computation path.
"""

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from selink import (
    DomainError,
    MomentCone,
    ReebVector,
    UnboundedPolytopeError,
    WeightMatrix,
    cokernel_invariants,
    cone_from_weights,
    cy_condition,
    gorenstein_gamma,
    guillemin_potential,
    minimize_volume,
    potential_hessian,
    read_cone_file,
    read_weight_matrix_file,
    reeb_is_interior,
    reeb_slice_project,
    volume,
    volume_gradient,
    volume_hessian,
)

ORTHANT3 = MomentCone(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
CONIFOLD = MomentCone(((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)))


def orthant(m: int) -> MomentCone:
    return MomentCone(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))


def hull_volume_oracle(cone: MomentCone, xi) -> float:
    """m! times the Euclidean volume of C intersect {<y, xi> <= 1} via Qhull."""
    xs = [float(x) for x in xi]
    points = [[0.0] * cone.dim]
    for ray in cone.rays:
        s = sum(a * b for a, b in zip(xs, ray))
        points.append([r / s for r in ray])
    return math.factorial(cone.dim) * ConvexHull(points).volume


def random_interior_xi(cone: MomentCone, rng: random.Random):
    coeffs = [rng.uniform(0.2, 2.0) for _ in cone.normals]
    return tuple(
        sum(c * n[i] for c, n in zip(coeffs, cone.normals))
        for i in range(cone.dim)
    )


class TestMomentCone:
    def test_orthant_rays_are_axes(self):
        assert set(ORTHANT3.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_conifold_rays(self):
        assert set(CONIFOLD.rays) == {(0, 0, 1), (0, 1, 0), (1, -1, 0), (1, 0, -1)}

    def test_normals_primitivized_and_deduped(self):
        cone = MomentCone(((2, 0, 0), (0, 3, 0), (0, 0, 1), (0, 0, 2)))
        assert cone.normals == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_rejects_low_rank(self):
        with pytest.raises(DomainError):
            MomentCone(((1, 0), (-1, 0)))

    def test_rejects_halfspace(self):
        # Not strongly convex: contains the x-axis and its negative.
        with pytest.raises(DomainError):
            MomentCone(((0, 1), (0, -1), (1, 0)))

    def test_rejects_dimension_one(self):
        with pytest.raises(DomainError):
            MomentCone(((1,),))

    def test_interiority_test(self):
        assert reeb_is_interior(CONIFOLD, (3, 1.5, 1.5))
        assert not reeb_is_interior(CONIFOLD, (1, 1, -5))
        assert not reeb_is_interior(CONIFOLD, (0, 1, 1))  # boundary ray pairing


class TestVolume:
    def test_orthant_anchor(self):
        for m in range(2, 6):
            assert volume(orthant(m), (1,) * m) == 1

    def test_orthant_closed_form(self):
        xi = (Fraction(3), Fraction(3, 2), Fraction(5, 4))
        assert volume(orthant(3), xi) == Fraction(1, 3 * Fraction(3, 2) * Fraction(5, 4))

    def test_scale_covariance_exact(self):
        xi = (Fraction(2), Fraction(1), Fraction(3))
        for t in (2, Fraction(1, 2), Fraction(7, 3)):
            assert volume(orthant(3), tuple(t * x for x in xi)) == volume(
                orthant(3), xi
            ) / t**3

    def test_conifold_slice_value(self):
        assert volume(CONIFOLD, (3, Fraction(3, 2), Fraction(3, 2))) == Fraction(16, 27)

    def test_float_input_gives_float(self):
        value = volume(CONIFOLD, (3.0, 1.5, 1.5))
        assert isinstance(value, float)
        assert abs(value - 16 / 27) < 1e-12

    def test_unbounded_outside_dual_cone(self):
        with pytest.raises(UnboundedPolytopeError):
            volume(orthant(3), (1, 1, 0))
        with pytest.raises(UnboundedPolytopeError):
            volume(CONIFOLD, (0, 1, 1))

    def test_against_qhull_oracle(self):
        rng = random.Random(20260814)
        for cone in (ORTHANT3, CONIFOLD, orthant(4)):
            for _ in range(10):
                xi = random_interior_xi(cone, rng)
                mine = float(volume(cone, xi))
                oracle = hull_volume_oracle(cone, xi)
                assert abs(mine - oracle) <= 1e-9 * max(1.0, abs(oracle))

    def test_scale_covariance_numeric(self):
        rng = random.Random(7)
        for _ in range(20):
            xi = random_interior_xi(CONIFOLD, rng)
            t = rng.uniform(0.3, 4.0)
            left = float(volume(CONIFOLD, tuple(t * x for x in xi)))
            right = float(volume(CONIFOLD, xi)) / t**3
            assert abs(left - right) <= 1e-9 * max(1.0, abs(right))


class TestDerivatives:
    @pytest.mark.parametrize("cone", [ORTHANT3, CONIFOLD])
    def test_gradient_matches_finite_differences(self, cone):
        rng = random.Random(99)
        h = 1e-6
        for _ in range(10):
            xi = np.array(random_interior_xi(cone, rng), dtype=float)
            grad = volume_gradient(cone, tuple(xi))
            for a in range(cone.dim):
                e = np.zeros(cone.dim)
                e[a] = h
                fd = (
                    float(volume(cone, tuple(xi + e)))
                    - float(volume(cone, tuple(xi - e)))
                ) / (2 * h)
                assert abs(grad[a] - fd) <= 1e-6 * max(1.0, abs(fd))

    @pytest.mark.parametrize("cone", [ORTHANT3, CONIFOLD])
    def test_hessian_matches_gradient_differences(self, cone):
        rng = random.Random(5)
        h = 1e-5
        xi = np.array(random_interior_xi(cone, rng), dtype=float)
        hess = volume_hessian(cone, tuple(xi))
        assert np.allclose(hess, hess.T)
        for a in range(cone.dim):
            e = np.zeros(cone.dim)
            e[a] = h
            fd = (
                volume_gradient(cone, tuple(xi + e))
                - volume_gradient(cone, tuple(xi - e))
            ) / (2 * h)
            assert np.allclose(hess[a], fd, rtol=1e-4, atol=1e-6)

    def test_hessian_positive_definite_inside(self):
        rng = random.Random(11)
        for _ in range(10):
            xi = random_interior_xi(CONIFOLD, rng)
            eigs = np.linalg.eigvalsh(volume_hessian(CONIFOLD, xi))
            assert eigs.min() > 0


class TestGorenstein:
    def test_orthant(self):
        assert gorenstein_gamma(orthant(4)).gamma == (-1, -1, -1, -1)

    def test_conifold(self):
        assert gorenstein_gamma(CONIFOLD).gamma == (-1, 0, 0)

    def test_non_integral(self):
        result = gorenstein_gamma(MomentCone(((1, 0), (2, 3))))
        assert result.gamma is None
        assert result.reason == "non-integral"

    def test_inconsistent(self):
        cone = MomentCone(((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 2)))
        result = gorenstein_gamma(cone)
        assert result.gamma is None
        assert result.reason == "inconsistent"

    def test_slice_projection_exact(self):
        gamma = (-1, 0, 0)
        xi = reeb_slice_project(CONIFOLD, gamma, (Fraction(2), Fraction(1), Fraction(1)))
        assert xi == (Fraction(3), Fraction(3, 2), Fraction(3, 2))
        assert sum(a * b for a, b in zip(xi, gamma)) == -3

    def test_slice_projection_rejects_wrong_side(self):
        with pytest.raises(DomainError):
            reeb_slice_project(CONIFOLD, (-1, 0, 0), (0, 1, 1))


class TestMinimize:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_orthant_minimum_is_uniform(self, m):
        result = minimize_volume(orthant(m))
        assert max(abs(x - 1) for x in result.reeb.as_floats()) < 1e-8
        assert abs(result.value - 1) < 1e-9
        assert result.grad_norm < 1e-8

    def test_orthant_restarts_agree(self):
        rng = random.Random(42)
        values, points = [], []
        for _ in range(5):
            start = random_interior_xi(orthant(3), rng)
            result = minimize_volume(orthant(3), start=start)
            values.append(result.value)
            points.append(result.reeb.as_floats())
        for v in values:
            assert abs(v - values[0]) < 1e-8
        for p in points:
            assert max(abs(a - b) for a, b in zip(p, points[0])) < 1e-8

    def test_conifold_minimum(self):
        result = minimize_volume(CONIFOLD)
        assert abs(result.value - 16 / 27) < 1e-10
        assert max(abs(a - b) for a, b in zip(result.reeb.as_floats(), (3, 1.5, 1.5))) < 1e-7

    def test_conifold_restarts_agree(self):
        rng = random.Random(1234)
        for _ in range(5):
            start = random_interior_xi(CONIFOLD, rng)
            result = minimize_volume(CONIFOLD, start=start)
            assert abs(result.value - 16 / 27) < 1e-8

    def test_minimizer_stationary_and_locally_minimal(self):
        result = minimize_volume(CONIFOLD)
        xi_star = np.array(result.reeb.as_floats())
        gamma = np.array((-1.0, 0.0, 0.0))
        base = float(volume(CONIFOLD, tuple(xi_star)))
        rng = random.Random(3)
        for _ in range(12):
            # Random direction inside the slice hyperplane <xi, gamma> const.
            direction = np.array([rng.gauss(0, 1) for _ in range(3)])
            direction -= direction @ gamma / (gamma @ gamma) * gamma
            direction /= np.linalg.norm(direction)
            perturbed = tuple(xi_star + 1e-3 * direction)
            assert float(volume(CONIFOLD, perturbed)) > base

    def test_segment_convexity_probe(self):
        gamma = (-1, 0, 0)
        rng = random.Random(8)
        for _ in range(10):
            a = reeb_slice_project(CONIFOLD, gamma, random_interior_xi(CONIFOLD, rng))
            b = reeb_slice_project(CONIFOLD, gamma, random_interior_xi(CONIFOLD, rng))
            end_max = max(float(volume(CONIFOLD, a)), float(volume(CONIFOLD, b)))
            for i in range(1, 11):
                t = i / 11
                mid = tuple((1 - t) * x + t * y for x, y in zip(a, b))
                assert float(volume(CONIFOLD, mid)) <= end_max + 1e-12

    def test_explicit_gamma_accepted(self):
        result = minimize_volume(CONIFOLD, gamma=(-1, 0, 0))
        assert abs(result.value - 16 / 27) < 1e-10

    def test_cone_without_gamma_needs_explicit_slice(self):
        cone = MomentCone(((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 2)))
        with pytest.raises(DomainError):
            minimize_volume(cone)


class TestGuilleminPotential:
    def test_interior_evaluation_finite(self):
        value = guillemin_potential(CONIFOLD, (3, 1.5, 1.5), (0.3, 0.1, 0.1))
        assert np.isfinite(value)

    def test_boundary_rejected(self):
        with pytest.raises(DomainError):
            guillemin_potential(ORTHANT3, (1, 1, 1), (0, 0.5, 0.5))

    def test_hessian_positive_definite(self):
        rng = random.Random(21)
        xi = (3, 1.5, 1.5)
        count = 0
        while count < 20:
            y = tuple(rng.uniform(0.01, 1.0) for _ in range(3))
            if any(
                sum(a * b for a, b in zip(n, y)) <= 0 for n in CONIFOLD.normals
            ) or sum(a * b for a, b in zip(xi, y)) >= 1:
                continue
            eigs = np.linalg.eigvalsh(potential_hessian(CONIFOLD, xi, y))
            assert eigs.min() > 0
            count += 1


class TestWeightMatrices:
    def test_cy_condition(self):
        assert cy_condition(WeightMatrix(((1, 1, -1, -1),), 4))
        assert not cy_condition(WeightMatrix(((1, 1, 1, -2),), 4))

    def test_conifold_quotient_reproduces_invariants(self):
        cone = cone_from_weights(WeightMatrix(((1, 1, -1, -1),), 4))
        assert len(cone.normals) == 4
        assert len(cone.rays) == 4
        gamma = gorenstein_gamma(cone).gamma
        assert gamma is not None
        result = minimize_volume(cone)
        # Minimal normalized volume is a lattice invariant; must match the
        # standard conifold presentation.
        assert abs(result.value - 16 / 27) < 1e-9

    def test_zero_weight_matrix_gives_orthant(self):
        cone = cone_from_weights(WeightMatrix(rows=(), n=3))
        assert cone.normals == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_zero_minor_rejected(self):
        with pytest.raises(DomainError):
            cone_from_weights(WeightMatrix(((1, 0, -1, 0),), 4))

    def test_torsion_quotient_warns(self):
        with pytest.warns(UserWarning):
            cone_from_weights(WeightMatrix(((2, 4, -2, -4),), 4))

    def test_cokernel_invariants(self):
        assert cokernel_invariants(WeightMatrix(((2, 4, -2, -4),), 4)) == (2,)
        assert cokernel_invariants(WeightMatrix(((1, 1, -1, -1),), 4)) == ()

    def test_gorenstein_follows_from_zero_row_sums(self):
        # Random CY weight rows with nonzero minors always give cones
        # admitting an integral Gorenstein vector.
        rng = random.Random(17)
        found = 0
        while found < 15:
            row = [rng.randint(-4, 4) for _ in range(4)]
            row[-1] = -sum(row[:-1])
            if any(x == 0 for x in row):
                continue
            g = math.gcd(*row)
            row = [x // g for x in row]
            omega = WeightMatrix((tuple(row),), 4)
            cone = cone_from_weights(omega)
            assert gorenstein_gamma(cone).gamma is not None
            found += 1


class TestFileFormats:
    def test_cone_round_trip(self, tmp_path):
        path = tmp_path / "cone.txt"
        path.write_text("# conifold\n1 0 0\n1 1 0\n\n1 1 1\n1 0 1\n")
        assert read_cone_file(path).normals == CONIFOLD.normals

    def test_cone_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 0\nx y\n")
        with pytest.raises(DomainError):
            read_cone_file(path)

    def test_weight_matrix_round_trip(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("1 4\n1 1 -1 -1\n")
        omega = read_weight_matrix_file(path)
        assert omega.rows == ((1, 1, -1, -1),)

    def test_weight_matrix_header_mismatch(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("2 4\n1 1 -1 -1\n")
        with pytest.raises(DomainError):
            read_weight_matrix_file(path)
