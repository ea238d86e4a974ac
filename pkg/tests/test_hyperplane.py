import random

import pytest

from gdhom.exactseq import UndeterminedExtensionError
from gdhom.fgab import FgAbGroup, GradedGroup, GroupHom
from gdhom.hyperplane import (
    OCTAGONAL_THETA,
    PENROSE_THETA,
    ClassCalculusError,
    H0Class,
    OneDimSystem,
    QuadMod,
    QuadraticIrrational,
    SignedParallelogram,
    boundary_class,
    interval_class,
    les_step,
    octagonal_axis_system,
    octagonal_pipeline,
    octagonal_reduced_system,
    one_dim_homology,
    parallelogram_class,
    penrose_axis_system,
    penrose_pipeline,
    sign_of,
)
from gdhom.zlinalg import IntMatrix, lattice_contains

Z = FgAbGroup.free(1)


def graded(*ranks):
    return GradedGroup([FgAbGroup.free(r) for r in ranks])


class TestQuadraticArithmetic:
    def test_theta_descriptors_are_positive_irrationals(self):
        with pytest.raises(ValueError, match="non-square"):
            QuadraticIrrational(0, 1, 4, 2)
        with pytest.raises(ValueError, match="positive"):
            QuadraticIrrational(-3, 1, 2, 1)

    def test_signs_octagonal(self):
        # theta = 1/sqrt(2): 2 - 2*theta > 0, theta - 1 < 0, 3*theta - 2 > 0
        assert sign_of(OCTAGONAL_THETA, QuadMod(2, -2)) == 1
        assert sign_of(OCTAGONAL_THETA, QuadMod(-1, 1)) == -1
        assert sign_of(OCTAGONAL_THETA, QuadMod(-2, 3)) == 1
        assert sign_of(OCTAGONAL_THETA, QuadMod(0, 0)) == 0

    def test_signs_penrose(self):
        # theta = (sqrt(5)-1)/2 ~ 0.618
        assert sign_of(PENROSE_THETA, QuadMod(-1, 2)) == 1
        assert sign_of(PENROSE_THETA, QuadMod(1, -2)) == -1
        assert sign_of(PENROSE_THETA, QuadMod(-3, 5)) == 1
        assert sign_of(PENROSE_THETA, QuadMod(2, -3)) == 1

    def test_module_operations(self):
        assert QuadMod(1, 2) + QuadMod(3, -5) == QuadMod(4, -3)
        assert -QuadMod(1, -1) == QuadMod(-1, 1)
        assert QuadMod(2, 1).scale(-3) == QuadMod(-6, -3)


class TestOneDimSystems:
    def test_denjoy_type_axis(self):
        h = one_dim_homology(octagonal_axis_system())
        assert h.homology == graded(2, 1)
        assert h.h0_generators == ("alpha", "beta")

    def test_reduced_system_has_two_orbits(self):
        h = one_dim_homology(octagonal_reduced_system())
        assert h.homology == graded(3, 1)
        assert h.h0_generators == ("alpha", "beta", "gamma")

    def test_index_three(self):
        s = OneDimSystem(OCTAGONAL_THETA, (QuadMod(1, 0), QuadMod(0, 3)),
                         (QuadMod(1, 0), QuadMod(0, 1)))
        assert one_dim_homology(s).homology == graded(4, 1)

    def test_penrose_axis(self):
        assert one_dim_homology(penrose_axis_system()).homology == graded(2, 1)

    def test_index_against_coset_enumeration(self):
        cases = [
            ((QuadMod(1, 0), QuadMod(0, 2)), (QuadMod(1, 0), QuadMod(0, 1))),
            ((QuadMod(1, 0), QuadMod(0, 3)), (QuadMod(1, 0), QuadMod(0, 1))),
            ((QuadMod(2, 0), QuadMod(0, 3)), (QuadMod(1, 0), QuadMod(0, 1))),
            ((QuadMod(1, 1), QuadMod(0, 2)), (QuadMod(1, 0), QuadMod(0, 1))),
            ((QuadMod(2, 1), QuadMod(1, 2)), (QuadMod(1, 0), QuadMod(0, 1))),
            ((QuadMod(1, 0), QuadMod(0, 6)), (QuadMod(1, 0), QuadMod(0, 2))),
        ]
        for m_gens, c_gens in cases:
            s = OneDimSystem(PENROSE_THETA, m_gens, c_gens)
            assert s.index_of_translations() == _count_cosets(s)

    def test_translations_must_sit_inside_cuts(self):
        with pytest.raises(ValueError, match="not contained"):
            OneDimSystem(PENROSE_THETA, (QuadMod(1, 0), QuadMod(0, 1)),
                         (QuadMod(2, 0), QuadMod(0, 2)))

    def test_degenerate_translations_rejected(self):
        with pytest.raises(ValueError, match="rank below 2"):
            OneDimSystem(PENROSE_THETA, (QuadMod(1, 0), QuadMod(2, 0)),
                         (QuadMod(1, 0), QuadMod(0, 1)))


def _count_cosets(system):
    """Breadth-first enumeration of C / M in the coordinates of C's basis."""
    from gdhom.zlinalg import solve, solve_matrix
    from gdhom.hyperplane import _pair_matrix

    t = solve_matrix(_pair_matrix(system.cut_gens), _pair_matrix(system.translation_gens))
    seen = []
    frontier = [(0, 0)]
    while frontier:
        v = frontier.pop()
        if any(solve(t, (v[0] - w[0], v[1] - w[1])) is not None for w in seen):
            continue
        seen.append(v)
        frontier.extend([(v[0] + 1, v[1]), (v[0], v[1] + 1),
                         (v[0] - 1, v[1]), (v[0], v[1] - 1)])
    return len(seen)


class TestIntervalClasses:
    def test_generators(self):
        axis = octagonal_axis_system()
        assert interval_class(axis, QuadMod(1, 0)).coefficients == (1, 0)
        assert interval_class(axis, QuadMod(0, 2)).coefficients == (0, 1)

    def test_octagonal_rhombus_side(self):
        axis = octagonal_axis_system()
        assert interval_class(axis, QuadMod(2, -2)).coefficients == (2, -1)

    def test_octagonal_green_side(self):
        axis = octagonal_axis_system()
        assert interval_class(axis, QuadMod(-1, 2)).coefficients == (-1, 1)

    def test_requires_single_orbit(self):
        with pytest.raises(ClassCalculusError, match="unsupported"):
            interval_class(octagonal_reduced_system(), QuadMod(1, 0))

    def test_requires_membership(self):
        with pytest.raises(ClassCalculusError, match="unsupported"):
            interval_class(octagonal_axis_system(), QuadMod(0, 1))

    def test_additivity_random(self):
        rng = random.Random(41)
        axis = penrose_axis_system()
        for _ in range(50):
            l1 = QuadMod(rng.randint(-5, 5), rng.randint(-5, 5))
            l2 = QuadMod(rng.randint(-5, 5), rng.randint(-5, 5))
            total = interval_class(axis, l1 + l2)
            assert total == interval_class(axis, l1) + interval_class(axis, l2)

    def test_pretty_printing(self):
        c = H0Class((2, -1), ("alpha", "beta"))
        assert str(c) == "2*alpha - beta"
        assert str(H0Class((0, 0), ("alpha", "beta"))) == "0"
        assert str(H0Class((-1, 1), ("alpha", "beta"))) == "-alpha + beta"


class TestParallelogramClasses:
    def test_octagonal_yellow_rhombus(self):
        axis = octagonal_axis_system()
        p = SignedParallelogram(QuadMod(2, -2), QuadMod(2, -2), 1)
        assert parallelogram_class(p, axis, axis) == (4, -2, -2, 1)

    def test_octagonal_green(self):
        axis = octagonal_axis_system()
        p = SignedParallelogram(QuadMod(-1, 2), QuadMod(-2, 4), -1)
        assert parallelogram_class(p, axis, axis) == (-2, 2, 2, -2)

    def test_unit_square(self):
        axis = penrose_axis_system()
        p = SignedParallelogram(QuadMod(1, 0), QuadMod(1, 0), 1)
        assert parallelogram_class(p, axis, axis) == (1, 0, 0, 0)

    def test_sign_oddness_and_bilinearity_random(self):
        rng = random.Random(43)
        axis = penrose_axis_system()
        for _ in range(40):
            s1 = QuadMod(rng.randint(-4, 4), rng.randint(-4, 4))
            s2 = QuadMod(rng.randint(-4, 4), rng.randint(-4, 4))
            plus = parallelogram_class(SignedParallelogram(s1, s2, 1), axis, axis)
            minus = parallelogram_class(SignedParallelogram(s1, s2, -1), axis, axis)
            assert tuple(-x for x in plus) == minus
            doubled = parallelogram_class(
                SignedParallelogram(s1.scale(2), s2, 1), axis, axis
            )
            assert tuple(2 * x for x in plus) == doubled

    def test_octagonal_boundary_vector(self):
        axis = octagonal_axis_system()
        ps = [SignedParallelogram(QuadMod(2, -2), QuadMod(2, -2), 1),
              SignedParallelogram(QuadMod(-1, 2), QuadMod(-2, 4), -1)]
        assert boundary_class(ps, axis, axis) == (2, 0, 0, -1)

    def test_penrose_boundary_vectors(self):
        axis = penrose_axis_system()
        first = [SignedParallelogram(QuadMod(1, -1), QuadMod(-1, 2), 1),
                 SignedParallelogram(QuadMod(-1, 2), QuadMod(1, -1), -1)]
        second = [SignedParallelogram(QuadMod(-1, 2), QuadMod(0, 1), 1),
                  SignedParallelogram(QuadMod(1, -1), QuadMod(1, -1), -1)]
        assert boundary_class(first, axis, axis) == (0, 1, -1, 0)
        assert boundary_class(second, axis, axis) == (-1, 0, 1, 1)

    def test_penrose_final_class(self):
        axis = penrose_axis_system()
        ps = [SignedParallelogram(QuadMod(0, 1), QuadMod(-1, 2), 1),
              SignedParallelogram(QuadMod(1, -1), QuadMod(1, -1), -1)]
        assert boundary_class(ps, axis, axis) == (-1, 1, 0, 1)


class TestLesStep:
    def test_octagonal_second_step(self):
        prev = graded(4, 4, 1)
        quot = graded(3, 1)
        connecting = GroupHom(Z, FgAbGroup.free(4),
                              IntMatrix.from_columns([(2, 0, 0, -1)]))
        assert les_step(prev, quot, connecting) == graded(6, 4, 1)

    def test_penrose_second_step(self):
        prev = graded(4, 4, 1)
        quot = graded(4, 2)
        connecting = GroupHom(FgAbGroup.free(2), FgAbGroup.free(4),
                              IntMatrix.from_columns([(0, 1, -1, 0), (-1, 0, 1, 1)]))
        assert les_step(prev, quot, connecting) == graded(6, 4, 1)

    def test_zero_connecting_map(self):
        prev = graded(6, 4, 1)
        quot = graded(3, 1)
        connecting = GroupHom.zero(Z, FgAbGroup.free(6))
        assert les_step(prev, quot, connecting) == graded(9, 5, 1)

    def test_rank_bookkeeping_random(self):
        rng = random.Random(44)
        for _ in range(40):
            p0, p1, q0, q1 = (rng.randint(0, 4) for _ in range(4))
            prev = graded(p0, p1, rng.randint(0, 2))
            quot = graded(q0, q1)
            cols = [[rng.randint(-3, 3) for _ in range(p0)] for _ in range(q1)]
            connecting = GroupHom(FgAbGroup.free(q1), FgAbGroup.free(p0),
                                  IntMatrix.from_columns(cols, rows=p0))
            from gdhom.zlinalg import rank as zrank
            r = zrank(connecting.matrix)
            out = les_step(prev, quot, connecting)
            assert out[0].free_rank == p0 - r + q0
            assert out[1].free_rank == p1 + (q1 - r)
            assert out[2] == prev[2]

    def test_torsion_obstruction(self):
        prev = GradedGroup([Z, Z])
        quot = GradedGroup([FgAbGroup(0, (2,)), FgAbGroup.trivial()])
        connecting = GroupHom.zero(FgAbGroup.trivial(), Z)
        with pytest.raises(UndeterminedExtensionError, match="undetermined"):
            les_step(prev, quot, connecting)

    def test_quotient_support_validated(self):
        prev = graded(1, 1, 1)
        quot = graded(1, 1, 1)
        with pytest.raises(ValueError, match="degrees >= 2"):
            les_step(prev, quot, GroupHom.zero(Z, Z))


class TestPipelines:
    def test_octagonal_final_groups(self):
        result = octagonal_pipeline()
        assert result.homology == graded(9, 5, 1)

    def test_octagonal_trace_contents(self):
        trace = octagonal_pipeline().trace
        assert "H_0 = Z^4, H_1 = Z^4, H_2 = Z^1" in trace
        assert "boundary vector: (2, 0, 0, -1)" in trace
        assert "H_0 = Z^6, H_1 = Z^4, H_2 = Z^1" in trace
        assert "H_0 = Z^9, H_1 = Z^5, H_2 = Z^1" in trace

    def test_penrose_final_groups(self):
        result = penrose_pipeline()
        assert result.homology == graded(8, 5, 1)

    def test_penrose_trace_contents(self):
        trace = penrose_pipeline().trace
        assert "witness (1, 1)" in trace
        assert "cokernel of the boundary: Z^2" in trace
        assert "(0, 1, -1, 0)" in trace and "(-1, 0, 1, 1)" in trace
        assert "(-1, 1, 0, 1)" in trace

    def test_penrose_membership_step(self):
        bmatrix = IntMatrix.from_columns([(0, 1, -1, 0), (-1, 0, 1, 1)])
        ok, witness = lattice_contains(bmatrix, (-1, 1, 0, 1))
        assert ok and witness == (1, 1)

    def test_pipelines_are_deterministic(self):
        assert octagonal_pipeline() == octagonal_pipeline()
        assert penrose_pipeline().trace == penrose_pipeline().trace
