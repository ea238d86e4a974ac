import random

import pytest

from gdhom.fgab import FgAbGroup, GradedGroup
from gdhom.sft import (
    DirectedGraph,
    SftPreconditionError,
    adjacency,
    doubled_graphs,
    factor_six_term,
    graph_from_matrix,
    sft_homology,
    subgroupoid_six_term,
)
from gdhom.zlinalg import IntMatrix

from oracles import oracle_cokernel, oracle_kernel_rank

ZERO = FgAbGroup.trivial()


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols=cols)


def _groups(seq):
    return [g.pretty() for g in seq.groups[1:-1]]


class TestDirectedGraph:
    def test_adjacency_counts_parallel_edges(self):
        g = DirectedGraph(1, [(0, 0), (0, 0)])
        assert adjacency(g) == M([[2]])

    def test_two_vertex_graph(self):
        g = DirectedGraph(2, [(0, 0), (0, 1), (1, 0)])
        assert adjacency(g) == M([[1, 1], [1, 0]])

    def test_edgeless_graph_rejected_as_reducible(self):
        with pytest.raises(SftPreconditionError, match="irreducible") as exc:
            DirectedGraph(2, [])
        assert exc.value.axiom == "irreducible"

    def test_unreachable_vertex_rejected(self):
        with pytest.raises(SftPreconditionError, match="irreducible"):
            DirectedGraph(2, [(0, 0), (0, 1), (1, 1)])

    def test_permutation_rejected(self):
        with pytest.raises(SftPreconditionError, match="permutation") as exc:
            DirectedGraph(2, [(0, 1), (1, 0)])
        assert exc.value.axiom == "not a permutation"
        with pytest.raises(SftPreconditionError, match="permutation"):
            DirectedGraph(1, [(0, 0)])

    def test_graph_from_matrix_roundtrip(self):
        b = M([[1, 2], [1, 0]])
        assert adjacency(graph_from_matrix(b)) == b


class TestSftHomology:
    def test_full_shift_on_two_symbols(self):
        assert sft_homology(M([[2]])) == GradedGroup([])

    def test_golden_mean_shift(self):
        assert sft_homology(M([[1, 1], [1, 0]])) == GradedGroup([])

    def test_full_shift_on_four_symbols(self):
        assert sft_homology(M([[4]])) == GradedGroup([FgAbGroup(0, (3,))])

    def test_kernel_degree(self):
        # B with eigenvalue 1 over Q: I - B^t is singular
        b = M([[1, 2], [2, 1]])
        h = sft_homology(b)
        assert h[1].free_rank == oracle_kernel_rank(
            [[0, -2], [-2, 0]], 2, 2
        )

    def test_matches_oracle_on_random_battery(self):
        rng = random.Random(606)
        count = 0
        while count < 60:
            n = rng.randint(1, 4)
            rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
            try:
                b = M(rows, cols=n)
                h = sft_homology(b)
            except SftPreconditionError:
                continue
            count += 1
            m = (IntMatrix.identity(n) - b.transpose()).to_rows()
            free, torsion = oracle_cokernel(m, n, n)
            assert (h[0].free_rank, h[0].torsion) == (free, torsion)
            assert h[1].free_rank == oracle_kernel_rank(m, n, n)
            assert h[2] == ZERO
            # both degrees see the 1-eigenspace of B^t over Q
            assert h[0].free_rank == h[1].free_rank


class TestDoubledGraphs:
    def test_single_vertex(self):
        g = DirectedGraph(1, [(0, 0), (0, 0)])
        first, second = doubled_graphs(g)
        assert first == M([[4]])
        assert second == M([[3, 1], [1, 3]])

    def test_two_vertices(self):
        g = DirectedGraph(2, [(0, 0), (0, 1), (1, 0)])
        first, second = doubled_graphs(g)
        assert first == M([[3, 1], [1, 2]])
        assert second == M([
            [2, 1, 1, 0],
            [1, 1, 0, 1],
            [1, 0, 2, 1],
            [0, 1, 1, 1],
        ])


class TestSixTermSequences:
    def test_factor_full_shift_two(self):
        g = DirectedGraph(1, [(0, 0), (0, 0)])
        seq, report = factor_six_term(g)
        assert _groups(seq) == ["0", "0", "0", "Z/3", "Z/3", "0"]
        assert not seq.all_maps_known
        assert report.all_ok
        assert report.det_block == 3 and report.det_plus == 3 and report.det_minus == 1
        assert report.orders == (3, 3, 1)

    def test_sub_full_shift_two(self):
        g = DirectedGraph(1, [(0, 0), (0, 0)])
        seq, report = subgroupoid_six_term(g)
        assert _groups(seq) == ["0", "0", "0", "0", "Z/3", "Z/3"]
        assert report.det_block == report.det_minus * report.det_plus == 3

    def test_sub_full_shift_three(self):
        g = DirectedGraph(1, [(0, 0)] * 3)
        seq, report = subgroupoid_six_term(g)
        assert _groups(seq) == ["0", "0", "0", "Z/2", "Z/8", "Z/4"]
        assert report.det_block == 8
        assert (report.det_minus, report.det_plus) == (2, 4)
        assert report.orders == (4, 8, 2)
        assert report.all_ok

    def test_factor_two_vertex_graph(self):
        g = DirectedGraph(2, [(0, 0), (0, 1), (1, 0)])
        seq, report = factor_six_term(g)
        assert report.rank_sum == 0
        assert report.all_ok

    def test_consistency_on_random_battery(self):
        rng = random.Random(607)
        count = 0
        while count < 40:
            n = rng.randint(1, 4)
            rows = [[rng.randint(0, 3) for _ in range(n)] for _ in range(n)]
            try:
                g = graph_from_matrix(M(rows, cols=n))
            except SftPreconditionError:
                continue
            count += 1
            for build in (factor_six_term, subgroupoid_six_term):
                _, report = build(g)
                assert report.rank_sum_ok
                assert report.kernel_rank_split_ok
                assert report.det_ok
                assert report.order_ok is not False

    def test_report_describe_mentions_every_check(self):
        g = DirectedGraph(1, [(0, 0), (0, 0)])
        _, report = factor_six_term(g)
        text = report.describe()
        for needle in ("rank sum", "kernel rank split", "det identity", "order identity"):
            assert needle in text
