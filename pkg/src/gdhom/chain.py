"""Chain complexes of free Z-modules and their homology.

Includes chain maps, subcomplex inclusions with the snake-lemma long exact
sequence, a Kunneth rule for torsion-free graded groups, and the nerve
(Moore complex) builder for finite transformation groupoids.
"""

from __future__ import annotations

from typing import Optional, Sequence

from . import zlinalg
from .exactseq import ExactSequence
from .fgab import FgAbGroup, GradedGroup, GroupHom, PresentedGroup
from .zlinalg import IntMatrix


class ChainComplex:
    """Bounded complex of free Z-modules.

    ranks[n] is the rank in degree n (0 <= n <= N); boundaries[k] is the map
    from degree k+1 to degree k.  The simplicial identity (composition of
    consecutive boundaries is zero) is enforced at construction.
    """

    __slots__ = ("ranks", "boundaries")

    def __init__(self, ranks: Sequence[int], boundaries: Sequence[IntMatrix]):
        ranks = tuple(int(r) for r in ranks)
        boundaries = tuple(boundaries)
        if not ranks:
            raise ValueError("a complex needs at least degree 0")
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be nonnegative")
        if len(boundaries) != len(ranks) - 1:
            raise ValueError(
                f"{len(ranks)} degrees require {len(ranks) - 1} boundary maps, "
                f"got {len(boundaries)}"
            )
        for k, b in enumerate(boundaries):
            if (b.rows, b.cols) != (ranks[k], ranks[k + 1]):
                raise ValueError(
                    f"boundary into degree {k} has shape {b.rows}x{b.cols}, "
                    f"expected {ranks[k]}x{ranks[k + 1]}"
                )
        for k in range(len(boundaries) - 1):
            if not (boundaries[k] @ boundaries[k + 1]).is_zero():
                raise ValueError(
                    f"boundary composition from degree {k + 2} to {k} is nonzero"
                )
        self.ranks = ranks
        self.boundaries = boundaries

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n <= self.top_degree else 0

    def boundary(self, n: int) -> IntMatrix:
        """The map from degree n to degree n-1, zero-padded outside range."""
        if 1 <= n <= self.top_degree:
            return self.boundaries[n - 1]
        if n == 0:
            return IntMatrix.zero(0, self.rank(0))
        return IntMatrix.zero(self.rank(n - 1), 0)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks))


def homology(c: ChainComplex, n: int) -> FgAbGroup:
    """H_n(c) = Ker boundary_n / Im boundary_{n+1}, in canonical form."""
    return homology_presentation(c, n)[0].group


def homology_presentation(c: ChainComplex, n: int):
    """(PresentedGroup on a kernel basis, the kernel basis itself)."""
    if not 0 <= n <= c.top_degree:
        raise ValueError(f"degree {n} out of range 0..{c.top_degree}")
    if n == 0:
        kb = IntMatrix.identity(c.rank(0))
    else:
        kb = zlinalg.kernel_basis(c.boundary(n))
    rel = zlinalg.solve_matrix(kb, c.boundary(n + 1))
    assert rel is not None, "image of the boundary escaped the cycle lattice"
    return PresentedGroup(rel, kb.cols), kb


def graded_homology(c: ChainComplex) -> GradedGroup:
    return GradedGroup(homology(c, n) for n in range(c.top_degree + 1))


class ChainMap:
    """Degree-wise matrices commuting with the boundaries (checked)."""

    __slots__ = ("source", "target", "matrices")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 matrices: Sequence[IntMatrix]):
        matrices = tuple(matrices)
        if len(matrices) != source.top_degree + 1 or source.top_degree != target.top_degree:
            raise ValueError("chain map needs one matrix per shared degree")
        for n, m in enumerate(matrices):
            if (m.rows, m.cols) != (target.rank(n), source.rank(n)):
                raise ValueError(f"degree {n} matrix has the wrong shape")
        for n in range(1, source.top_degree + 1):
            if matrices[n - 1] @ source.boundary(n) != target.boundary(n) @ matrices[n]:
                raise ValueError(f"chain map fails to commute with the boundary at degree {n}")
        self.source = source
        self.target = target
        self.matrices = matrices

    def induced_hom(self, n: int) -> GroupHom:
        """The induced map H_n(source) -> H_n(target)."""
        ps, ks = homology_presentation(self.source, n)
        pt, kt = homology_presentation(self.target, n)
        w = zlinalg.solve_matrix(kt, self.matrices[n] @ ks)
        assert w is not None
        return GroupHom(ps.group, pt.group,
                        pt.to_canonical @ w @ ps.from_canonical)


class SubcomplexInclusion:
    """A boundary-closed family of sub-lattices of a complex.

    sublattices[n] has independent columns spanning the degree-n sub-lattice.
    When every sub-lattice is saturated (primitive in its ambient module) the
    quotient complex is again free and available via quotient_complex(); the
    long exact sequence construction works in either case.
    """

    __slots__ = ("ambient", "sublattices")

    def __init__(self, ambient: ChainComplex, sublattices: Sequence[IntMatrix]):
        sublattices = tuple(sublattices)
        if len(sublattices) != ambient.top_degree + 1:
            raise ValueError("need one sub-lattice basis per degree")
        for n, s in enumerate(sublattices):
            if s.rows != ambient.rank(n):
                raise ValueError(f"degree {n} sub-lattice lives in the wrong module")
            if zlinalg.rank(s) != s.cols:
                raise ValueError(f"degree {n} sub-lattice columns are dependent")
        for n in range(1, ambient.top_degree + 1):
            img = ambient.boundary(n) @ sublattices[n]
            if zlinalg.solve_matrix(sublattices[n - 1], img) is None:
                raise ValueError(f"sub-lattice is not closed under the boundary at degree {n}")
        self.ambient = ambient
        self.sublattices = sublattices

    def is_saturated(self) -> bool:
        for s in self.sublattices:
            _, d, _ = zlinalg.smith_normal_form(s)
            if any(x not in (0, 1) for x in d.diagonal_entries()):
                return False
        return True

    def sub_complex(self) -> ChainComplex:
        """The subcomplex in the coordinates of the given bases."""
        bnds = []
        for n in range(1, self.ambient.top_degree + 1):
            img = self.ambient.boundary(n) @ self.sublattices[n]
            b = zlinalg.solve_matrix(self.sublattices[n - 1], img)
            assert b is not None
            bnds.append(b)
        return ChainComplex([s.cols for s in self.sublattices], bnds)

    def quotient_complex(self) -> ChainComplex:
        """Free quotient complex; requires saturated sub-lattices."""
        if not self.is_saturated():
            raise ValueError("quotient complex is free only for saturated sub-lattices")
        amb = self.ambient
        projs = []
        sections = []
        for n, s in enumerate(self.sublattices):
            u, d, _ = zlinalg.smith_normal_form(s)
            uinv = zlinalg.inverse_unimodular(u)
            k = s.cols
            projs.append(u.submatrix(k, amb.rank(n), 0, amb.rank(n)))
            sections.append(uinv.submatrix(0, amb.rank(n), k, amb.rank(n)))
        bnds = []
        for n in range(1, amb.top_degree + 1):
            bnds.append(projs[n - 1] @ amb.boundary(n) @ sections[n])
        return ChainComplex([p.rows for p in projs], bnds)


def _quotient_homology_presentation(inc: SubcomplexInclusion, n: int):
    """Homology of the quotient complex, presented on a basis of the lattice
    of chains whose boundary lands in the degree-(n-1) sub-lattice."""
    amb = inc.ambient
    if n == 0:
        gens = IntMatrix.identity(amb.rank(0))
    else:
        block = amb.boundary(n).hstack(-inc.sublattices[n - 1])
        kb = zlinalg.kernel_basis(block)
        gens = kb.submatrix(0, amb.rank(n), 0, kb.cols)
    basis = zlinalg.column_hnf(gens)
    killers = inc.sublattices[n].hstack(amb.boundary(n + 1))
    rel = zlinalg.solve_matrix(basis, killers)
    assert rel is not None
    return PresentedGroup(rel, basis.cols), basis


def long_exact_sequence(inc: SubcomplexInclusion) -> ExactSequence:
    """The long exact homology sequence of sub -> ambient -> quotient.

    Runs from the top degree down to 0, flanked by zero groups, with every
    map (inclusion-induced, projection-induced, connecting) as an explicit
    GroupHom.  Connecting maps lift a quotient cycle to an ambient chain,
    apply the boundary and read the result off in the sub-lattice basis; the
    resulting hom does not depend on the choice of lift.
    """
    amb = inc.ambient
    sub = inc.sub_complex()
    top = amb.top_degree

    sub_pres = {}
    amb_pres = {}
    quot_pres = {}
    for n in range(top + 1):
        sub_pres[n] = homology_presentation(sub, n)
        amb_pres[n] = homology_presentation(amb, n)
        quot_pres[n] = _quotient_homology_presentation(inc, n)

    groups = [FgAbGroup.trivial()]
    maps = []
    prev_connecting: Optional[GroupHom] = None
    for n in range(top, -1, -1):
        ps, ks = sub_pres[n]
        pa, ka = amb_pres[n]
        pq, bq = quot_pres[n]

        if prev_connecting is None:
            maps.append(GroupHom.zero(FgAbGroup.trivial(), ps.group))
        else:
            maps.append(prev_connecting)
        groups.append(ps.group)

        w = zlinalg.solve_matrix(ka, inc.sublattices[n] @ ks)
        assert w is not None
        maps.append(GroupHom(ps.group, pa.group, pa.to_canonical @ w @ ps.from_canonical))
        groups.append(pa.group)

        w = zlinalg.solve_matrix(bq, ka)
        assert w is not None
        maps.append(GroupHom(pa.group, pq.group, pq.to_canonical @ w @ pa.from_canonical))
        groups.append(pq.group)

        if n > 0:
            ps_lower, ks_lower = sub_pres[n - 1]
            lifted = zlinalg.solve_matrix(inc.sublattices[n - 1], amb.boundary(n) @ bq)
            assert lifted is not None
            w = zlinalg.solve_matrix(ks_lower, lifted)
            assert w is not None
            prev_connecting = GroupHom(
                pq.group, ps_lower.group,
                ps_lower.to_canonical @ w @ pq.from_canonical,
            )
    maps.append(GroupHom.zero(groups[-1], FgAbGroup.trivial()))
    groups.append(FgAbGroup.trivial())
    return ExactSequence(groups, maps)


def kunneth_free(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """Degree-wise tensor convolution for torsion-free graded groups.

    Torsion input is rejected: the correction terms it would require are out
    of scope here, and no caller needs them.
    """
    for g in list(a) + list(b):
        if g.torsion:
            raise ValueError("kunneth_free requires torsion-free graded groups")
    if len(a) == 0 or len(b) == 0:
        return GradedGroup([])
    pieces = []
    for n in range(a.top_degree + b.top_degree + 1):
        r = sum(a[p].free_rank * b[n - p].free_rank
                for p in range(n + 1) if n - p <= b.top_degree)
        pieces.append(FgAbGroup.free(r))
    return GradedGroup(pieces)


class FiniteTransformationGroupoid:
    """A finite group acting on a finite set, presented by tables.

    table[g][h] is the product g*h; action[g][x] is the image of the point x.
    Group axioms and the action law are verified at construction.
    """

    __slots__ = ("table", "set_size", "action", "identity")

    def __init__(self, table: Sequence[Sequence[int]], set_size: int,
                 action: Sequence[Sequence[int]]):
        table = [list(r) for r in table]
        action = [list(r) for r in action]
        k = len(table)
        if any(len(r) != k for r in table):
            raise ValueError("multiplication table is not square")
        if any(not 0 <= x < k for r in table for x in r):
            raise ValueError("multiplication table entry out of range")
        ident = None
        for e in range(k):
            if all(table[e][h] == h and table[h][e] == h for h in range(k)):
                ident = e
                break
        if ident is None:
            raise ValueError("multiplication table has no identity element")
        for g in range(k):
            for h in range(k):
                for l in range(k):
                    if table[table[g][h]][l] != table[g][table[h][l]]:
                        raise ValueError("multiplication table is not associative")
        for g in range(k):
            if not any(table[g][h] == ident for h in range(k)):
                raise ValueError(f"element {g} has no inverse")
        if set_size < 0:
            raise ValueError("set size must be nonnegative")
        if len(action) != k:
            raise ValueError("need one permutation per group element")
        for g, perm in enumerate(action):
            if sorted(perm) != list(range(set_size)):
                raise ValueError(f"action of element {g} is not a bijection")
        if action[ident] != list(range(set_size)):
            raise ValueError("identity element must act trivially")
        for g in range(k):
            for h in range(k):
                for x in range(set_size):
                    if action[table[g][h]][x] != action[g][action[h][x]]:
                        raise ValueError("action is not compatible with the multiplication")
        self.table = tuple(tuple(r) for r in table)
        self.set_size = set_size
        self.action = tuple(tuple(r) for r in action)
        self.identity = ident

    @property
    def group_order(self) -> int:
        return len(self.table)

    @staticmethod
    def cyclic_on_point(order: int) -> "FiniteTransformationGroupoid":
        table = [[(i + j) % order for j in range(order)] for i in range(order)]
        return FiniteTransformationGroupoid(table, 1, [[0]] * order)

    @staticmethod
    def pair_groupoid(points: int) -> "FiniteTransformationGroupoid":
        """The full equivalence relation on `points` points, realized as the
        cyclic rotation action (transitive with trivial stabilizers)."""
        n = points
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        action = [[(x + g) % n for x in range(n)] for g in range(n)]
        return FiniteTransformationGroupoid(table, n, action)


def moore_complex(gpd: FiniteTransformationGroupoid, max_degree: int) -> ChainComplex:
    """Nerve chain complex of a finite transformation groupoid, truncated.

    The degree-n module is free on composable strings (g_1, ..., g_n, x)
    where x is the source of the last arrow, so there are |G|^n * |X| of
    them.  The boundary is the alternating sum of the face maps: drop-first,
    multiply-adjacent, and drop-last (which moves the anchor point by the
    last group element); in degree 1 the two faces are the source and range
    maps.
    """
    if max_degree < 1:
        raise ValueError("truncation degree must be at least 1")
    k = gpd.group_order
    nx = gpd.set_size
    table = gpd.table
    act = gpd.action

    ranks = [nx] + [k ** n * nx for n in range(1, max_degree + 1)]

    def index(gs, x):
        idx = 0
        for g in gs:
            idx = idx * k + g
        return idx * nx + x

    def strings(n):
        def rec(prefix):
            if len(prefix) == n:
                for x in range(nx):
                    yield tuple(prefix), x
                return
            for g in range(k):
                prefix.append(g)
                yield from rec(prefix)
                prefix.pop()
        yield from rec([])

    boundaries = []
    for n in range(1, max_degree + 1):
        rows = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for gs, x in strings(n):
            col = index(gs, x)
            if n == 1:
                rows[x][col] += 1                      # d_0 = source
                rows[act[gs[0]][x]][col] -= 1          # d_1 = range
                continue
            rows[index(gs[1:], x)][col] += 1           # d_0 drops the first arrow
            sign = -1
            for i in range(1, n):
                merged = gs[:i - 1] + (table[gs[i - 1]][gs[i]],) + gs[i + 1:]
                rows[index(merged, x)][col] += sign
                sign = -sign
            rows[index(gs[:-1], act[gs[-1]][x])][col] += sign
        boundaries.append(IntMatrix.from_rows(rows, cols=ranks[n]))
    return ChainComplex(ranks, boundaries)


def moore_homology(gpd: FiniteTransformationGroupoid, max_degree: int) -> GradedGroup:
    """Homology of the truncated nerve, reported only for degrees below the
    truncation (the top degree lacks its incoming boundary)."""
    c = moore_complex(gpd, max_degree)
    return GradedGroup(homology(c, n) for n in range(max_degree))
