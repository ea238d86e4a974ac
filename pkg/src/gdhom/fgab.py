"""Finitely generated abelian groups in invariant-factor form.

A group is stored canonically as Z^r (+) Z/d1 (+) ... (+) Z/dk with
2 <= d1 | d2 | ... | dk, so two values are isomorphic iff they are equal.
Homomorphisms are integer matrices acting on generator coordinates, with the
generator convention fixed globally: free generators first, then torsion
generators in invariant-factor order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import zlinalg
from .zlinalg import IntMatrix


@dataclass(frozen=True)
class FgAbGroup:
    """Canonical form of a finitely generated abelian group."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} out of range (must be >= 2)")
            if prev is not None and d % prev:
                raise ValueError(f"invariant factors {prev}, {d} break the divisibility chain")
            prev = d

    @staticmethod
    def trivial() -> "FgAbGroup":
        return FgAbGroup(0, ())

    @staticmethod
    def free(rank: int) -> "FgAbGroup":
        return FgAbGroup(rank, ())

    @staticmethod
    def cyclic(d: int) -> "FgAbGroup":
        if d == 0:
            return FgAbGroup(1, ())
        return FgAbGroup(0, (abs(d),)) if abs(d) > 1 else FgAbGroup(0, ())

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def rank(self) -> int:
        return self.free_rank

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def relation_matrix(self) -> IntMatrix:
        """Relations of the canonical presentation: column d_k * e_(free+k)."""
        cols = []
        for k, d in enumerate(self.torsion):
            col = [0] * self.ngens
            col[self.free_rank + k] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, rows=self.ngens)

    def is_zero_element(self, vec: Sequence[int]) -> bool:
        """Whether a generator-coordinate vector represents the zero element."""
        if len(vec) != self.ngens:
            raise ValueError("coordinate length does not match generator count")
        for i in range(self.free_rank):
            if vec[i]:
                return False
        for k, d in enumerate(self.torsion):
            if vec[self.free_rank + k] % d:
                return False
        return True

    def pretty(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.pretty()

    @staticmethod
    def parse(text: str) -> "FgAbGroup":
        """Inverse of pretty(); non-canonical torsion listings are merged."""
        text = text.strip()
        if text == "0":
            return FgAbGroup.trivial()
        acc = FgAbGroup.trivial()
        for term in text.split("(+)"):
            term = term.strip()
            if term == "Z":
                g = FgAbGroup.free(1)
            elif term.startswith("Z^"):
                g = FgAbGroup.free(int(term[2:]))
            elif term.startswith("Z/"):
                d = int(term[2:])
                if d < 2:
                    raise ValueError(f"bad torsion order {d!r} in group expression")
                g = FgAbGroup.cyclic(d)
            else:
                raise ValueError(f"cannot parse group term {term!r}")
            acc = direct_sum(acc, g)
        return acc


def from_presentation(relations: IntMatrix, generators: int) -> FgAbGroup:
    """Canonical form of Z^generators / (column lattice of relations)."""
    if relations.rows != generators:
        raise ValueError(
            f"presentation has {relations.rows} rows for {generators} generators"
        )
    _, d, _ = zlinalg.smith_normal_form(relations)
    diag = d.diagonal_entries()
    nonzero = [x for x in diag if x]
    free = generators - len(nonzero)
    return FgAbGroup(free, tuple(x for x in nonzero if x > 1))


class PresentedGroup:
    """Z^n modulo a relation lattice, carrying canonical coordinates.

    to_canonical maps old-generator coordinates to canonical-generator
    coordinates; from_canonical picks one representative per canonical
    generator (their composite is the identity on canonical coordinates).
    """

    __slots__ = ("group", "ngens_raw", "to_canonical", "from_canonical")

    def __init__(self, relations: IntMatrix, generators: int):
        if relations.rows != generators:
            raise ValueError("relation row count does not match generator count")
        u, d, _ = zlinalg.smith_normal_form(relations)
        diag = d.diagonal_entries()
        t = sum(1 for x in diag if x)
        free_idx = list(range(t, generators))
        tors_idx = [i for i in range(t) if diag[i] > 1]
        group = FgAbGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
        uinv = zlinalg.inverse_unimodular(u)
        sel = free_idx + tors_idx
        self.group = group
        self.ngens_raw = generators
        self.to_canonical = IntMatrix.from_rows(
            [list(u.row(i)) for i in sel], cols=generators
        )
        self.from_canonical = IntMatrix.from_columns(
            [uinv.column_tuple(i) for i in sel], rows=generators
        )


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between canonical groups, as a matrix on generator
    coordinates (target.ngens rows, source.ngens columns).

    Well-definedness is checked at construction: each source torsion
    generator of order d must map to an element killed by d.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ngens or self.matrix.cols != self.source.ngens:
            raise ValueError(
                f"hom matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.ngens}x{self.source.ngens}"
            )
        for k, d in enumerate(self.source.torsion):
            col = self.matrix.column_tuple(self.source.free_rank + k)
            if not self.target.is_zero_element([d * x for x in col]):
                raise ValueError(
                    f"map is not well defined: order-{d} generator has image of "
                    "larger order"
                )

    @staticmethod
    def identity(group: FgAbGroup) -> "GroupHom":
        return GroupHom(group, group, IntMatrix.identity(group.ngens))

    @staticmethod
    def zero(source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return GroupHom(source, target, IntMatrix.zero(target.ngens, source.ngens))

    def apply(self, vec: Sequence[int]) -> tuple:
        return self.matrix.mul_vector(vec)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(inner.source, self.target, self.matrix @ inner.matrix)

    def is_zero_map(self) -> bool:
        return all(
            self.target.is_zero_element(self.matrix.column_tuple(j))
            for j in range(self.matrix.cols)
        )

    def same_map(self, other: "GroupHom") -> bool:
        """Equality as homomorphisms: matrices may differ by relations."""
        if self.source != other.source or self.target != other.target:
            return False
        diff = self.matrix - other.matrix
        return all(
            self.target.is_zero_element(diff.column_tuple(j))
            for j in range(diff.cols)
        )


def direct_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Canonical form of a (+) b.

    Torsion merging goes through the SNF of a diagonal relation matrix, the
    same code path as every other canonicalization.
    """
    orders = list(a.torsion) + list(b.torsion)
    free = a.free_rank + b.free_rank
    return _canonical_from_cyclic_data(free, orders)


def tensor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Canonical form of a (x) b over Z."""
    orders = []
    orders.extend(d for d in a.torsion for _ in range(b.free_rank))
    orders.extend(e for e in b.torsion for _ in range(a.free_rank))
    orders.extend(math.gcd(d, e) for d in a.torsion for e in b.torsion)
    return _canonical_from_cyclic_data(a.free_rank * b.free_rank, orders)


def _canonical_from_cyclic_data(free: int, orders: Iterable[int]) -> FgAbGroup:
    orders = [d for d in orders if d != 1]
    gens = free + len(orders)
    cols = []
    for k, d in enumerate(orders):
        col = [0] * gens
        col[free + k] = d
        cols.append(col)
    return from_presentation(IntMatrix.from_columns(cols, rows=gens), gens)


def hom_kernel_image_cokernel(f: GroupHom) -> tuple:
    """(kernel, image, cokernel) of f in canonical form.

    Computed on free covers: both groups are lifted to their canonical free
    presentations and everything reduces to SNF/HNF lattice work.
    """
    src, tgt = f.source, f.target
    fm = f.matrix
    r_src = src.relation_matrix()
    r_tgt = tgt.relation_matrix()

    # cokernel: target generators modulo image columns and target relations
    coker = from_presentation(fm.hstack(r_tgt), tgt.ngens)

    # image: (lattice of image columns + target relations) / target relations
    im_gens = fm.hstack(r_tgt)
    basis = zlinalg.column_hnf(im_gens)
    rel = zlinalg.solve_matrix(basis, r_tgt)
    assert rel is not None
    image = from_presentation(rel, basis.cols)

    # kernel: preimage of the target relation lattice, modulo source relations
    pre = _preimage_lattice(fm, r_tgt)
    pre_basis = zlinalg.column_hnf(pre)
    rel = zlinalg.solve_matrix(pre_basis, r_src) if pre_basis.cols else IntMatrix.zero(0, 0)
    assert rel is not None
    kernel = from_presentation(rel, pre_basis.cols)

    return kernel, image, coker


def _preimage_lattice(fm: IntMatrix, target_relations: IntMatrix) -> IntMatrix:
    """Generators of {x : fm*x lies in the column lattice of target_relations}."""
    block = fm.hstack(-target_relations)
    kb = zlinalg.kernel_basis(block)
    return kb.submatrix(0, fm.cols, 0, kb.cols)


class GradedGroup:
    """Finitely supported list of groups indexed by degree >= 0.

    Trailing trivial pieces are stripped, so two graded groups agree iff they
    agree in every degree.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[FgAbGroup]):
        pieces = list(pieces)
        while pieces and pieces[-1].is_trivial:
            pieces.pop()
        self.pieces = tuple(pieces)

    def __getitem__(self, n: int) -> FgAbGroup:
        if n < 0:
            raise IndexError("negative degree")
        if n < len(self.pieces):
            return self.pieces[n]
        return FgAbGroup.trivial()

    @property
    def top_degree(self) -> int:
        return len(self.pieces) - 1

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        return "GradedGroup([" + ", ".join(g.pretty() for g in self.pieces) + "])"

    def pretty(self) -> str:
        if not self.pieces:
            return "0"
        return ", ".join(f"H_{n} = {g.pretty()}" for n, g in enumerate(self.pieces))
