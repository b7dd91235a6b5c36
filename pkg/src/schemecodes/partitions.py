"""Equitable partitions of association schemes and their quotient matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp
from .groups import OrbitPartition
from .schemes import AssociationScheme, IntersectionTensor


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.cells)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cells)

    @property
    def uniform(self) -> bool:
        return len({len(c) for c in self.cells}) == 1

    def cell_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)


@dataclass(frozen=True)
class CharMatrix:
    """n x t 0/1 matrix whose columns are the cell indicator vectors."""

    h: np.ndarray

    @staticmethod
    def from_cells(n: int, cells) -> "CharMatrix":
        t = len(cells)
        h = np.zeros((n, t), dtype=np.int64)
        for j, cell in enumerate(cells):
            for v in cell:
                h[v, j] = 1
        if not (h.sum(axis=1) == 1).all():
            raise ValueError("cells do not partition the point set")
        return CharMatrix(h)


@dataclass(frozen=True)
class QuotientSystem:
    partition: EquitablePartition
    matrices: tuple[np.ndarray, ...]

    @property
    def t(self) -> int:
        return self.partition.t

    def char_matrix(self) -> CharMatrix:
        return CharMatrix.from_cells(self.partition.n, self.partition.cells)


@dataclass(frozen=True)
class EquitabilityWitness:
    relation: int
    cell: int
    toward_cell: int
    vertex_a: int
    count_a: int
    vertex_b: int
    count_b: int

    def __str__(self) -> str:
        return (
            f"partition not equitable: in relation {self.relation}, vertices "
            f"{self.vertex_a} and {self.vertex_b} of cell {self.cell} have "
            f"{self.count_a} vs {self.count_b} neighbours in cell {self.toward_cell}"
        )


def normalize_cells(cells) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(int(v) for v in c)) for c in cells)


def cells_from_orbits(part: OrbitPartition) -> tuple[tuple[int, ...], ...]:
    return part.cells


def parse_partition_file(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    """One cell per line as space-separated vertex indices; '#' comments."""
    cells = []
    seen: set[int] = set()
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        cell = sorted(int(tok) for tok in line.split())
        for v in cell:
            if v < 0 or v >= n:
                raise ValueError(f"line {ln}: vertex {v} out of range 0..{n - 1}")
            if v in seen:
                raise ValueError(f"line {ln}: vertex {v} appears in two cells")
            seen.add(v)
        cells.append(tuple(cell))
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)[:5]
        raise ValueError(f"cells do not cover the point set (missing {missing} ...)")
    return tuple(cells)


def check_equitable(s: AssociationScheme, cells) -> QuotientSystem | EquitabilityWitness:
    """Direct neighbour counting for every relation and ordered cell pair."""
    cells = normalize_cells(cells)
    n = s.n
    h = CharMatrix.from_cells(n, cells).h
    quotients = []
    for i, a_i in enumerate(s.matrices):
        counts = fp.int_matmul(a_i.astype(np.int64), h)  # vertex -> per-cell neighbour counts
        m_i = np.zeros((len(cells), len(cells)), dtype=np.int64)
        for a, cell in enumerate(cells):
            sub = counts[list(cell)]
            diff = sub != sub[0]
            if diff.any():
                row, b = np.argwhere(diff)[0]
                return EquitabilityWitness(
                    relation=i,
                    cell=a,
                    toward_cell=int(b),
                    vertex_a=cell[0],
                    count_a=int(sub[0, b]),
                    vertex_b=cell[int(row)],
                    count_b=int(sub[int(row), b]),
                )
            m_i[a] = sub[0]
        quotients.append(m_i)
    return QuotientSystem(EquitablePartition(cells), tuple(quotients))


def quotient_by_projection(s: AssociationScheme, h: CharMatrix) -> QuotientSystem:
    """Quotient matrices via (H^T H)^-1 H^T A_i H over exact rationals.

    Integrality of the division certifies equitability; the result is also
    cross-checked against direct counting.
    """
    hm = h.h
    sizes = hm.sum(axis=0)
    if (sizes == 0).any():
        raise ValueError("empty cell")
    quotients = []
    for i, a_i in enumerate(s.matrices):
        num = fp.int_matmul(fp.int_matmul(hm.T, a_i.astype(np.int64)), hm)
        if (num % sizes[:, None] != 0).any():
            raise ValueError(
                f"projection quotient of relation {i} is not integral: partition is not equitable"
            )
        quotients.append(num // sizes[:, None])
    cells = [tuple(int(v) for v in np.nonzero(hm[:, j])[0]) for j in range(hm.shape[1])]
    counted = check_equitable(s, cells)
    if isinstance(counted, EquitabilityWitness):
        raise ValueError(str(counted))
    for i in range(len(quotients)):
        if not np.array_equal(quotients[i], counted.matrices[i]):
            raise AssertionError(f"projection and counting disagree on relation {i}")
    return counted


def verify_quotient_identity(qs: QuotientSystem, t: IntersectionTensor) -> tuple[int, int] | None:
    """Exact integer check of M_i M_j = sum_k p_ij^k M_k; None means all pairs hold."""
    d = t.d
    mats = qs.matrices
    if len(mats) != d + 1:
        raise ValueError("quotient system and tensor have different class counts")
    for i in range(d + 1):
        for j in range(d + 1):
            lhs = fp.int_matmul(mats[i], mats[j])
            rhs = np.zeros_like(lhs)
            for k in range(d + 1):
                coeff = int(t.p[i, j, k])
                if coeff:
                    rhs += coeff * mats[k]
            if not np.array_equal(lhs, rhs):
                return (i, j)
    return None


__all__ = [
    "CharMatrix",
    "EquitabilityWitness",
    "EquitablePartition",
    "QuotientSystem",
    "cells_from_orbits",
    "check_equitable",
    "normalize_cells",
    "parse_partition_file",
    "quotient_by_projection",
    "verify_quotient_identity",
]
