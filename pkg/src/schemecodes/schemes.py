"""Association schemes as first-class objects: axioms and intersection numbers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fp
from .graphs import DistanceSystem, IntersectionArray, verify_distance_regular


@dataclass(frozen=True)
class AssociationScheme:
    """Symmetric association scheme given by its 0/1 relation matrices A_0..A_d."""

    matrices: tuple[np.ndarray, ...]

    @property
    def d(self) -> int:
        return len(self.matrices) - 1

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    def valencies(self) -> tuple[int, ...]:
        return tuple(int(m[0].sum()) for m in self.matrices)


@dataclass(frozen=True)
class IntersectionTensor:
    """Structure constants p[i,j,k] of the Bose-Mesner basis."""

    p: np.ndarray

    @property
    def d(self) -> int:
        return self.p.shape[0] - 1

    def valencies(self) -> tuple[int, ...]:
        return tuple(int(self.p[i, i, 0]) for i in range(self.d + 1))

    def to_dict(self) -> dict:
        return {"d": self.d, "p": self.p.tolist()}


@dataclass(frozen=True)
class AxiomWitness:
    axiom: str
    detail: str

    def __str__(self) -> str:
        return f"axiom violated ({self.axiom}): {self.detail}"


def from_distance_regular(ds: DistanceSystem) -> AssociationScheme:
    """Scheme whose relations are the distance relations of a verified DRG."""
    result = verify_distance_regular(ds)
    if not isinstance(result, IntersectionArray):
        raise ValueError(f"input graph is not distance-regular: {result}")
    return AssociationScheme(tuple(m.astype(np.int64) for m in ds.matrices))


def verify_axioms(s: AssociationScheme) -> AxiomWitness | None:
    """Check the defining axioms directly; None means all hold."""
    n = s.n
    total = np.zeros((n, n), dtype=np.int64)
    for i, m in enumerate(s.matrices):
        if ((m != 0) & (m != 1)).any():
            return AxiomWitness("zero-one", f"relation {i} has entries outside {{0,1}}")
        if not np.array_equal(m, m.T):
            bad = np.argwhere(m != m.T)[0]
            return AxiomWitness("symmetry", f"relation {i} not symmetric at {tuple(bad)}")
        total += m
    if not (total == 1).all():
        bad = np.argwhere(total != 1)[0]
        return AxiomWitness("partition", f"cell {tuple(int(x) for x in bad)} covered {int(total[tuple(bad)])} times")
    if not np.array_equal(s.matrices[0], np.eye(n, dtype=np.int64)):
        return AxiomWitness("diagonal", "relation 0 is not the identity")
    try:
        intersection_tensor(s)
    except ValueError as exc:
        return AxiomWitness("intersection-numbers", str(exc))
    return None


def intersection_tensor(s: AssociationScheme) -> IntersectionTensor:
    """Read the p_ij^k off the integer products A_i A_j.

    The product is computed once per (i, j) pair and required to be
    constant on the support of every A_k, which re-proves the axiom while
    computing the tensor.
    """
    d = s.d
    mats = [m.astype(np.int64) for m in s.matrices]
    supports = [m.astype(bool) for m in mats]
    p = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
    for i in range(d + 1):
        for j in range(i, d + 1):
            prod = fp.int_matmul(mats[i], mats[j])
            for k in range(d + 1):
                vals = prod[supports[k]]
                if vals.size == 0:
                    continue
                lo, hi = int(vals.min()), int(vals.max())
                if lo != hi:
                    raise ValueError(
                        f"inconsistent intersection number: A_{i}A_{j} takes values "
                        f"{lo} and {hi} on relation {k}"
                    )
                p[i, j, k] = p[j, i, k] = lo
    return IntersectionTensor(p)


def divisibility_profile(t: IntersectionTensor, indices, modulus: int) -> bool:
    """True iff modulus divides p[x,y,k] for all x,y in indices and every k."""
    return not divisibility_failures(t, indices, modulus)


def divisibility_failures(t: IntersectionTensor, indices, modulus: int) -> list[tuple[int, int, int, int]]:
    """All (x, y, k, p_xy^k) with the divisibility hypothesis violated."""
    d = t.d
    idx = sorted(set(int(i) for i in indices))
    for i in idx:
        if i < 0 or i > d:
            raise ValueError(f"relation index {i} out of range 0..{d}")
    bad = []
    for x in idx:
        for y in idx:
            for k in range(d + 1):
                v = int(t.p[x, y, k])
                if v % modulus != 0:
                    bad.append((x, y, k, v))
    return bad


def scheme_to_json_dict(s: AssociationScheme, t: IntersectionTensor | None = None) -> dict:
    t = t if t is not None else intersection_tensor(s)
    return {"d": s.d, "n": s.n, "p_tensor": t.p.tolist()}


__all__ = [
    "AssociationScheme",
    "AxiomWitness",
    "IntersectionTensor",
    "divisibility_failures",
    "divisibility_profile",
    "from_distance_regular",
    "intersection_tensor",
    "scheme_to_json_dict",
    "verify_axioms",
]
