"""Self-orthogonal subspace codes: matrix-algebra closure over F_p,
row-space enumeration, and the subspace metric."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import fp
from .codes import ConstructionError, Provenance
from .partitions import QuotientSystem
from .schemes import IntersectionTensor, divisibility_failures


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^n held as its canonical RREF basis (no zero rows)."""

    ambient: int
    modulus: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows, ambient: int, modulus: int) -> "Subspace":
        m = fp.mat(np.asarray(rows, dtype=np.int64).reshape(-1, ambient), modulus)
        res = fp.rref(m)
        basis = tuple(tuple(int(x) for x in row) for row in res.matrix.data[: res.rank])
        return Subspace(ambient, modulus, basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_array(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.ambient), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)


def subspace_distance(u: Subspace, w: Subspace) -> int:
    """d_s(U, W) = dim(U+W) - dim(U n W) = 2 dim(U+W) - dim U - dim W."""
    if u.ambient != w.ambient or u.modulus != w.modulus:
        raise ValueError("subspaces live in different ambient spaces")
    stacked = np.vstack([u.basis_array(), w.basis_array()])
    if stacked.shape[0] == 0:
        return 0
    joint = fp.rank(fp.mat(stacked, u.modulus))
    return 2 * joint - u.dim - w.dim


@dataclass(frozen=True)
class SubspaceCode:
    codewords: tuple[Subspace, ...]
    n: int
    modulus: int
    provenance: Provenance | None = None

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def dimension_set(self) -> tuple[int, ...]:
        return tuple(sorted({s.dim for s in self.codewords}))

    def params(self) -> str:
        k = ",".join(map(str, self.dimension_set))
        d = min_subspace_distance(self) if self.size >= 2 else "-"
        return f"({self.n},{self.size},{d},{{{k}}})_{self.modulus}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.modulus,
            "size": self.size,
            "K": list(self.dimension_set),
            "d_min": min_subspace_distance(self) if self.size >= 2 else None,
            "codewords": [[list(row) for row in s.basis] for s in self.codewords],
        }


def min_subspace_distance(code: SubspaceCode) -> int:
    if code.size < 2:
        raise ValueError("minimum distance needs at least two codewords")
    best = None
    for i in range(code.size):
        for j in range(i + 1, code.size):
            d = subspace_distance(code.codewords[i], code.codewords[j])
            if best is None or d < best:
                best = d
    return best


def check_so_subspace(code: SubspaceCode) -> bool:
    """Every basis vector of every codeword orthogonal to every other,
    self-pairs included."""
    rows = [s.basis_array() for s in code.codewords if s.dim > 0]
    if not rows:
        return True
    stacked = fp.mat(np.vstack(rows), code.modulus)
    return fp.gram(stacked).is_zero()


@dataclass(frozen=True)
class AlgebraBasis:
    """Linearly independent spanning set of the (non-unital) closure of the
    generators under matrix multiplication."""

    basis: tuple[np.ndarray, ...]
    size: int
    modulus: int

    @property
    def dim(self) -> int:
        return len(self.basis)


class _SpanTracker:
    """Incremental row-space membership for vectorised matrices."""

    def __init__(self, length: int, p: int):
        self.length = length
        self.p = p
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def _reduce(self, vec: np.ndarray) -> np.ndarray:
        vec = vec % self.p
        for row, piv in zip(self.rows, self.pivots):
            c = int(vec[piv])
            if c:
                vec = (vec - c * row) % self.p
        return vec

    def add(self, vec: np.ndarray) -> bool:
        """Insert if independent; returns True when the span grew."""
        vec = self._reduce(vec)
        nz = np.nonzero(vec)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(vec[piv]), -1, self.p)
        vec = (vec * inv) % self.p
        for i, row in enumerate(self.rows):
            c = int(row[piv])
            if c:
                self.rows[i] = (row - c * vec) % self.p
        self.rows.append(vec)
        self.pivots.append(piv)
        return True


def algebra_closure(gens, p: int) -> AlgebraBasis:
    """Span-grow the generators under products until multiplicatively closed.

    The identity is not adjoined; the closure is the smallest subspace
    containing the generators and closed under the matrix product.
    """
    mats = []
    for g in gens:
        arr = g.data if isinstance(g, fp.Mat) else np.asarray(g, dtype=np.int64)
        mats.append(arr % p)
    if not mats:
        raise ValueError("need at least one generator")
    t = mats[0].shape[0]
    for m in mats:
        if m.shape != (t, t):
            raise ValueError("generators must be square matrices of equal size")
    tracker = _SpanTracker(t * t, p)
    basis: list[np.ndarray] = []
    queue: list[np.ndarray] = []
    for m in mats:
        if tracker.add(m.reshape(-1)):
            basis.append(m)
            queue.append(m)
    while queue:
        new = queue.pop()
        products = []
        for b in list(basis):
            products.append(fp.int_matmul(new, b) % p)
            products.append(fp.int_matmul(b, new) % p)
        for prod in products:
            if tracker.add(prod.reshape(-1)):
                basis.append(prod)
                queue.append(prod)
    return AlgebraBasis(tuple(basis), t, p)


def enumerate_row_spaces(ab: AlgebraBasis, cap: int = 2**26, provenance: Provenance | None = None) -> SubspaceCode:
    """Row spaces of every element of the spanned algebra, zero included."""
    p = ab.modulus
    total = p**ab.dim
    if total > cap:
        raise ValueError(
            f"enumeration needs {total} = {p}^{ab.dim} combinations, over the cap {cap}"
        )
    t = ab.size
    stack = np.stack([b.reshape(-1) for b in ab.basis]) if ab.dim else np.zeros((0, t * t), dtype=np.int64)
    seen: dict[bytes, Subspace] = {}
    zero = Subspace.from_rows(np.zeros((1, t), dtype=np.int64), t, p)
    seen[b""] = zero
    weights = p ** np.arange(ab.dim)
    batch = 1 << 12
    for start in range(0, total, batch):
        ids = np.arange(start, min(start + batch, total))
        digits = (ids[:, None] // weights[None, :]) % p
        flat = fp.int_matmul(digits, stack) % p if ab.dim else np.zeros((len(ids), t * t), dtype=np.int64)
        for row in flat:
            if not row.any():
                continue
            sub = Subspace.from_rows(row.reshape(t, t), t, p)
            key = np.array(sub.basis, dtype=np.int64).tobytes() if sub.basis else b""
            if key not in seen:
                seen[key] = sub
    codewords = tuple(sorted(seen.values(), key=lambda s: (s.dim, s.basis)))
    return SubspaceCode(codewords, t, p, provenance)


def build_subspace_code(
    qs: QuotientSystem,
    t: IntersectionTensor,
    indices,
    p: int,
    cap: int = 2**26,
    provenance: Provenance | None = None,
) -> SubspaceCode:
    """Theorem pipeline: closure of the chosen quotient matrices mod p,
    then row-space enumeration; self-orthogonality is asserted."""
    if not fp.is_prime(p):
        raise ConstructionError(f"modulus {p} is not prime")
    idx = sorted(set(int(i) for i in indices))
    if not qs.partition.uniform:
        raise ConstructionError(
            f"partition is not uniform: cell sizes {sorted(set(qs.partition.cell_sizes()))}"
        )
    bad = divisibility_failures(t, idx, p)
    if bad:
        x, y, k, v = bad[0]
        raise ConstructionError(f"{p} does not divide p_{{{x},{y}}}^{k} = {v}")
    gens = [fp.mat(qs.matrices[i], p) for i in idx]
    ab = algebra_closure(gens, p)
    prov = provenance or Provenance(relation=tuple(idx))
    code = enumerate_row_spaces(ab, cap=cap, provenance=prov)
    if not check_so_subspace(code):
        raise AssertionError("self-orthogonality failed despite divisibility hypothesis")
    return code


def subspace_code_json(code: SubspaceCode) -> str:
    return json.dumps(code.to_dict(), sort_keys=True)


__all__ = [
    "AlgebraBasis",
    "Subspace",
    "SubspaceCode",
    "algebra_closure",
    "build_subspace_code",
    "check_so_subspace",
    "enumerate_row_spaces",
    "min_subspace_distance",
    "subspace_code_json",
    "subspace_distance",
]
