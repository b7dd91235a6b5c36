"""Vertex graphs: parsing, generation, distance systems, distance-regularity.

Graphs are simple and undirected, stored as dense symmetric 0/1 numpy
arrays with a zero diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import fp


class GraphFormatError(ValueError):
    """Malformed graph input; carries the byte offset where decoding failed."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adjacency, dtype=np.uint8)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if a.diagonal().any():
            raise ValueError("adjacency must have zero diagonal")
        if ((a != 0) & (a != 1)).any():
            raise ValueError("adjacency entries must be 0/1")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(np.int64)

    def is_regular(self) -> bool:
        deg = self.degrees()
        return bool(deg.size == 0 or (deg == deg[0]).all())


def graph_from_edges(n: int, edges) -> Graph:
    a = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        a[u, v] = a[v, u] = 1
    return Graph(a)


# -- graph6 ------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_read_n(data: bytes) -> tuple[int, int]:
    """Decode the N(n) prefix; returns (n, bytes consumed)."""
    if not data:
        raise GraphFormatError("empty graph6 string", 0)
    if data[0] != 126:
        n = data[0] - 63
        if n < 0:
            raise GraphFormatError(f"invalid size byte {data[0]}", 0)
        return n, 1
    if len(data) >= 2 and data[1] == 126:
        chunk = data[2:8]
        if len(chunk) < 6:
            raise GraphFormatError("truncated 36-bit size field", len(data))
        width, start = 6, 2
    else:
        chunk = data[1:4]
        if len(chunk) < 3:
            raise GraphFormatError("truncated 18-bit size field", len(data))
        width, start = 3, 1
    n = 0
    for i, b in enumerate(chunk):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid size byte {b}", start + i)
        n = (n << 6) | (b - 63)
    return n, start + width


def parse_graph6(text: str | bytes) -> Graph:
    """Parse one graph in graph6 format (optional '>>graph6<<' header)."""
    if isinstance(text, bytes):
        s = text.decode("ascii", errors="strict")
    else:
        s = text
    s = s.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :].lstrip()
    data = s.encode("ascii")
    n, pos = _g6_read_n(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphFormatError(
            f"graph on {n} vertices needs {need} data bytes, got {len(body)}", pos + min(len(body), need)
        )
    bits = np.zeros(need * 6, dtype=np.uint8)
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid data byte {b}", pos + i)
        v = b - 63
        for j in range(6):
            bits[6 * i + j] = (v >> (5 - j)) & 1
    if bits[nbits:].any():
        raise GraphFormatError("nonzero padding bits", pos + need - 1)
    a = np.zeros((n, n), dtype=np.uint8)
    if n > 1:
        iu = np.triu_indices(n, k=1)
        # graph6 orders the upper triangle column by column
        order = np.lexsort((iu[0], iu[1]))
        a[iu[0][order], iu[1][order]] = bits[:nbits]
        a |= a.T
    return Graph(a)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    else:
        raise ValueError("graph too large for this writer")
    if n > 1:
        iu = np.triu_indices(n, k=1)
        order = np.lexsort((iu[0], iu[1]))
        bits = g.adjacency[iu[0][order], iu[1][order]]
    else:
        bits = np.zeros(0, dtype=np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    vals = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return (head + bytes(int(v) + 63 for v in vals)).decode("ascii")


def parse_edge_list(text: str) -> Graph:
    """Edge list, one 'u v' pair per line, 0-indexed, '#' comments allowed."""
    edges = []
    top = -1
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {ln}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {ln}: negative vertex index")
        edges.append((u, v))
        top = max(top, u, v)
    return graph_from_edges(top + 1, edges)


# -- constructions -----------------------------------------------------


def bipartite_double(g: Graph) -> Graph:
    """Bipartite double cover: (u,0) ~ (v,1) iff u ~ v."""
    n = g.n
    a = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    a[:n, n:] = g.adjacency
    a[n:, :n] = g.adjacency
    return Graph(a)


def paley_hadamard_12() -> np.ndarray:
    """Order-12 Hadamard matrix from the quadratic residues of F_11."""
    q = 11
    squares = {(x * x) % q for x in range(1, q)}
    chi = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        chi[x] = 1 if x in squares else -1
    h = np.ones((q + 1, q + 1), dtype=np.int64)
    h[1:, 0] = -1
    for i in range(q):
        for j in range(q):
            h[1 + i, 1 + j] = 1 if i == j else chi[(j - i) % q]
    return h


def hadamard_graph(h: np.ndarray) -> Graph:
    """48-vertex Hadamard graph of an order-12 Hadamard matrix.

    Vertices are signed rows r_i^+/- (0..23) and signed columns c_j^+/-
    (24..47); r_i^e ~ c_j^f iff e*f*h[i,j] = 1.
    """
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (12, 12) or not np.isin(h, (-1, 1)).all():
        raise ValueError("expected a 12x12 matrix with entries +-1")
    if not np.array_equal(fp.int_matmul(h, h.T), 12 * np.eye(12, dtype=np.int64)):
        raise ValueError("input is not a Hadamard matrix of order 12 (h h^T != 12 I)")
    n = 48
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(12):
        for e in (0, 1):  # sign +1, -1
            u = 2 * i + e
            for j in range(12):
                for f in (0, 1):
                    v = 24 + 2 * j + f
                    sign = (1 - 2 * e) * (1 - 2 * f) * h[i, j]
                    if sign == 1:
                        a[u, v] = a[v, u] = 1
    return Graph(a)


def doubled_odd_graph(k: int) -> Graph:
    """Inclusion graph on the k-subsets and (k+1)-subsets of a (2k+1)-set."""
    if k < 2:
        raise ValueError("k must be >= 2")
    ground = range(2 * k + 1)
    small = [frozenset(c) for c in combinations(ground, k)]
    big = [frozenset(c) for c in combinations(ground, k + 1)]
    n = len(small) + len(big)
    a = np.zeros((n, n), dtype=np.uint8)
    for i, s in enumerate(small):
        for j, b in enumerate(big):
            if s < b:
                a[i, len(small) + j] = a[len(small) + j, i] = 1
    return Graph(a)


# -- distance structure ------------------------------------------------


@dataclass(frozen=True)
class DistanceSystem:
    """Distance-i 0/1 matrices A_0..A_d of a connected graph."""

    matrices: tuple[np.ndarray, ...]

    @property
    def diameter(self) -> int:
        return len(self.matrices) - 1

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]
    valencies: tuple[int, ...]

    def __str__(self) -> str:
        bs = ",".join(map(str, self.b))
        cs = ",".join(map(str, self.c))
        return "{%s;%s}" % (bs, cs)

    @property
    def diameter(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class RegularityWitness:
    """Two pairs at the same distance with different |G_i(v) n G_j(w)| counts."""

    i: int
    j: int
    k: int
    pair_a: tuple[int, int]
    count_a: int
    pair_b: tuple[int, int]
    count_b: int

    def __str__(self) -> str:
        return (
            f"not distance-regular: |G_{self.i}(v) n G_{self.j}(w)| differs on "
            f"distance-{self.k} pairs {self.pair_a} ({self.count_a}) and "
            f"{self.pair_b} ({self.count_b})"
        )


def distance_matrices(g: Graph) -> DistanceSystem:
    """All distance matrices via simultaneous BFS; rejects disconnected input."""
    n = g.n
    adj = g.adjacency.astype(np.float64)
    reached = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.float64)
    mats = [np.eye(n, dtype=np.uint8)]
    while True:
        nxt = (frontier @ adj) > 0
        nxt &= ~reached
        if not nxt.any():
            break
        mats.append(nxt.astype(np.uint8))
        reached |= nxt
        frontier = nxt.astype(np.float64)
    if not reached.all():
        raise ValueError("graph is disconnected")
    return DistanceSystem(tuple(mats))


def verify_distance_regular(ds: DistanceSystem) -> IntersectionArray | RegularityWitness:
    """Check constancy of all pairwise distance-intersection counts.

    Returns the intersection array on success and a witness of two pairs
    with differing counts otherwise.
    """
    mats = ds.matrices
    d = ds.diameter
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
                    flat = np.argwhere(supports[k])
                    ia = int(np.argmin(prod[supports[k]]))
                    ib = int(np.argmax(prod[supports[k]]))
                    return RegularityWitness(
                        i=i,
                        j=j,
                        k=k,
                        pair_a=tuple(int(x) for x in flat[ia]),
                        count_a=lo,
                        pair_b=tuple(int(x) for x in flat[ib]),
                        count_b=hi,
                    )
                p[i, j, k] = p[j, i, k] = lo
    valencies = tuple(int(p[i, i, 0]) for i in range(d + 1))
    # b_i = p^i_{i+1,1} and c_i = p^i_{i-1,1}
    b = tuple(int(p[i + 1, 1, i]) for i in range(d))
    c = tuple(int(p[i - 1, 1, i]) for i in range(1, d + 1))
    return IntersectionArray(b=b, c=c, valencies=valencies)


__all__ = [
    "DistanceSystem",
    "Graph",
    "GraphFormatError",
    "IntersectionArray",
    "RegularityWitness",
    "bipartite_double",
    "distance_matrices",
    "doubled_odd_graph",
    "graph_from_edges",
    "hadamard_graph",
    "paley_hadamard_12",
    "parse_edge_list",
    "parse_graph6",
    "verify_distance_regular",
]
