"""Self-orthogonal linear codes from quotient matrices, and their analysis:
dimension, exact minimum distance, weight structure, duality and
projectivity flags, and support graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from math import comb
from typing import Iterator

import numpy as np

from . import fp
from .graphs import Graph
from .partitions import QuotientSystem
from .schemes import IntersectionTensor, divisibility_failures


class ConstructionError(ValueError):
    """A construction hypothesis failed; the message names the violation."""


@dataclass(frozen=True)
class Provenance:
    graph: str = "?"
    subgroup: str = "I"
    relation: int | tuple[int, ...] = 0

    def to_dict(self) -> dict:
        rel = self.relation if isinstance(self.relation, int) else list(self.relation)
        return {"graph": self.graph, "subgroup": self.subgroup, "relation": rel}


@dataclass(frozen=True)
class LinearCode:
    """Row space of `generator` over F_p (or the row module over Z_m)."""

    generator: fp.Mat
    provenance: Provenance = field(default_factory=Provenance)

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def modulus(self) -> int:
        return self.generator.modulus

    @property
    def is_field(self) -> bool:
        return fp.is_prime(self.modulus)

    def dimension(self) -> int:
        if not self.is_field:
            raise ValueError("dimension is defined over prime fields; use module_type")
        return fp.rank(self.generator)

    def basis(self) -> fp.Mat:
        return fp.row_basis(self.generator)

    def module_type(self) -> dict[int, int]:
        return fp.smith_form(self.generator).module_type()

    def size(self) -> int:
        if self.is_field:
            return self.modulus ** self.dimension()
        out = 1
        for order, mult in self.module_type().items():
            out *= order**mult
        return out


def build_code(qs: QuotientSystem, t: IntersectionTensor, i: int, p: int, provenance: Provenance | None = None) -> LinearCode:
    """Code spanned by the rows of M_i mod p under the divisibility hypothesis."""
    if not fp.is_prime(p):
        raise ConstructionError(f"modulus {p} is not prime; use build_ring_code")
    return _build_common(qs, t, i, p, provenance)


def build_ring_code(qs: QuotientSystem, t: IntersectionTensor, i: int, m: int, provenance: Provenance | None = None) -> LinearCode:
    """Z_m module generated by the rows of M_i under the divisibility hypothesis."""
    if m < 2:
        raise ConstructionError(f"ring modulus must be >= 2, got {m}")
    return _build_common(qs, t, i, m, provenance)


def _build_common(qs: QuotientSystem, t: IntersectionTensor, i: int, m: int, provenance: Provenance | None) -> LinearCode:
    if not 1 <= i <= t.d:
        raise ConstructionError(f"relation index {i} out of range 1..{t.d}")
    if not qs.partition.uniform:
        raise ConstructionError(
            f"partition is not uniform: cell sizes {sorted(set(qs.partition.cell_sizes()))}"
        )
    bad = divisibility_failures(t, [i], m)
    if bad:
        x, y, k, v = bad[0]
        raise ConstructionError(f"{m} does not divide p_{{{x},{y}}}^{k} = {v}")
    gen = fp.mat(qs.matrices[i], m)
    g = fp.gram(gen)
    if not g.is_zero():
        raise AssertionError("self-orthogonality failed despite divisibility hypothesis")
    prov = provenance or Provenance(relation=i)
    return LinearCode(gen, prov)


# ----------------------------------------------------------------------
# minimum distance


@dataclass(frozen=True)
class DistanceCertificate:
    distance: int
    method: str
    lower_bound: int
    upper_bound: int
    enumeration_radius: int = 0
    information_sets: tuple[tuple[int, int], ...] = ()  # (rank, deficit) per set

    @property
    def certified(self) -> bool:
        return self.lower_bound >= self.upper_bound


class DistanceBudgetExceeded(RuntimeError):
    """The search would exceed the configured work budget."""


EXHAUSTIVE_LIMIT = 2**24


def minimum_distance(code: LinearCode, method: str = "auto", max_work: int = 200_000_000, threads: int = 1) -> int:
    return minimum_distance_certified(code, method=method, max_work=max_work, threads=threads).distance


def minimum_distance_certified(
    code: LinearCode, method: str = "auto", max_work: int = 200_000_000, threads: int = 1
) -> DistanceCertificate:
    """Exact minimum weight with a matching lower/upper bound certificate.

    method 'auto' enumerates all codewords while p^k <= 2^24 and otherwise
    runs Brouwer-Zimmermann over disjoint information sets.  Coordinate-
    disjoint components are solved independently (the minimum is attained
    on a single component).
    """
    if not code.is_field:
        raise ValueError("minimum_distance needs a prime field; see ring_min_weight")
    basis = code.basis()
    k = basis.rows
    if k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    comps = _components(basis.data)
    if len(comps) > 1 and method == "auto":
        certs = []
        for rows, cols in comps:
            sub = fp.mat(basis.data[np.ix_(rows, cols)], code.modulus)
            certs.append(minimum_distance_certified(LinearCode(sub), method=method, max_work=max_work, threads=threads))
        best = min(certs, key=lambda c: c.distance)
        return DistanceCertificate(
            distance=best.distance,
            method="components(" + ",".join(sorted({c.method for c in certs})) + ")",
            lower_bound=min(c.lower_bound for c in certs),
            upper_bound=best.upper_bound,
        )
    p = code.modulus
    if method == "exhaustive" or (method == "auto" and p**k <= EXHAUSTIVE_LIMIT):
        d = _exhaustive_min_weight(basis, threads=threads)
        return DistanceCertificate(d, "exhaustive", d, d, enumeration_radius=k)
    return _brouwer_zimmermann(basis, max_work=max_work, threads=threads)


def _components(rows: np.ndarray) -> list[tuple[list[int], list[int]]]:
    """Row/column groups of the generator's support, via union-find on columns."""
    k, n = rows.shape
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in range(k):
        sup = np.nonzero(rows[r])[0]
        for c in sup[1:]:
            a, b = find(int(sup[0])), find(int(c))
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for c in range(n):
        groups.setdefault(find(c), []).append(c)
    out = []
    for cols in groups.values():
        rws = [r for r in range(k) if rows[r, cols].any()]
        if rws:
            out.append((rws, cols))
    return out


def _exhaustive_min_weight(basis: fp.Mat, threads: int = 1) -> int:
    p = basis.modulus
    k, n = basis.rows, basis.cols
    if p == 2:
        return _exhaustive_gf2(basis.data, n)
    best = n + 1
    for cw in _iter_codeword_batches(basis.data, p):
        w = (cw != 0).sum(axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def _exhaustive_gf2(rows: np.ndarray, n: int) -> int:
    k = rows.shape[0]
    packed = fp.pack_rows_gf2(rows)
    k1 = k // 2
    left = _xor_span(packed[:k1])      # 2^k1 x words
    right = _xor_span(packed[k1:])     # 2^(k-k1) x words
    best = n + 1
    # weights of pure right combinations (left part zero), excluding 0
    wr = fp.popcount_rows(right)
    nz = wr[1:]
    if nz.size:
        best = min(best, int(nz.min()))
    chunk = max(1, (1 << 22) // max(1, left.shape[0]))
    for start in range(1, right.shape[0], chunk):
        block = right[start : start + chunk]
        xored = left[1:, None, :] ^ block[None, :, :]
        w = fp.popcount_rows(xored.reshape(-1, xored.shape[-1]))
        if w.size:
            best = min(best, int(w.min()))
    wl = fp.popcount_rows(left)
    if wl[1:].size:
        best = min(best, int(wl[1:].min()))
    return best


def _xor_span(packed: np.ndarray) -> np.ndarray:
    """All XOR combinations of the given packed rows, Gray-code order free."""
    k, words = packed.shape
    out = np.zeros((1 << k, words), dtype=np.uint64)
    size = 1
    for i in range(k):
        out[size : 2 * size] = out[:size] ^ packed[i]
        size *= 2
    return out


def _iter_codeword_batches(rows: np.ndarray, p: int, batch: int = 1 << 14) -> Iterator[np.ndarray]:
    """All p^k codewords of the row space, in batches (includes zero)."""
    k = rows.shape[0]
    total = p**k
    weights = p ** np.arange(k)
    for start in range(0, total, batch):
        ids = np.arange(start, min(start + batch, total))
        digits = (ids[:, None] // weights[None, :]) % p
        yield fp.int_matmul(digits, rows) % p


@dataclass
class _InfoSet:
    columns: np.ndarray
    rank: int
    deficit: int
    gen: np.ndarray  # full-rank generator, systematic on `columns`


def _information_sets(basis: fp.Mat) -> list[_InfoSet]:
    p = basis.modulus
    k, n = basis.rows, basis.cols
    sets: list[_InfoSet] = []
    available = np.ones(n, dtype=bool)
    while True:
        cols = np.nonzero(available)[0]
        if cols.size == 0:
            break
        sub = fp.mat(basis.data[:, cols], p)
        res = fp.rref(sub)
        if res.rank == 0:
            break
        pivots = cols[list(res.pivots)]
        # transform the full generator the same way: rref of columns-permuted matrix
        order = np.concatenate([cols, np.nonzero(~available)[0]])
        full = fp.rref(fp.mat(basis.data[:, order], p)).matrix.data
        unperm = np.empty_like(full)
        unperm[:, order] = full
        sets.append(_InfoSet(columns=pivots, rank=res.rank, deficit=k - res.rank, gen=unperm))
        available[pivots] = False
    return sets


def _coeff_patterns(p: int, s: int) -> np.ndarray:
    """Coefficient rows (first entry 1) covering all codewords up to scalars."""
    if p == 2 or s == 1:
        return np.ones((1, s), dtype=np.int64)
    tails = np.array(list(product(range(1, p), repeat=s - 1)), dtype=np.int64)
    return np.hstack([np.ones((tails.shape[0], 1), dtype=np.int64), tails])


def _combination_chunks(k: int, s: int, chunk: int = 8192) -> Iterator[np.ndarray]:
    it = combinations(range(k), s)
    while True:
        block = list(islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


class _Best:
    """Monotone-decreasing shared upper bound (atomic-min under the GIL)."""

    def __init__(self, value: int):
        self.value = value

    def offer(self, w: int):
        if w < self.value:
            self.value = w


def _enumerate_radius(gen: np.ndarray, p: int, s: int, best: _Best, threads: int = 1):
    """Update `best` with all weights of combinations of exactly s rows."""
    k = gen.shape[0]
    patterns = _coeff_patterns(p, s)

    def work(idx_block: np.ndarray):
        rows = gen[idx_block]  # (B, s, n)
        for pat in patterns:
            cw = np.tensordot(pat, rows, axes=([0], [1])) % p  # (B, n)
            w = (cw != 0).sum(axis=1)
            nz = w[w > 0]
            if nz.size:
                best.offer(int(nz.min()))

    blocks = _combination_chunks(k, s)
    if threads <= 1:
        for blk in blocks:
            work(blk)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(work, blocks))


def _bz_work_estimate(k: int, p: int, w: int, n_sets: int) -> int:
    total = 0
    for s in range(1, w + 1):
        total += comb(k, s) * (p - 1) ** (s - 1)
    return total * n_sets


def _brouwer_zimmermann(basis: fp.Mat, max_work: int, threads: int = 1) -> DistanceCertificate:
    p = basis.modulus
    k, n = basis.rows, basis.cols
    sets = _information_sets(basis)
    best = _Best(n + 1)
    for iset in sets:
        w = (iset.gen != 0).sum(axis=1)
        best.offer(int(w[w > 0].min()))
    radius = 0
    lower = 0
    while lower < best.value:
        radius += 1
        if radius > k:
            lower = best.value
            break
        if _bz_work_estimate(k, p, radius, len(sets)) > max_work:
            raise DistanceBudgetExceeded(
                f"information-set enumeration to radius {radius} exceeds the work budget "
                f"(upper bound so far {best.value}, certified lower bound {lower})"
            )
        for iset in sets:
            _enumerate_radius(iset.gen, p, radius, best, threads=threads)
        lower = sum(max(0, radius + 1 - iset.deficit) for iset in sets)
    return DistanceCertificate(
        distance=best.value,
        method="brouwer-zimmermann",
        lower_bound=min(lower, best.value),
        upper_bound=best.value,
        enumeration_radius=radius,
        information_sets=tuple((s.rank, s.deficit) for s in sets),
    )


# ----------------------------------------------------------------------
# weight structure


WEIGHT_ENUM_LIMIT = 2**28


def weight_distribution(code: LinearCode, limit: int = WEIGHT_ENUM_LIMIT) -> dict[int, int]:
    """Exact weight distribution, by enumeration or MacWilliams from the dual."""
    if not code.is_field:
        raise ValueError("weight distribution is implemented over prime fields")
    basis = code.basis()
    p, k, n = code.modulus, basis.rows, basis.cols
    if p**k <= limit:
        return _enumerate_weights(basis)
    dual_k = n - k
    if p**dual_k <= limit:
        dual = LinearCode(fp.kernel_basis(basis))
        ddist = _enumerate_weights(dual.basis())
        return macwilliams_transform(ddist, n, p)
    raise ValueError(
        f"both the code (p^{k}) and its dual (p^{dual_k}) exceed the enumeration limit"
    )


def _enumerate_weights(basis: fp.Mat) -> dict[int, int]:
    p, k = basis.modulus, basis.rows
    if k == 0:
        return {0: 1}
    counts = np.zeros(basis.cols + 1, dtype=np.int64)
    if p == 2:
        packed = fp.pack_rows_gf2(basis.data)
        k1 = min(k, 14)
        left = _xor_span(packed[:k1])
        right = _xor_span(packed[k1:])
        for i in range(right.shape[0]):
            w = fp.popcount_rows(left ^ right[i])
            counts += np.bincount(w, minlength=basis.cols + 1)
    else:
        for cw in _iter_codeword_batches(basis.data, p):
            w = (cw != 0).sum(axis=1)
            counts += np.bincount(w, minlength=basis.cols + 1)
    return {int(w): int(c) for w, c in enumerate(counts) if c}


def macwilliams_transform(dist: dict[int, int], n: int, p: int) -> dict[int, int]:
    """Weight distribution of the dual code from that of the code."""
    size = sum(dist.values())
    out: dict[int, int] = {}
    for j in range(n + 1):
        total = 0
        for w, count in dist.items():
            kraw = 0
            for s in range(j + 1):
                kraw += (-1) ** s * (p - 1) ** (j - s) * comb(w, s) * comb(n - w, j - s)
            total += count * kraw
        if total % size != 0:
            raise AssertionError("MacWilliams transform is not integral; inconsistent input")
        if total:
            out[j] = total // size
    return out


def duality_flags(code: LinearCode) -> tuple[bool, bool]:
    """(self_orthogonal, self_dual)."""
    so = fp.gram(code.generator).is_zero()
    if not code.is_field:
        return so, False
    sd = so and 2 * code.dimension() == code.n
    return so, sd


def is_projective(code: LinearCode, crosscheck_limit: int = 2**20) -> bool:
    """No two generator columns linearly dependent.

    When the weight distribution is cheap to obtain, the answer is
    cross-checked against dual distance >= 3 via MacWilliams.
    """
    basis = code.basis()
    if basis.rows == 0:
        raise ValueError("projectivity is undefined for the zero code")
    p = code.modulus
    cols = basis.data.T
    seen = set()
    answer = True
    for col in cols:
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            answer = False
            break
        lead = int(col[nz[0]])
        monic = tuple((col * pow(lead, -1, p)) % p)
        if monic in seen:
            answer = False
            break
        seen.add(monic)
    if p ** basis.rows <= crosscheck_limit:
        dual = macwilliams_transform(_enumerate_weights(basis), code.n, p)
        dual_dist = min((w for w in dual if w > 0), default=code.n + 1)
        if (dual_dist >= 3) != answer:
            raise AssertionError("projectivity check disagrees with dual distance")
    return answer


def two_weight_check(code: LinearCode) -> tuple[int, int] | None:
    """The two weights if the code has exactly two nonzero weights."""
    dist = weight_distribution(code)
    nonzero = sorted(w for w in dist if w > 0)
    if len(nonzero) == 2:
        return (nonzero[0], nonzero[1])
    return None


# ----------------------------------------------------------------------
# supports of fixed-weight codewords and their graphs


def codeword_supports(code: LinearCode, w: int, limit: int = WEIGHT_ENUM_LIMIT) -> list[tuple[int, ...]]:
    """Distinct supports of all weight-w codewords, sorted."""
    basis = code.basis()
    p, k = code.modulus, basis.rows
    if p**k > limit:
        raise ValueError(f"code too large to enumerate (p^{k})")
    supports = set()
    if p == 2:
        packed = fp.pack_rows_gf2(basis.data)
        k1 = min(k, 14)
        left = _xor_span(packed[:k1])
        right = _xor_span(packed[k1:])
        for i in range(right.shape[0]):
            block = left ^ right[i]
            hits = block[fp.popcount_rows(block) == w]
            for row in hits:
                bits = np.unpackbits(row.view(np.uint8), bitorder="little")[: code.n]
                supports.add(tuple(int(x) for x in np.nonzero(bits)[0]))
    else:
        for cw in _iter_codeword_batches(basis.data, p):
            wt = (cw != 0).sum(axis=1)
            for row in cw[wt == w]:
                supports.add(tuple(int(x) for x in np.nonzero(row)[0]))
    return sorted(supports)


def support_graph(code: LinearCode, w: int, rule: int) -> Graph:
    """Graph on the weight-w supports; edges join supports meeting in `rule` points."""
    sups = codeword_supports(code, w)
    if not sups:
        raise ValueError(f"no codewords of weight {w}")
    sets = [frozenset(s) for s in sups]
    n = len(sets)
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if len(sets[i] & sets[j]) == rule:
                a[i, j] = a[j, i] = 1
    return Graph(a)


def srg_parameters(g: Graph) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) if the graph is strongly regular, else None."""
    v = g.n
    a = g.adjacency.astype(np.int64)
    deg = a.sum(axis=1)
    if v < 2 or not (deg == deg[0]).all():
        return None
    k = int(deg[0])
    if k == 0 or k == v - 1:
        return None
    sq = fp.int_matmul(a, a)
    adj_mask = a.astype(bool)
    off = ~adj_mask & ~np.eye(v, dtype=bool)
    lams = sq[adj_mask]
    mus = sq[off]
    if lams.size and (lams != lams[0]).any():
        return None
    if mus.size and (mus != mus[0]).any():
        return None
    return (v, k, int(lams[0]) if lams.size else 0, int(mus[0]) if mus.size else 0)


def scan_support_graph_srg(code: LinearCode, w: int) -> list[tuple[int, tuple[int, int, int, int]]]:
    """All intersection-size rules whose support graph is strongly regular."""
    out = []
    for rule in range(0, w + 1):
        params = srg_parameters(support_graph(code, w, rule))
        if params is not None:
            out.append((rule, params))
    return out


# ----------------------------------------------------------------------
# ring-code extras and reports


def ring_min_weight(code: LinearCode, limit: int = 2**22) -> int | None:
    """Minimum Hamming weight of a Z_m row module by full enumeration.

    Uses the diagonalised generating set: row t of D V^-1 with its cyclic
    coefficient range m / d_t.  Returns None for the zero module.
    """
    sf = fp.smith_form(code.generator)
    m = code.modulus
    vinv = fp.solve_right_identity(sf.v)
    gens = []
    radices = []
    for t, dv in enumerate(sf.divisors):
        dval = dv if dv else m
        order = m // int(np.gcd(dval, m))
        if order > 1:
            gens.append((dval * vinv.data[t]) % m)
            radices.append(order)
    if not gens:
        return None
    total = 1
    for r in radices:
        total *= r
    if total > limit:
        raise ValueError(f"ring code too large to enumerate ({total} words)")
    gens = np.array(gens, dtype=np.int64)
    place = np.ones(len(radices), dtype=np.int64)
    for t in range(1, len(radices)):
        place[t] = place[t - 1] * radices[t - 1]
    best = None
    batch = 1 << 14
    for start in range(0, total, batch):
        ids = np.arange(start, min(start + batch, total))
        digits = (ids[:, None] // place[None, :]) % np.array(radices)
        cw = fp.int_matmul(digits, gens) % m
        wt = (cw != 0).sum(axis=1)
        nz = wt[wt > 0]
        if nz.size:
            w = int(nz.min())
            if best is None or w < best:
                best = w
    return best


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    d: int | None
    modulus: int
    weights: tuple[int, ...] | None
    weight_distribution: dict[int, int] | None
    self_orthogonal: bool
    self_dual: bool
    projective: bool | None
    two_weight: bool | None
    provenance: Provenance
    certificate: DistanceCertificate | None = None

    def params(self) -> str:
        d = "?" if self.d is None else self.d
        return f"[{self.n},{self.k},{d}]_{self.modulus}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.modulus,
            "weights": list(self.weights) if self.weights is not None else None,
            "weight_distribution": (
                {str(w): c for w, c in sorted(self.weight_distribution.items())}
                if self.weight_distribution is not None
                else None
            ),
            "flags": {
                "self_orthogonal": self.self_orthogonal,
                "self_dual": self.self_dual,
                "projective": self.projective,
                "two_weight": self.two_weight,
            },
            "provenance": self.provenance.to_dict(),
        }


def code_report(
    code: LinearCode,
    with_distance: bool = True,
    with_weights: bool = False,
    max_work: int = 200_000_000,
    threads: int = 1,
) -> CodeReport:
    so, sd = duality_flags(code)
    k = code.dimension()
    d = None
    cert = None
    dist = None
    weights = None
    projective = None
    two_w = None
    if with_distance and k > 0:
        cert = minimum_distance_certified(code, max_work=max_work, threads=threads)
        d = cert.distance
    if with_weights and k > 0:
        dist = weight_distribution(code)
        weights = tuple(sorted(w for w in dist if w > 0))
        two_w = len(weights) == 2
        projective = is_projective(code)
        if d is None:
            d = min(weights, default=None)
    return CodeReport(
        n=code.n,
        k=k,
        d=d,
        modulus=code.modulus,
        weights=weights,
        weight_distribution=dist,
        self_orthogonal=so,
        self_dual=sd,
        projective=projective,
        two_weight=two_w,
        provenance=code.provenance,
        certificate=cert,
    )


def generator_text(code: LinearCode) -> str:
    """Generator matrix as rows of digits (deterministic export format)."""
    return "\n".join("".join(str(int(x)) for x in row) for row in code.generator.data)


def report_json(report: CodeReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True)


__all__ = [
    "CodeReport",
    "ConstructionError",
    "DistanceBudgetExceeded",
    "DistanceCertificate",
    "LinearCode",
    "Provenance",
    "build_code",
    "build_ring_code",
    "code_report",
    "codeword_supports",
    "duality_flags",
    "generator_text",
    "is_projective",
    "macwilliams_transform",
    "minimum_distance",
    "minimum_distance_certified",
    "report_json",
    "ring_min_weight",
    "scan_support_graph_srg",
    "srg_parameters",
    "support_graph",
    "two_weight_check",
    "weight_distribution",
]
