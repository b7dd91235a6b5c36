"""Exact dense linear algebra over Z_m, specialised to prime fields F_p.

All matrices are numpy int64 arrays with entries reduced into [0, m).
Products route through BLAS float64 when the exact integer result fits
(it always does for the sizes handled here), so nothing ever leaves
exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

# float64 matmul is exact while every inner product stays below 2^53
_FLOAT_SAFE = 2**53


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def int_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact integer matrix product, BLAS-accelerated when safe."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.size and y.size:
        bound = int(np.abs(x).max()) * int(np.abs(y).max()) * x.shape[1]
        if bound < _FLOAT_SAFE:
            out = np.rint(x.astype(np.float64) @ y.astype(np.float64))
            return out.astype(np.int64)
    return x @ y


@dataclass(frozen=True)
class Mat:
    """Dense matrix over Z_m; immutable after construction."""

    data: np.ndarray
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        arr = np.mod(arr, self.modulus)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def transpose(self) -> "Mat":
        return Mat(self.data.T, self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def is_zero(self) -> bool:
        return not self.data.any()


def mat(entries, modulus: int) -> Mat:
    return Mat(np.asarray(entries), modulus)


def identity(n: int, modulus: int) -> Mat:
    return Mat(np.eye(n, dtype=np.int64), modulus)


def zeros(rows: int, cols: int, modulus: int) -> Mat:
    return Mat(np.zeros((rows, cols), dtype=np.int64), modulus)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    return Mat(int_matmul(a.data, b.data) % a.modulus, a.modulus)


def mat_add(a: Mat, b: Mat) -> Mat:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if a.data.shape != b.data.shape:
        raise ValueError("shape mismatch")
    return Mat(a.data + b.data, a.modulus)


def scalar_mul(c: int, a: Mat) -> Mat:
    return Mat((c % a.modulus) * a.data, a.modulus)


def gram(a: Mat) -> Mat:
    """a times its own transpose, reduced mod m."""
    return Mat(int_matmul(a.data, a.data.T) % a.modulus, a.modulus)


def inverse_table(p: int) -> np.ndarray:
    """inv[x] for x in 1..p-1; index 0 unused."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


@dataclass(frozen=True)
class RrefResult:
    matrix: Mat
    rank: int
    pivots: tuple[int, ...]


def rref(a: Mat) -> RrefResult:
    """Reduced row-echelon form over a prime field.

    Deterministic: columns scanned left to right, pivot taken from the
    topmost unprocessed row with a nonzero entry.
    """
    p = a.modulus
    if not is_prime(p):
        raise ValueError(f"rref needs a prime modulus, got {p}; use smith_form")
    m = np.array(a.data, dtype=np.int64)
    nrows, ncols = m.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * inv[m[r, c]]) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return RrefResult(Mat(m, p), r, tuple(pivots))


def rank(a: Mat) -> int:
    return rref(a).rank


def row_basis(a: Mat) -> Mat:
    """Canonical basis (RREF nonzero rows) of the row space of a."""
    res = rref(a)
    return Mat(res.matrix.data[: res.rank], a.modulus)


def kernel_basis(a: Mat) -> Mat:
    """Basis of the right kernel {x : a x = 0} over a prime field, as rows."""
    res = rref(a)
    p = a.modulus
    n = a.cols
    pivots = list(res.pivots)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-int(res.matrix.data[ri, fc])) % p
    return Mat(basis, p)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class SmithForm:
    """Diagonalisation U a V = D over Z_m with U, V invertible mod m.

    divisors holds the canonical diagonal: each entry generates the same
    ideal of Z_m as the corresponding diagonal entry, each divides the
    next, and 0 marks a row contributing no free generator.
    """

    u: Mat
    v: Mat
    diagonal: Mat
    divisors: tuple[int, ...]
    modulus: int

    def module_type(self) -> dict[int, int]:
        """Multiset {cyclic order: multiplicity} of the row module."""
        out: dict[int, int] = {}
        for d in self.divisors:
            order = self.modulus // gcd(d if d else self.modulus, self.modulus)
            if order > 1:
                out[order] = out.get(order, 0) + 1
        return out


def _rowop2(w: np.ndarray, u: np.ndarray, i: int, j: int, m2: np.ndarray, mod: int):
    block = np.vstack([w[i], w[j]])
    w[[i, j]] = int_matmul(m2, block) % mod
    block = np.vstack([u[i], u[j]])
    u[[i, j]] = int_matmul(m2, block) % mod


def _colop2(w: np.ndarray, v: np.ndarray, i: int, j: int, m2: np.ndarray, mod: int):
    block = np.hstack([w[:, [i]], w[:, [j]]])
    w[:, [i, j]] = int_matmul(block, m2) % mod
    block = np.hstack([v[:, [i]], v[:, [j]]])
    v[:, [i, j]] = int_matmul(block, m2) % mod


def smith_form(a: Mat) -> SmithForm:
    """Smith-style diagonal decomposition over Z_m.

    Works directly in Z_m: all transforms are products of unimodular
    2x2 blocks and permutations, hence invertible mod m for every m >= 2.
    """
    mod = a.modulus
    w = np.array(a.data, dtype=np.int64)
    nr, nc = w.shape
    u = np.eye(nr, dtype=np.int64)
    v = np.eye(nc, dtype=np.int64)

    def normalize_pivot(t: int):
        """Unit-scale row t so the pivot becomes gcd(pivot, mod), which
        divides mod; this is what makes the elimination terminate."""
        val = int(w[t, t]) % mod
        if val == 0:
            return 0
        d = gcd(val, mod)
        if val != d:
            s = next(s for s in range(1, mod) if gcd(s, mod) == 1 and (s * val) % mod == d)
            w[t] = (s * w[t]) % mod
            u[t] = (s * u[t]) % mod
        return d

    def clear_pivot(t: int):
        # alternate row/column gcd elimination; the pivot is kept unit-
        # normalised to a divisor of mod, so any entry it does not divide
        # strictly enlarges the pivot ideal and the loop terminates
        while True:
            normalize_pivot(t)
            done = True
            for i in range(t + 1, nr):
                b = int(w[i, t]) % mod
                if b:
                    a = int(w[t, t])
                    if b % a == 0:
                        w[i] = (w[i] - (b // a) * w[t]) % mod
                        u[i] = (u[i] - (b // a) * u[t]) % mod
                    else:
                        g, s, tt = _xgcd(a, b)
                        m2 = np.array([[s, tt], [-(b // g), a // g]], dtype=np.int64)
                        _rowop2(w, u, t, i, m2, mod)
                        normalize_pivot(t)
                    done = False
            for j in range(t + 1, nc):
                b = int(w[t, j]) % mod
                if b:
                    a = int(w[t, t])
                    if b % a == 0:
                        w[:, j] = (w[:, j] - (b // a) * w[:, t]) % mod
                        v[:, j] = (v[:, j] - (b // a) * v[:, t]) % mod
                    else:
                        g, s, tt = _xgcd(a, b)
                        m2 = np.array([[s, -(b // g)], [tt, a // g]], dtype=np.int64)
                        _colop2(w, v, t, j, m2, mod)
                        normalize_pivot(t)
                    done = False
            if done:
                return

    steps = min(nr, nc)

    def diagonalize(start: int):
        for t in range(start, steps):
            nz = np.argwhere(w[t:, t:] % mod)
            if nz.size == 0:
                break
            i, j = int(nz[0][0]) + t, int(nz[0][1]) + t
            if i != t:
                w[[t, i]] = w[[i, t]]
                u[[t, i]] = u[[i, t]]
            if j != t:
                w[:, [t, j]] = w[:, [j, t]]
                v[:, [t, j]] = v[:, [j, t]]
            clear_pivot(t)

    diagonalize(0)

    # enforce the divisibility chain; each fixup can disturb the trailing
    # block, so re-diagonalize behind it
    while True:
        bad = None
        for t in range(steps - 1):
            dt = gcd(int(w[t, t]), mod)
            dn = gcd(int(w[t + 1, t + 1]), mod)
            if dn % dt != 0:
                bad = t
                break
        if bad is None:
            break
        w[:, bad] = (w[:, bad] + w[:, bad + 1]) % mod
        v[:, bad] = (v[:, bad] + v[:, bad + 1]) % mod
        clear_pivot(bad)
        diagonalize(bad + 1)

    # scale each pivot row by a unit so the diagonal holds the canonical
    # associate gcd(d, m) of its ideal
    divisors = []
    for t in range(steps):
        pivot = int(w[t, t]) % mod
        d = gcd(pivot, mod) % mod if pivot else 0
        if pivot and pivot != d:
            s = next(
                s for s in range(1, mod) if gcd(s, mod) == 1 and (s * pivot) % mod == d
            )
            w[t] = (s * w[t]) % mod
            u[t] = (s * u[t]) % mod
        divisors.append(d)

    return SmithForm(
        u=Mat(u, mod),
        v=Mat(v, mod),
        diagonal=Mat(w, mod),
        divisors=tuple(divisors),
        modulus=mod,
    )


def solve_right_identity(a: Mat) -> Mat:
    """Find X with a X = I mod m, raising if a is not invertible mod m."""
    mod = a.modulus
    if a.rows != a.cols:
        raise ValueError("only square matrices can be inverted")
    n = a.rows
    sf = smith_form(a)
    if any(d != 1 for d in sf.divisors) or len(sf.divisors) < n:
        raise ValueError("matrix is not invertible mod %d" % mod)
    # a = U^-1 D V^-1 with D = I, so a^-1 = V U
    return mat_mul(sf.v, sf.u)


def pack_rows_gf2(rows: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows into uint64 words, little-endian within each word."""
    rows = np.asarray(rows, dtype=np.uint8) & 1
    k, n = rows.shape
    nwords = (n + 63) // 64
    padded = np.zeros((k, nwords * 64), dtype=np.uint8)
    padded[:, :n] = rows
    bits = padded.reshape(k, nwords, 8, 8)
    bytes_ = np.packbits(bits, axis=-1, bitorder="little").reshape(k, nwords, 8)
    return bytes_.view(np.uint64).reshape(k, nwords)


def popcount_rows(words: np.ndarray) -> np.ndarray:
    """Number of set bits per row of a packed uint64 array."""
    return np.bitwise_count(words).sum(axis=-1).astype(np.int64)


__all__ = [
    "Mat",
    "RrefResult",
    "SmithForm",
    "gram",
    "identity",
    "int_matmul",
    "inverse_table",
    "is_prime",
    "kernel_basis",
    "mat",
    "mat_add",
    "mat_mul",
    "pack_rows_gf2",
    "popcount_rows",
    "rank",
    "row_basis",
    "rref",
    "scalar_mul",
    "smith_form",
    "solve_right_identity",
    "zeros",
]
