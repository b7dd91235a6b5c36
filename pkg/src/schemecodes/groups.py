"""Permutation groups on vertex sets: parsing, orbits, automorphism search,
and randomized harvesting of small subgroups with uniform orbits."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .graphs import Graph


class Perm:
    """Permutation of {0..n-1}, stored as the image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("images must be a flat sequence")
        n = arr.shape[0]
        if n and (arr.min() < 0 or arr.max() >= n):
            bad = arr[(arr < 0) | (arr >= n)][0]
            raise ValueError(f"point {int(bad)} out of range for degree {n}")
        counts = np.bincount(arr, minlength=n)
        if (counts > 1).any():
            raise ValueError(f"point {int(np.argmax(counts > 1))} repeated")
        arr.setflags(write=False)
        self.images = arr
        self._hash = hash(arr.tobytes())

    @property
    def degree(self) -> int:
        return int(self.images.shape[0])

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(np.arange(n))

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition: (p*q)(x) = p(q(x))."""
        return Perm(self.images[other.images])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return Perm(inv)

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        result = np.arange(self.degree)
        base = self.images
        while e:
            if e & 1:
                result = base[result]
            base = base[base]
            e >>= 1
        return Perm(result)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_identity(self) -> bool:
        return bool((self.images == np.arange(self.degree)).all())

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(self.images[x])
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // gcd(o, len(cyc))
        return o

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.degree == other.degree and bool((self.images == other.images).all())

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()}, n={self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse disjoint-cycle notation ('(0,3)(1,2)', fixed points omitted)
    or an image list ('[1,0,3,2]' or '1 0 3 2')."""
    s = text.strip()
    if not s:
        raise ValueError("empty permutation string")
    if s.startswith("("):
        body = s.replace(" ", "")
        consumed = "".join(_CYCLE_RE.findall(body))
        stripped = _CYCLE_RE.sub("", body)
        if stripped:
            raise ValueError(f"unbalanced cycle notation in {text!r}")
        images = np.arange(n)
        used: set[int] = set()
        for grp in _CYCLE_RE.findall(body):
            if not grp:
                continue
            pts = [int(t) for t in grp.split(",")]
            for x in pts:
                if x < 0 or x >= n:
                    raise ValueError(f"point {x} out of range for degree {n}")
                if x in used:
                    raise ValueError(f"point {x} repeated across cycles")
                used.add(x)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return Perm(images)
    if s.startswith("["):
        s = s.strip("[]")
    tokens = [t for t in re.split(r"[,\s]+", s) if t]
    images = [int(t) for t in tokens]
    if len(images) != n:
        raise ValueError(f"image list has length {len(images)}, expected {n}")
    return Perm(images)


def parse_generator_file(text: str, n: int) -> list[Perm]:
    """One permutation per line in cycle notation; '#' starts a comment."""
    gens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            gens.append(parse_perm(line, n))
    return gens


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]

    def __post_init__(self):
        if not self.generators:
            object.__setattr__(self, "generators", (Perm.identity(self.degree),))
        for g in self.generators:
            if g.degree != self.degree:
                raise ValueError("generator degree mismatch")

    @staticmethod
    def trivial(n: int) -> "PermGroup":
        return PermGroup(n, (Perm.identity(n),))

    def orbits(self) -> "OrbitPartition":
        return orbits(self)


@dataclass(frozen=True)
class OrbitPartition:
    cells: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cells)

    @property
    def uniform(self) -> bool:
        sizes = {len(c) for c in self.cells}
        return len(sizes) == 1

    def cell_lists(self) -> list[list[int]]:
        return [list(c) for c in self.cells]

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.cells


def orbits(group: PermGroup) -> OrbitPartition:
    """Orbit partition of the generated group; cells sorted by minimum element."""
    n = group.degree
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        img = g.images
        for x in range(n):
            rx, ry = find(x), find(int(img[x]))
            if rx != ry:
                parent[ry] = rx
    cells: dict[int, list[int]] = {}
    for x in range(n):
        cells.setdefault(find(x), []).append(x)
    ordered = sorted((sorted(c) for c in cells.values()), key=lambda c: c[0])
    return OrbitPartition(tuple(tuple(c) for c in ordered))


def is_automorphism(g: Graph, s: Perm) -> bool:
    if s.degree != g.n:
        raise ValueError(f"degree mismatch: permutation on {s.degree}, graph on {g.n}")
    img = s.images
    return bool(np.array_equal(g.adjacency[np.ix_(img, img)], g.adjacency))


# -- automorphism search ------------------------------------------------


def _refine(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Stable 1-WL color refinement with canonical (sorted-signature) labels."""
    n = adj.shape[0]
    while True:
        k = int(colors.max()) + 1
        onehot = np.zeros((n, k), dtype=np.float64)
        onehot[np.arange(n), colors] = 1.0
        counts = np.rint(adj @ onehot).astype(np.int64)
        sig = np.concatenate([colors[:, None], counts], axis=1)
        _, new = np.unique(sig, axis=0, return_inverse=True)
        if int(new.max()) + 1 == k:
            return new.astype(np.int64)
        colors = new.astype(np.int64)


@dataclass
class AutomorphismSearch:
    """Result of a budgeted backtracking search for graph automorphisms."""

    automorphisms: list[Perm]
    complete: bool
    nodes_used: int


def _search_bijections(
    g: Graph,
    budget: int,
    prescribed: dict[int, int] | None = None,
    stop_after: int | None = None,
) -> AutomorphismSearch:
    adj = g.adjacency.astype(np.float64)
    n = g.n
    found: list[Perm] = []
    nodes = 0
    truncated = False

    src0 = np.zeros(n, dtype=np.int64)
    tgt0 = np.zeros(n, dtype=np.int64)
    if prescribed:
        for nxt, (u, v) in enumerate(prescribed.items(), start=1):
            src0[u] = nxt
            tgt0[v] = nxt

    def recurse(src: np.ndarray, tgt: np.ndarray) -> bool:
        """Returns False when the search should unwind (budget/stop)."""
        nonlocal nodes, truncated
        nodes += 1
        if nodes > budget:
            truncated = True
            return False
        src = _refine(adj, src)
        tgt = _refine(adj, tgt)
        src_sizes = np.bincount(src)
        tgt_sizes = np.bincount(tgt)
        if src_sizes.shape != tgt_sizes.shape or not (src_sizes == tgt_sizes).all():
            return True
        k = src_sizes.shape[0]
        if k == n:
            mapping = np.empty(n, dtype=np.int64)
            src_order = np.argsort(src)
            tgt_order = np.argsort(tgt)
            mapping[src_order] = tgt_order
            perm = Perm(mapping)
            if is_automorphism(g, perm):
                found.append(perm)
                if stop_after is not None and len(found) >= stop_after:
                    return False
            return True
        # split the first non-singleton color class
        c = int(np.argmax(src_sizes > 1))
        u = int(np.nonzero(src == c)[0][0])
        fresh = k
        for v in np.nonzero(tgt == c)[0]:
            s2 = src.copy()
            t2 = tgt.copy()
            s2[u] = fresh
            t2[int(v)] = fresh
            if not recurse(s2, t2):
                return False
        return True

    recurse(src0, tgt0)
    return AutomorphismSearch(found, complete=not truncated, nodes_used=nodes)


def find_automorphisms(g: Graph, budget: int = 100_000) -> AutomorphismSearch:
    """Backtracking automorphism search with equitable-refinement pruning.

    Enumerates leaf bijections of the refinement tree up to the node
    budget; the identity is always present.  complete=True means the whole
    tree was traversed, so the returned list is the full automorphism group.
    """
    res = _search_bijections(g, budget)
    ident = Perm.identity(g.n)
    if ident not in res.automorphisms:
        res.automorphisms.insert(0, ident)
    return res


def find_one_automorphism(g: Graph, prescribed: dict[int, int], budget: int = 50_000) -> Perm | None:
    """First automorphism extending the prescribed point images, if any."""
    res = _search_bijections(g, budget, prescribed=prescribed, stop_after=1)
    return res.automorphisms[0] if res.automorphisms else None


# -- closure, orders, random elements -----------------------------------


def closure(gens: Sequence[Perm], cap: int) -> list[Perm] | None:
    """All elements of <gens>, or None once more than cap are seen."""
    if not gens:
        return []
    n = gens[0].degree
    ident = Perm.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda p: p.images.tobytes())


def group_order(group: PermGroup, cap: int = 1_000_000) -> int | None:
    """Order by bounded closure enumeration; None means 'order > cap'."""
    elems = closure(group.generators, cap)
    return None if elems is None else len(elems)


class RandomWalk:
    """Product-replacement random walk over a generated permutation group."""

    def __init__(self, gens: Sequence[Perm], seed: int, slots: int = 10, burn_in: int = 60):
        gens = [g for g in gens if not g.is_identity()] or list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        self.n = gens[0].degree
        self.rng = random.Random(seed)
        self.slots = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.acc = Perm.identity(self.n)
        for _ in range(burn_in):
            self.step()

    def step(self) -> Perm:
        i, j = self.rng.sample(range(len(self.slots)), 2)
        x, y = self.slots[i], self.slots[j]
        if self.rng.random() < 0.5:
            y = y.inverse()
        self.slots[i] = x * y if self.rng.random() < 0.5 else y * x
        self.acc = self.acc * self.slots[i]
        return self.acc


def describe_group(group: PermGroup, cap: int = 2048) -> str:
    """Short structural label for a small group (order, cyclic/abelian shape)."""
    elems = closure(group.generators, cap)
    if elems is None:
        return f"G[order>{cap}]"
    order = len(elems)
    if order == 1:
        return "I"
    elem_orders = sorted(e.order() for e in elems)
    if max(elem_orders) == order:
        return f"Z{order}"
    abelian = all(a * b == b * a for a in group.generators for b in group.generators)
    if abelian:
        return _abelian_label(elems, order)
    n_inv = sum(1 for o in elem_orders if o == 2)
    if order == 6:
        return "S3"
    if order == 8:
        return "D8" if n_inv == 5 else "Q8"
    if n_inv == order // 2 + 1 and max(elem_orders) == order // 2:
        return f"D{order}"
    if order == 20 and max(elem_orders) == 4:
        return "Z5:Z4"
    return f"G[{order}]"


def _abelian_label(elems: list[Perm], order: int) -> str:
    """Invariant-factor label ('E4', 'Z4xZ2', ...) for a small abelian group."""
    primes = []
    rest = order
    p = 2
    while rest > 1:
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
        p += 1

    prime_factors: dict[int, list[int]] = {}
    for p in primes:
        # ranks[j] = number of cyclic p-factors of exponent >= j+1, read off
        # from counts of elements annihilated by p^(j+1)
        ranks = []
        prev = 1
        j = 1
        while True:
            cnt = sum(1 for e in elems if (e ** (p**j)).is_identity())
            step = 0
            while prev * p**(step + 1) <= cnt:
                step += 1
            if step == 0:
                break
            ranks.append(step)
            prev = cnt
            j += 1
        factors = [p ** sum(1 for r in ranks if r > idx) for idx in range(ranks[0] if ranks else 0)]
        prime_factors[p] = factors

    width = max(len(v) for v in prime_factors.values())
    invariant = []
    for i in range(width):
        f = 1
        for factors in prime_factors.values():
            if i < len(factors):
                f *= factors[i]
        invariant.append(f)
    if len(invariant) > 1 and all(f == invariant[0] for f in invariant) and len(primes) == 1:
        return f"E{order}"
    return "x".join(f"Z{f}" for f in sorted(invariant, reverse=True))


def sample_subgroups(
    g: Graph,
    gens: Sequence[Perm],
    orders: Iterable[int],
    trials: int = 2000,
    seed: int = 0,
    closure_cap: int = 100_000,
) -> list[PermGroup]:
    """Harvest subgroups of the requested orders acting with uniform orbits.

    Cyclic subgroups come from powers of product-replacement elements;
    other subgroups from two-generator closures kept only when small.
    Results are deduplicated by orbit partition.
    """
    for s in gens:
        if not is_automorphism(g, s):
            raise ValueError("supplied generator is not an automorphism")
    orders = sorted(set(int(t) for t in orders))
    n = g.n
    out: list[PermGroup] = []
    seen_partitions: set[tuple] = set()
    max_order = max(orders, default=1)

    def offer(sub_gens: list[Perm]):
        grp = PermGroup(n, tuple(sub_gens))
        part = orbits(grp)
        if not part.uniform:
            return
        key = part.key()
        if key in seen_partitions:
            return
        elems = closure(sub_gens, cap=max_order + 1)
        if elems is None or len(elems) not in orders:
            return
        seen_partitions.add(key)
        out.append(grp)

    if 1 in orders:
        offer([Perm.identity(n)])

    nontrivial = [t for t in orders if t > 1]
    if not nontrivial or all(s.is_identity() for s in gens):
        return out

    square_targets = {t: _int_sqrt(t) for t in nontrivial if _int_sqrt(t) is not None}
    pair_factor_orders = set()
    for t in nontrivial:
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
            if t % q == 0:
                pair_factor_orders.add(q)

    walk = RandomWalk(gens, seed=seed)
    pools: dict[int, list[np.ndarray]] = {q: [] for q in pair_factor_orders}
    rng = random.Random(seed + 1)
    for _ in range(trials):
        x = walk.step()
        ox = x.order()
        for t in nontrivial:
            if ox % t == 0:
                offer([x ** (ox // t)])
        for q in pair_factor_orders:
            if ox % q != 0:
                continue
            y = (x ** (ox // q)).images
            pool = pools[q]
            # commuting partners in the pool reach E_{q^2}-style subgroups
            if q * q in nontrivial:
                for a in pool:
                    if np.array_equal(a[y], y[a]) and not np.array_equal(a, y):
                        elems = closure([Perm(a), Perm(y)], cap=q * q + 1)
                        if elems is not None and len(elems) in nontrivial:
                            offer([Perm(a), Perm(y)])
            # inverting involutions in the pool reach dihedral subgroups
            if q % 2 == 1 and 2 * q in nontrivial and 2 in pools:
                yp = Perm(y)
                yinv = yp.inverse().images
                for t in pools[2]:
                    if np.array_equal(t[y[t]], yinv):
                        elems = closure([yp, Perm(t)], cap=2 * q + 1)
                        if elems is not None and len(elems) in nontrivial:
                            offer([yp, Perm(t)])
            if len(pool) < 400:
                pool.append(y)
        # random two-generator subgroups for mixed-order targets
        if rng.random() < 0.8:
            qs = [q for q in pair_factor_orders if pools[q]]
            if len(qs) >= 1:
                q1 = rng.choice(qs)
                q2 = rng.choice(qs)
                a = pools[q1][rng.randrange(len(pools[q1]))]
                b = pools[q2][rng.randrange(len(pools[q2]))]
                if not np.array_equal(a, b):
                    elems = closure([Perm(a), Perm(b)], cap=max_order + 1)
                    if elems is not None and len(elems) in nontrivial:
                        offer([Perm(a), Perm(b)])
    return out


def _int_sqrt(t: int) -> int | None:
    r = int(round(t**0.5))
    return r if r * r == t else None


__all__ = [
    "AutomorphismSearch",
    "OrbitPartition",
    "Perm",
    "PermGroup",
    "RandomWalk",
    "closure",
    "describe_group",
    "find_automorphisms",
    "find_one_automorphism",
    "group_order",
    "is_automorphism",
    "orbits",
    "parse_generator_file",
    "parse_perm",
    "sample_subgroups",
]
