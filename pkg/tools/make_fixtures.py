#!/usr/bin/env python3
"""Build the committed graph and generator fixtures under src/schemecodes/data/.

Every construction is verified on the spot (design properties, strong
regularity, intersection arrays) before anything is written, so the
committed files carry machine-checked provenance.  The script is
deterministic: rerunning it reproduces identical files.
"""

from __future__ import annotations

import json
import random
import sys
from itertools import combinations, product
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from schemecodes import fp
from schemecodes import graphs as G
from schemecodes import groups as GR

DATA = Path(__file__).resolve().parents[1] / "src" / "schemecodes" / "data"


def expect_array(g: G.Graph, b, c, name: str) -> None:
    arr = G.verify_distance_regular(G.distance_matrices(g))
    if not isinstance(arr, G.IntersectionArray):
        raise AssertionError(f"{name}: not distance-regular: {arr}")
    if list(arr.b) != list(b) or list(arr.c) != list(c):
        raise AssertionError(f"{name}: array {arr} != expected {{{b};{c}}}")
    print(f"  {name}: n={g.n}, array {arr}  OK")


def is_srg(g: G.Graph, v, k, lam, mu) -> bool:
    if g.n != v:
        return False
    a = g.adjacency.astype(np.int64)
    eye = np.eye(v, dtype=np.int64)
    jay = np.ones((v, v), dtype=np.int64)
    return bool(np.array_equal(fp.int_matmul(a, a), k * eye + lam * a + mu * (jay - eye - a)))


# ----------------------------------------------------------------------
# Golay code -> S(3,6,22) -> Higman-Sims -> Gewirtz


def golay_blocks() -> list[frozenset]:
    """Blocks of S(3,6,22) from octads of the extended binary Golay code."""
    g1 = (1 << 11) | (1 << 10) | (1 << 6) | (1 << 5) | (1 << 4) | (1 << 2) | 1
    g2 = (1 << 11) | (1 << 9) | (1 << 7) | (1 << 6) | (1 << 5) | (1 << 1) | 1

    def polymul2(a, b):
        r = 0
        while a:
            if a & 1:
                r ^= b
            a >>= 1
            b <<= 1
        return r

    assert polymul2(polymul2(g1, g2), 0b11) == (1 << 23) | 1, "bad cyclic factors"
    rows = [g1 << i for i in range(12)]
    words = []
    for m in range(4096):
        w = 0
        for i in range(12):
            if (m >> i) & 1:
                w ^= rows[i]
        words.append(w | (bin(w).count("1") % 2) << 23)
    from collections import Counter

    dist = Counter(bin(w).count("1") for w in words)
    assert dist == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, f"not the Golay code: {dist}"
    blocks = [
        frozenset(i - 2 for i in range(2, 24) if (w >> i) & 1)
        for w in words
        if bin(w).count("1") == 8 and (w & 1) and (w & 2)
    ]
    assert len(blocks) == 77
    cover = Counter(t for b in blocks for t in combinations(sorted(b), 3))
    from math import comb

    assert len(cover) == comb(22, 3) and set(cover.values()) == {1}, "not S(3,6,22)"
    return blocks


def higman_sims() -> G.Graph:
    blocks = golay_blocks()
    n = 100
    a = np.zeros((n, n), dtype=np.uint8)
    for p in range(22):
        a[0, 1 + p] = a[1 + p, 0] = 1
    for bi, b in enumerate(blocks):
        for p in b:
            a[1 + p, 23 + bi] = a[23 + bi, 1 + p] = 1
    for bi, b in enumerate(blocks):
        for bj in range(bi + 1, 77):
            if not (b & blocks[bj]):
                a[23 + bi, 23 + bj] = a[23 + bj, 23 + bi] = 1
    g = G.Graph(a)
    assert is_srg(g, 100, 22, 0, 6), "not SRG(100,22,0,6)"
    return g


def gewirtz(hs: G.Graph) -> G.Graph:
    """Subgraph induced on the common non-neighbours of an edge of Higman-Sims."""
    a = hs.adjacency
    u, v = 0, 1
    assert a[u, v] == 1
    keep = [w for w in range(hs.n) if w not in (u, v) and not a[u, w] and not a[v, w]]
    g = G.Graph(a[np.ix_(keep, keep)])
    assert is_srg(g, 56, 10, 0, 2), "not SRG(56,10,0,2)"
    return g


# ----------------------------------------------------------------------
# Doro graph: valency-12 orbital of PSL(2,16) on the 68 cosets of A5


def _gf16_tables():
    mul = [[0] * 16 for _ in range(16)]
    for a in range(16):
        for b in range(16):
            r = 0
            for i in range(4):
                if (b >> i) & 1:
                    r ^= a << i
            for d in range(7, 3, -1):
                if (r >> d) & 1:
                    r ^= 0b10011 << (d - 4)  # x^4 + x + 1
            mul[a][b] = r
    inv = [0] * 16
    for a in range(1, 16):
        for b in range(1, 16):
            if mul[a][b] == 1:
                inv[a] = b
    return mul, inv


def doro() -> tuple[G.Graph, list[GR.Perm]]:
    mul, inv = _gf16_tables()
    INF = 16

    def moebius(a, b, c, d) -> GR.Perm:
        img = []
        for x in range(16):
            num = mul[a][x] ^ b
            den = mul[c][x] ^ d
            img.append(mul[num][inv[den]] if den else INF)
        img.append(mul[a][inv[c]] if c else INF)
        return GR.Perm(img)

    gens17 = [moebius(1, 1, 0, 1), moebius(2, 0, 0, 1), moebius(0, 1, 1, 0)]
    elems = GR.closure(gens17, cap=5000)
    assert elems is not None and len(elems) == 4080, "PSL(2,16) closure failed"

    rng = random.Random(1)
    invols = [e for e in elems if e.order() == 2]
    threes = [e for e in elems if e.order() == 3]
    a5 = None
    while a5 is None:
        a, b = rng.choice(invols), rng.choice(threes)
        if (a * b).order() == 5:
            c = GR.closure([a, b], cap=100)
            if c is not None and len(c) == 60:
                a5 = c

    elem_index = {e: i for i, e in enumerate(elems)}
    coset_id: dict[int, int] = {}
    reps = []
    for e in elems:
        if elem_index[e] in coset_id:
            continue
        cid = len(reps)
        for h in a5:
            coset_id[elem_index[e * h]] = cid
        reps.append(e)
    assert len(reps) == 68

    def act(g: GR.Perm) -> GR.Perm:
        return GR.Perm([coset_id[elem_index[g * rep]] for rep in reps])

    gens68 = [act(g) for g in gens17]

    # suborbits of the point stabiliser A5; the Doro graph is the orbital
    # of valency 12
    stab = [act(h) for h in a5]
    seen = [False] * 68
    suborbits = []
    for j in range(68):
        if seen[j]:
            continue
        orb = {j}
        frontier = [j]
        while frontier:
            x = frontier.pop()
            for sp in stab:
                y = sp(x)
                if y not in orb:
                    orb.add(y)
                    frontier.append(y)
        for y in orb:
            seen[y] = True
        suborbits.append(sorted(orb))
    assert sorted(len(s) for s in suborbits) == [1, 12, 15, 20, 20], suborbits
    sub12 = next(s for s in suborbits if len(s) == 12)

    a = np.zeros((68, 68), dtype=np.uint8)
    stack = [(0, sub12[0])]
    a[0, sub12[0]] = a[sub12[0], 0] = 1
    while stack:
        u, v = stack.pop()
        for g in gens68:
            e = (g(u), g(v))
            if not a[e]:
                a[e[0], e[1]] = a[e[1], e[0]] = 1
                stack.append(e)
    return G.Graph(a), gens68


# ----------------------------------------------------------------------
# Foster graph from its LCF code


def foster() -> G.Graph:
    lcf = [17, -9, 37, -37, 9, -17]
    n = 90
    edges = set()
    for i in range(n):
        edges.add((i, (i + 1) % n))
        edges.add(tuple(sorted((i, (i + lcf[i % 6]) % n))))
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    return G.graph_from_edges(n, edges)


# ----------------------------------------------------------------------
# Split Cayley hexagon of order (3,3) via the split octonions (Zorn matrices)

Q = 3


def _omul(x, y):
    a1, v1, w1, b1 = x[0], x[1:4], x[4:7], x[7]
    a2, v2, w2, b2 = y[0], y[1:4], y[4:7], y[7]
    a = (a1 * a2 + v1 @ w2) % Q
    v = (a1 * v2 + b2 * v1 - np.cross(w1, w2)) % Q
    w = (a2 * w1 + b1 * w2 + np.cross(v1, v2)) % Q
    b = (b1 * b2 + w1 @ v2) % Q
    return np.concatenate([[a], v, w, [b]])


def _onorm(x):
    return (x[0] * x[7] - x[1:4] @ x[4:7]) % Q


def _emb(t):
    """Trace-zero octonion with coordinates (alpha, v, w)."""
    return np.concatenate([t[:7], [(-t[0]) % Q]])


def _octonion_sanity():
    rng = np.random.default_rng(0)
    ident = np.array([1, 0, 0, 0, 0, 0, 0, 1])
    for _ in range(100):
        x = rng.integers(0, Q, 8)
        y = rng.integers(0, Q, 8)
        assert _onorm(_omul(x, y)) == (_onorm(x) * _onorm(y)) % Q
        assert np.array_equal(_omul(x, _omul(x, y)), _omul(_omul(x, x), y))
        assert np.array_equal(_omul(ident, x), x % Q)


def hexagon() -> tuple[G.Graph, list[list[int]], np.ndarray]:
    """Incidence graph of GH(3,3); also returns lines (point-index lists)
    and the array of normalized point representatives."""
    _octonion_sanity()
    pts = []
    for t in product(range(Q), repeat=7):
        t = np.array(t, dtype=np.int64)
        nz = np.nonzero(t)[0]
        if nz.size == 0 or t[nz[0]] != 1:
            continue
        if _onorm(_emb(t)) == 0:
            pts.append(t)
    pts = np.array(pts)
    assert len(pts) == 364, len(pts)

    def null_partners(x8) -> np.ndarray:
        cols = []
        for i in range(7):
            tt = np.zeros(7, dtype=np.int64)
            tt[i] = 1
            y8 = _emb(tt)
            cols.append(np.concatenate([_omul(x8, y8), _omul(y8, x8)]) % Q)
        m = np.array(cols).T % Q
        return fp.kernel_basis(fp.mat(m, Q)).data

    point_index = {p.tobytes(): i for i, p in enumerate(pts)}

    def canon(vec) -> bytes:
        vec = vec % Q
        lead = vec[np.nonzero(vec)[0][0]]
        return ((vec * pow(int(lead), -1, Q)) % Q).tobytes()

    line_sets: set[tuple[int, ...]] = set()
    for pi, t in enumerate(pts):
        k = null_partners(_emb(t))
        assert k.shape[0] == 3, "hexagon plane of lines has wrong dimension"
        local = set()
        for coeffs in product(range(Q), repeat=3):
            y = (np.array(coeffs) @ k) % Q
            if not y.any():
                continue
            r = fp.rref(fp.mat(np.vstack([t, y]), Q))
            if r.rank != 2:
                continue
            local.add(r.matrix.data[:2].tobytes())
        for key in local:
            basis = np.frombuffer(key, dtype=np.int64).reshape(2, 7)
            members = []
            for c0, c1 in product(range(Q), repeat=2):
                vec = (c0 * basis[0] + c1 * basis[1]) % Q
                if vec.any():
                    members.append(point_index[canon(vec)])
            line_sets.add(tuple(sorted(set(members))))
    lines = sorted(line_sets)
    assert len(lines) == 364, len(lines)
    assert all(len(l) == 4 for l in lines)

    n = 364 + 364
    a = np.zeros((n, n), dtype=np.uint8)
    for li, line in enumerate(lines):
        for pi in line:
            a[pi, 364 + li] = a[364 + li, pi] = 1
    return G.Graph(a), [list(l) for l in lines], pts


def hexagon_generators(lines: list[list[int]], pts: np.ndarray) -> list[GR.Perm]:
    """Octonion-algebra automorphisms as permutations of the 728 vertices.

    Uses the SL(3,3) subgroup acting on the Zorn vector parts plus a few
    conjugations x -> (u^-1 x) u by elements with central cube, which lie
    outside it; together they generate enough of the automorphism group
    for sampling.
    """
    point_index = {p.tobytes(): i for i, p in enumerate(pts)}
    line_index = {tuple(l): i for i, l in enumerate(lines)}

    def canon(vec) -> bytes:
        vec = vec % Q
        lead = vec[np.nonzero(vec)[0][0]]
        return ((vec * pow(int(lead), -1, Q)) % Q).tobytes()

    def perm_from_octonion_map(phi) -> GR.Perm:
        img = np.empty(728, dtype=np.int64)
        for i, t in enumerate(pts):
            y = phi(_emb(t))
            assert (y[0] + y[7]) % Q == 0, "map does not preserve trace zero"
            img[i] = point_index[canon(y[:7])]
        for li, line in enumerate(lines):
            target = tuple(sorted(int(img[p]) for p in line))
            img[364 + li] = 364 + line_index[target]
        return GR.Perm(img)

    def sl3_map(m):
        m = np.array(m, dtype=np.int64) % Q
        minv_t = np.array(
            [
                [
                    (m[(j + 1) % 3, (k + 1) % 3] * m[(j + 2) % 3, (k + 2) % 3]
                     - m[(j + 1) % 3, (k + 2) % 3] * m[(j + 2) % 3, (k + 1) % 3]) % Q
                    for k in range(3)
                ]
                for j in range(3)
            ],
            dtype=np.int64,
        )  # adjugate transpose = M^-T for det 1

        def phi(x):
            out = x.copy() % Q
            out[1:4] = (m @ x[1:4]) % Q
            out[4:7] = (minv_t @ x[4:7]) % Q
            return out

        return phi

    def conjugation_map(u):
        uinv = _oinv(u)

        def phi(x):
            return _omul(_omul(uinv, x), u)

        return phi

    def _oinv(u):
        n = int(_onorm(u))
        assert n % Q != 0
        ninv = pow(n, -1, Q)
        conj = u.copy()
        tr = (u[0] + u[7]) % Q
        conj = (-u) % Q
        conj[0] = (tr - u[0]) % Q
        conj[7] = (tr - u[7]) % Q
        return (ninv * conj) % Q

    maps = [
        sl3_map([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        sl3_map([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
    ]
    rng = np.random.default_rng(7)
    added = 0
    attempts = 0
    while added < 2 and attempts < 5000:
        attempts += 1
        u = rng.integers(0, Q, 8)
        if _onorm(u) == 0:
            continue
        u3 = _omul(_omul(u, u), u)
        if u3[0] != u3[7] or u3[1:7].any():
            continue
        if not u[1:7].any():  # central element, conjugation trivial
            continue
        phi = conjugation_map(u)
        ok = True
        for _ in range(20):
            x = rng.integers(0, Q, 8)
            y = rng.integers(0, Q, 8)
            if not np.array_equal(phi(_omul(x, y)), _omul(phi(x), phi(y)) % Q):
                ok = False
                break
        if ok:
            maps.append(phi)
            added += 1
    assert added == 2, "could not find conjugation automorphisms"
    return [perm_from_octonion_map(phi) for phi in maps]


# ----------------------------------------------------------------------
# generator bootstrap for the search-based graphs


def search_generators(g: G.Graph, anchors: list[int], budget: int = 40_000) -> list[GR.Perm]:
    """Automorphisms mapping vertex 0 to each anchor, via refinement search."""
    gens = []
    for v in anchors:
        p = GR.find_one_automorphism(g, {0: v}, budget=budget)
        if p is not None and not p.is_identity():
            gens.append(p)
    # a couple of point-stabiliser elements for mixing
    nbrs = np.nonzero(g.adjacency[0])[0]
    for w in nbrs[:4]:
        for w2 in nbrs[1:5]:
            if w == w2:
                continue
            p = GR.find_one_automorphism(g, {0: 0, int(w): int(w2)}, budget=budget)
            if p is not None and not p.is_identity():
                gens.append(p)
                break
    uniq = []
    seen = set()
    for p in gens:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def lift_double(gens: list[GR.Perm], n: int) -> list[GR.Perm]:
    """Lift base-graph automorphisms to the bipartite double and add the swap."""
    out = []
    for p in gens:
        img = np.concatenate([p.images, p.images + n])
        out.append(GR.Perm(img))
    swap = np.concatenate([np.arange(n) + n, np.arange(n)])
    out.append(GR.Perm(swap))
    return out


def dodd4_generators() -> list[GR.Perm]:
    """S_7 acting on the 3- and 4-subsets of a 7-set, plus complementation."""
    ground = list(range(7))
    small = [frozenset(c) for c in combinations(ground, 3)]
    big = [frozenset(c) for c in combinations(ground, 4)]
    index = {s: i for i, s in enumerate(small)}
    index.update({b: 35 + i for i, b in enumerate(big)})

    def induced(base: dict[int, int]) -> GR.Perm:
        img = np.empty(70, dtype=np.int64)
        for s, i in index.items():
            img[i] = index[frozenset(base[x] for x in s)]
        return GR.Perm(img)

    cyc = {i: (i + 1) % 7 for i in range(7)}
    tra = {0: 1, 1: 0, **{i: i for i in range(2, 7)}}
    comp = np.empty(70, dtype=np.int64)
    full = frozenset(ground)
    for s, i in index.items():
        comp[i] = index[full - s]
    return [induced(cyc), induced(tra), GR.Perm(comp)]


# ----------------------------------------------------------------------


def sanity_sample(name: str, g: G.Graph, gens: list[GR.Perm], orders: list[int], seed: int = 11, trials: int = 1500):
    found = GR.sample_subgroups(g, gens, orders, trials=trials, seed=seed)
    got = {}
    for grp in found:
        elems = GR.closure(grp.generators, cap=max(orders) + 1)
        got.setdefault(len(elems), 0)
        got[len(elems)] += 1
    missing = [t for t in orders if t > 1 and t not in got]
    print(f"  {name}: sampled uniform subgroup orders {got}, missing {missing}")
    return missing


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    manifest = {}

    print("Higman-Sims and Gewirtz")
    hs = higman_sims()
    gw = gewirtz(hs)
    dhs = G.bipartite_double(hs)
    dgw = G.bipartite_double(gw)
    expect_array(dhs, [22, 21, 16, 6, 1], [1, 6, 16, 21, 22], "dhs")
    expect_array(dgw, [10, 9, 8, 2, 1], [1, 2, 8, 9, 10], "dgewirtz")

    print("Doro")
    doro_g, doro_gens = doro()
    expect_array(doro_g, [12, 10, 3], [1, 3, 8], "doro")

    print("Foster")
    foster_g = foster()
    expect_array(foster_g, [3, 2, 2, 2, 2, 1, 1, 1], [1, 1, 1, 1, 2, 2, 2, 3], "foster")

    print("Hadamard-48")
    h48 = G.hadamard_graph(G.paley_hadamard_12())
    expect_array(h48, [12, 11, 6, 1], [1, 6, 11, 12], "hadamard48")

    print("Doubled Odd D(O_4)")
    dodd = G.doubled_odd_graph(3)
    expect_array(dodd, [4, 3, 3, 2, 2, 1, 1], [1, 1, 2, 2, 3, 3, 4], "dodd4")

    print("GH(3,3) incidence graph")
    gh, gh_lines, gh_pts = hexagon()
    expect_array(gh, [4, 3, 3, 3, 3, 3], [1, 1, 1, 1, 1, 4], "gh33")

    print("generators: search-based graphs")
    h48_gens = search_generators(h48, [1, 3, 7, 13, 24, 30, 41])
    gw_gens = search_generators(gw, [1, 5, 11, 23, 37, 49])
    foster_gens = search_generators(foster_g, [1, 9, 18, 30, 45, 60, 77])
    hs_gens = search_generators(hs, [1, 5, 23, 40, 61, 88])
    print(f"  h48 {len(h48_gens)}, gewirtz {len(gw_gens)}, foster {len(foster_gens)}, hs {len(hs_gens)}")

    print("generators: structured")
    gh_gens = hexagon_generators(gh_lines, gh_pts)
    dodd_gens = dodd4_generators()
    dgw_gens = lift_double(gw_gens, 56)
    dhs_gens = lift_double(hs_gens, 100)

    all_gens = {
        "doro": (doro_g, doro_gens),
        "hadamard48": (h48, h48_gens),
        "dgewirtz": (dgw, dgw_gens),
        "gh33": (gh, gh_gens),
        "dodd4": (dodd, dodd_gens),
        "foster": (foster_g, foster_gens),
        "dhs": (dhs, dhs_gens),
    }
    for name, (graph, gens) in all_gens.items():
        for p in gens:
            assert GR.is_automorphism(graph, p), f"{name}: bad generator"
        orbit = GR.orbits(GR.PermGroup(graph.n, tuple(gens)))
        print(f"  {name}: {len(gens)} generators, group orbit cells {len(orbit.cells)}")

    print("sampling sanity")
    needed = {
        "doro": [17, 34],
        "hadamard48": [2, 3, 4, 6],
        "dgewirtz": [2, 4, 7],
        "gh33": [7, 13],
        "dodd4": [2, 5, 7],
        "foster": [2, 3, 5],
        "dhs": [5, 10, 20, 25],
    }
    problems = []
    for name, orders in needed.items():
        graph, gens = all_gens[name]
        missing = sanity_sample(name, graph, gens, orders)
        if missing:
            problems.append((name, missing))
    if problems:
        raise AssertionError(f"sampling could not reach: {problems}")

    print("writing data files")
    files = {
        "doro.g6": doro_g,
        "gewirtz.g6": gw,
        "higman_sims.g6": hs,
        "foster.g6": foster_g,
        "gh33.g6": gh,
    }
    for fname, graph in files.items():
        (DATA / fname).write_text(G.write_graph6(graph) + "\n")
    for name, (_, gens) in all_gens.items():
        lines = [f"# automorphism generators for fixture {name}"]
        lines += [p.cycle_string() for p in gens]
        (DATA / f"{name}.gens").write_text("\n".join(lines) + "\n")

    manifest = {
        "doro": {"n": 68, "b": [12, 10, 3], "c": [1, 3, 8], "source": "graph6", "file": "doro.g6"},
        "hadamard48": {"n": 48, "b": [12, 11, 6, 1], "c": [1, 6, 11, 12], "source": "hadamard12"},
        "dgewirtz": {"n": 112, "b": [10, 9, 8, 2, 1], "c": [1, 2, 8, 9, 10], "source": "double", "file": "gewirtz.g6"},
        "gh33": {"n": 728, "b": [4, 3, 3, 3, 3, 3], "c": [1, 1, 1, 1, 1, 4], "source": "graph6", "file": "gh33.g6"},
        "dodd4": {"n": 70, "b": [4, 3, 3, 2, 2, 1, 1], "c": [1, 1, 2, 2, 3, 3, 4], "source": "doubled_odd", "k": 3},
        "foster": {"n": 90, "b": [3, 2, 2, 2, 2, 1, 1, 1], "c": [1, 1, 1, 1, 2, 2, 2, 3], "source": "graph6", "file": "foster.g6"},
        "dhs": {"n": 200, "b": [22, 21, 16, 6, 1], "c": [1, 6, 16, 21, 22], "source": "double", "file": "higman_sims.g6"},
    }
    for name in manifest:
        manifest[name]["gens"] = f"{name}.gens"
    (DATA / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print("done")


if __name__ == "__main__":
    main()
