import numpy as np
import pytest

from conftest import trivial_quotient
from schemecodes import codes as C
from schemecodes import fixtures as FX
from schemecodes import fp
from schemecodes import subspaces as SS


def rand_subspace(rng, n=8, p=2, max_dim=4):
    k = int(rng.integers(0, max_dim + 1))
    return SS.Subspace.from_rows(rng.integers(0, p, size=(k, n)), n, p)


def vectors_of(sub: SS.Subspace) -> set[bytes]:
    """Set-enumeration oracle: all vectors of the subspace."""
    from itertools import product

    basis = sub.basis_array()
    p = sub.modulus
    out = set()
    for coeffs in product(range(p), repeat=basis.shape[0]):
        v = (np.array(coeffs) @ basis) % p if basis.size else np.zeros(sub.ambient, dtype=np.int64)
        out.add(v.tobytes())
    return out


def test_subspace_canonical_equality(rng):
    for _ in range(20):
        sub = rand_subspace(rng, n=7, p=3)
        basis = sub.basis_array()
        if basis.shape[0] == 0:
            continue
        # random invertible recombination of the basis
        while True:
            t = rng.integers(0, 3, size=(basis.shape[0], basis.shape[0]))
            if fp.rank(fp.mat(t, 3)) == basis.shape[0]:
                break
        other = SS.Subspace.from_rows((t @ basis) % 3, 7, 3)
        assert other == sub


def test_subspace_distance_examples():
    u = SS.Subspace.from_rows([[1, 0]], 2, 2)
    w = SS.Subspace.from_rows([[0, 1]], 2, 2)
    assert SS.subspace_distance(u, u) == 0
    assert SS.subspace_distance(u, w) == 2
    big = SS.Subspace.from_rows([[1, 0, 0], [0, 1, 0]], 3, 2)
    small = SS.Subspace.from_rows([[1, 0, 0]], 3, 2)
    assert SS.subspace_distance(small, big) == 1
    with pytest.raises(ValueError, match="ambient"):
        SS.subspace_distance(u, big)


@pytest.mark.parametrize("n,p", [(8, 2), (5, 3)])
def test_subspace_metric_properties(rng, n, p):
    subs = [rand_subspace(rng, n=n, p=p, max_dim=3) for _ in range(12)]
    for a in subs:
        assert SS.subspace_distance(a, a) == 0
    for a in subs:
        for b in subs:
            dab = SS.subspace_distance(a, b)
            assert dab >= 0
            assert dab == SS.subspace_distance(b, a)
            if dab == 0:
                assert a == b
    for a in subs[:6]:
        for b in subs[:6]:
            for c in subs[:6]:
                assert SS.subspace_distance(a, c) <= SS.subspace_distance(a, b) + SS.subspace_distance(b, c)


def test_subspace_distance_against_set_oracle(rng):
    # definitional formula dim(U+W) - dim(U n W) via explicit enumeration
    for _ in range(200):
        u = rand_subspace(rng, n=10, p=2, max_dim=4)
        w = rand_subspace(rng, n=10, p=2, max_dim=4)
        vu, vw = vectors_of(u), vectors_of(w)
        inter_dim = int(np.log2(len(vu & vw)))
        sums = {bytes((np.frombuffer(a, dtype=np.int64) + np.frombuffer(b, dtype=np.int64)) % 2) for a in vu for b in vw}
        sum_dim = int(np.log2(len(sums)))
        assert SS.subspace_distance(u, w) == sum_dim - inter_dim


def test_algebra_closure_identity_and_nilpotent():
    ident = fp.identity(4, 2)
    ab = SS.algebra_closure([ident], 2)
    assert ab.dim == 1
    nil = fp.mat([[0, 1], [0, 0]], 2)
    ab = SS.algebra_closure([nil], 2)
    assert ab.dim == 1


def test_algebra_closure_soundness(rng):
    gens = [fp.mat(rng.integers(0, 2, size=(4, 4)), 2) for _ in range(2)]
    ab = SS.algebra_closure(gens, 2)
    tracker = SS._SpanTracker(16, 2)
    for b in ab.basis:
        tracker.add(b.reshape(-1))
    for x in ab.basis:
        for y in ab.basis:
            prod = fp.int_matmul(x, y) % 2
            assert not tracker.add(prod.reshape(-1)), "product escaped the span"


def test_algebra_closure_dhs_generators():
    scheme, tensor = FX.fixture_scheme("dhs")
    qs = trivial_quotient("dhs")
    gens = [fp.mat(qs.matrices[i], 2) for i in (1, 4)]
    ab = SS.algebra_closure(gens, 2)
    assert ab.dim == 2  # all pairwise products vanish mod 2
    tracker = SS._SpanTracker(200 * 200, 2)
    for b in ab.basis:
        tracker.add(b.reshape(-1))
    for x in ab.basis:
        for y in ab.basis:
            assert not tracker.add((fp.int_matmul(x, y) % 2).reshape(-1))


def test_enumerate_row_spaces_identity_basis():
    ab = SS.algebra_closure([fp.identity(5, 2)], 2)
    code = SS.enumerate_row_spaces(ab)
    assert code.size == 2
    assert code.dimension_set == (0, 5)
    assert SS.min_subspace_distance(code) == 5


def test_enumerate_row_spaces_cap():
    gens = [fp.mat(np.eye(6, k=i, dtype=np.int64), 5) for i in range(-2, 3)]
    ab = SS.algebra_closure(gens, 5)
    with pytest.raises(ValueError, match="cap"):
        SS.enumerate_row_spaces(ab, cap=10)


def test_enumerate_row_spaces_generator_order_invariance():
    scheme, tensor = FX.fixture_scheme("dhs")
    qs = trivial_quotient("dhs")
    a = SS.build_subspace_code(qs, tensor, [1, 4], 2)
    b = SS.build_subspace_code(qs, tensor, [4, 1], 2)
    assert a.codewords == b.codewords


def test_min_subspace_distance_requirements():
    zero = SS.Subspace.from_rows(np.zeros((1, 4), dtype=np.int64), 4, 2)
    code = SS.SubspaceCode((zero,), 4, 2)
    with pytest.raises(ValueError, match="two codewords"):
        SS.min_subspace_distance(code)
    full = SS.Subspace.from_rows(np.eye(4, dtype=np.int64), 4, 2)
    code = SS.SubspaceCode((zero, full), 4, 2)
    assert SS.min_subspace_distance(code) == 4


def test_check_so_subspace():
    zero = SS.Subspace.from_rows(np.zeros((1, 3), dtype=np.int64), 3, 2)
    assert SS.check_so_subspace(SS.SubspaceCode((zero,), 3, 2))
    full = SS.Subspace.from_rows(np.eye(3, dtype=np.int64), 3, 2)
    assert not SS.check_so_subspace(SS.SubspaceCode((full,), 3, 2))


def test_build_subspace_code_trivial_dhs():
    scheme, tensor = FX.fixture_scheme("dhs")
    qs = trivial_quotient("dhs")
    code = SS.build_subspace_code(qs, tensor, [1, 4], 2)
    assert (code.n, code.size) == (200, 3)
    assert code.dimension_set == (0, 22, 44)
    assert SS.min_subspace_distance(code) == 22
    assert SS.check_so_subspace(code)
    assert code.params() == "(200,3,22,{0,22,44})_2"


def test_build_subspace_code_rejects_bad_hypothesis():
    scheme, tensor = FX.fixture_scheme("dhs")
    qs = trivial_quotient("dhs")
    with pytest.raises(C.ConstructionError, match=r"does not divide p_"):
        SS.build_subspace_code(qs, tensor, [1, 2], 2)


def test_subspace_code_json():
    scheme, tensor = FX.fixture_scheme("dhs")
    qs = trivial_quotient("dhs")
    code = SS.build_subspace_code(qs, tensor, [1, 4], 2)
    blob = SS.subspace_code_json(code)
    assert '"size": 3' in blob and '"n": 200' in blob
