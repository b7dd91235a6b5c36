import numpy as np
import pytest

from schemecodes import fixtures as FX
from schemecodes import fp
from schemecodes import graphs as G
from schemecodes import schemes as S


def test_from_distance_regular_fixture_classes():
    scheme, _ = FX.fixture_scheme("doro")
    assert scheme.d == 3 and scheme.n == 68
    scheme, _ = FX.fixture_scheme("hadamard48")
    assert scheme.d == 4
    k5 = G.graph_from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    s = S.from_distance_regular(G.distance_matrices(k5))
    assert s.d == 1


def test_from_distance_regular_rejects_irregular():
    p3 = G.graph_from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError, match="not distance-regular"):
        S.from_distance_regular(G.distance_matrices(p3))


def test_verify_axioms_ok_and_mutation_witness():
    scheme, _ = FX.fixture_scheme("doro")
    assert S.verify_axioms(scheme) is None
    mats = [m.copy() for m in scheme.matrices]
    mats[1][0, 1] ^= 1
    mats[1][1, 0] ^= 1
    broken = S.AssociationScheme(tuple(mats))
    witness = S.verify_axioms(broken)
    assert witness is not None and witness.axiom == "partition"


def test_intersection_tensor_doro_row():
    scheme, tensor = FX.fixture_scheme("doro")
    assert tensor.p[2, 2, :].tolist() == [40, 20, 24, 24]
    # A_2 A_2 = 40 A_0 + 20 A_1 + 24 A_2 + 24 A_3 over the integers
    mats = [m.astype(np.int64) for m in scheme.matrices]
    lhs = fp.int_matmul(mats[2], mats[2])
    rhs = 40 * mats[0] + 20 * mats[1] + 24 * mats[2] + 24 * mats[3]
    assert np.array_equal(lhs, rhs)


def test_identity_relation_structure():
    _, tensor = FX.fixture_scheme("dodd4")
    d = tensor.d
    for j in range(d + 1):
        for k in range(d + 1):
            assert tensor.p[0, j, k] == (1 if j == k else 0)


def test_dhs_cross_product_decomposition():
    scheme, tensor = FX.fixture_scheme("dhs")
    expected = {3: 6, 5: 22}
    for k in range(6):
        assert tensor.p[1, 4, k] == expected.get(k, 0)
    mats = [m.astype(np.int64) for m in scheme.matrices]
    assert np.array_equal(fp.int_matmul(mats[1], mats[4]), 6 * mats[3] + 22 * mats[5])


@pytest.mark.parametrize("name", ["doro", "hadamard48", "dodd4"])
def test_reconstruction_identity(name):
    scheme, tensor = FX.fixture_scheme(name)
    mats = [m.astype(np.int64) for m in scheme.matrices]
    d = scheme.d
    for i in range(d + 1):
        for j in range(i, d + 1):
            lhs = fp.int_matmul(mats[i], mats[j])
            rhs = sum(int(tensor.p[i, j, k]) * mats[k] for k in range(d + 1))
            assert np.array_equal(lhs, rhs), (i, j)


def test_symmetry_and_row_sums():
    for name in ("doro", "dgewirtz", "foster"):
        _, tensor = FX.fixture_scheme(name)
        d = tensor.d
        assert np.array_equal(tensor.p, tensor.p.transpose(1, 0, 2))
        k = tensor.valencies()
        for i in range(d + 1):
            for kk in range(d + 1):
                assert int(tensor.p[i, :, kk].sum()) == k[i]


def test_pair_counting_oracle_doro(rng):
    scheme, tensor = FX.fixture_scheme("doro")
    mats = [m.astype(bool) for m in scheme.matrices]
    n, d = scheme.n, scheme.d
    for _ in range(25):
        i, j, k = rng.integers(0, d + 1, size=3)
        where = np.argwhere(mats[k])
        x, y = where[rng.integers(0, len(where))]
        count = int((mats[i][x] & mats[j][:, y]).sum())
        assert count == tensor.p[i, j, k]


def test_divisibility_profile():
    _, tensor = FX.fixture_scheme("doro")
    assert S.divisibility_profile(tensor, [2], 2)
    assert not S.divisibility_profile(tensor, [1], 2)
    _, dhs = FX.fixture_scheme("dhs")
    assert S.divisibility_profile(dhs, [1, 4], 2)
    with pytest.raises(ValueError, match="out of range"):
        S.divisibility_profile(tensor, [9], 2)


def test_divisibility_failures_name_the_violation():
    _, tensor = FX.fixture_scheme("doro")
    bad = S.divisibility_failures(tensor, [1], 2)
    assert (1, 1, 1, 1) in bad


def test_scheme_json_dict():
    scheme, tensor = FX.fixture_scheme("doro")
    blob = S.scheme_to_json_dict(scheme, tensor)
    assert blob["d"] == 3 and blob["n"] == 68
    assert blob["p_tensor"][2][2] == [40, 20, 24, 24]
