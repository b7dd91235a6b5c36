import numpy as np
import pytest

from conftest import one_cell_quotient, trivial_quotient
from schemecodes import fixtures as FX
from schemecodes import fp
from schemecodes import graphs as G
from schemecodes import groups as GR
from schemecodes import partitions as PT
from schemecodes import schemes as S


def c4_scheme():
    c4 = G.graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    return S.from_distance_regular(G.distance_matrices(c4))


def test_singleton_partition_gives_adjacency():
    scheme, _ = FX.fixture_scheme("doro")
    qs = trivial_quotient("doro")
    for i in range(scheme.d + 1):
        assert np.array_equal(qs.matrices[i], scheme.matrices[i])


def test_one_cell_partition_gives_valencies():
    scheme, _ = FX.fixture_scheme("hadamard48")
    qs = one_cell_quotient("hadamard48")
    assert [int(m[0, 0]) for m in qs.matrices] == list(scheme.valencies())


def test_c4_antipodal_partition():
    scheme = c4_scheme()
    qs = PT.check_equitable(scheme, [(0, 2), (1, 3)])
    assert isinstance(qs, PT.QuotientSystem)
    assert qs.matrices[1].tolist() == [[0, 2], [2, 0]]


def test_check_equitable_witness():
    scheme, _ = FX.fixture_scheme("doro")
    cells = [tuple(range(5)), tuple(range(5, 68))]
    res = PT.check_equitable(scheme, cells)
    assert isinstance(res, PT.EquitabilityWitness)
    assert res.count_a != res.count_b
    assert "not equitable" in str(res)


def test_orbit_partitions_equitable():
    for name, order in (("doro", 17), ("foster", 2)):
        scheme, _ = FX.fixture_scheme(name)
        g = FX.fixture_graph(name)
        gens = list(FX.fixture_generators(name))
        subs = GR.sample_subgroups(g, gens, [order], trials=120, seed=5)
        assert subs
        qs = PT.check_equitable(scheme, subs[0].orbits().cells)
        assert isinstance(qs, PT.QuotientSystem)


def test_projection_formula_agrees_and_rejects():
    scheme, _ = FX.fixture_scheme("doro")
    g = FX.fixture_graph("doro")
    gens = list(FX.fixture_generators("doro"))
    subs = GR.sample_subgroups(g, gens, [17], trials=80, seed=6)
    cells = subs[0].orbits().cells
    h = PT.CharMatrix.from_cells(68, cells)
    qs = PT.quotient_by_projection(scheme, h)
    assert qs.matrices[1].shape == (4, 4)
    counted = PT.check_equitable(scheme, cells)
    assert all(np.array_equal(a, b) for a, b in zip(qs.matrices, counted.matrices))
    bad = PT.CharMatrix.from_cells(68, [tuple(range(5)), tuple(range(5, 68))])
    with pytest.raises(ValueError, match="not (integral|equitable)"):
        PT.quotient_by_projection(scheme, bad)


def test_char_matrix_identity():
    h = PT.CharMatrix.from_cells(4, [(0, 2), (1, 3)])
    hth = fp.int_matmul(h.h.T, h.h)
    assert np.array_equal(hth, 2 * np.eye(2, dtype=np.int64))


def test_eq2_holds_for_quotients():
    scheme, _ = FX.fixture_scheme("dodd4")
    g = FX.fixture_graph("dodd4")
    gens = list(FX.fixture_generators("dodd4"))
    subs = GR.sample_subgroups(g, gens, [2, 5, 7], trials=150, seed=7)
    assert subs
    for grp in subs[:4]:
        qs = PT.check_equitable(scheme, grp.orbits().cells)
        h = qs.char_matrix().h
        for i in range(scheme.d + 1):
            lhs = fp.int_matmul(scheme.matrices[i].astype(np.int64), h)
            rhs = fp.int_matmul(h, qs.matrices[i])
            assert np.array_equal(lhs, rhs)


def test_uniform_quotients_symmetric():
    scheme, _ = FX.fixture_scheme("dgewirtz")
    g = FX.fixture_graph("dgewirtz")
    gens = list(FX.fixture_generators("dgewirtz"))
    subs = GR.sample_subgroups(g, gens, [2], trials=80, seed=8)
    qs = PT.check_equitable(scheme, subs[0].orbits().cells)
    for m in qs.matrices:
        assert np.array_equal(m, m.T)


def test_row_sums_equal_valencies():
    scheme, _ = FX.fixture_scheme("hadamard48")
    g = FX.fixture_graph("hadamard48")
    gens = list(FX.fixture_generators("hadamard48"))
    subs = GR.sample_subgroups(g, gens, [3], trials=80, seed=9)
    qs = PT.check_equitable(scheme, subs[0].orbits().cells)
    for i, m in enumerate(qs.matrices):
        assert (m.sum(axis=1) == scheme.valencies()[i]).all()


def test_verify_quotient_identity_and_mutation():
    scheme, tensor = FX.fixture_scheme("dgewirtz")
    qs = trivial_quotient("dgewirtz")
    assert PT.verify_quotient_identity(qs, tensor) is None
    qs1 = one_cell_quotient("dgewirtz")
    assert PT.verify_quotient_identity(qs1, tensor) is None
    corrupted = list(qs1.matrices)
    corrupted[1] = corrupted[1] + 1
    bad = PT.QuotientSystem(qs1.partition, tuple(corrupted))
    failing = PT.verify_quotient_identity(bad, tensor)
    assert failing is not None


def test_parse_partition_file():
    cells = PT.parse_partition_file("0 1\n2 3 # tail\n", 4)
    assert cells == ((0, 1), (2, 3))
    with pytest.raises(ValueError, match="two cells"):
        PT.parse_partition_file("0 1\n1 2\n3\n", 4)
    with pytest.raises(ValueError, match="cover"):
        PT.parse_partition_file("0 1\n", 4)
    with pytest.raises(ValueError, match="out of range"):
        PT.parse_partition_file("0 9\n", 4)
