from itertools import permutations

import numpy as np
import pytest

from schemecodes import fixtures as FX
from schemecodes import graphs as G
from schemecodes import groups as GR


def cycle_graph(n):
    return G.graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def test_parse_perm_cycles_and_images():
    assert GR.parse_perm("()", 5).is_identity()
    p = GR.parse_perm("(0,1,2)", 3)
    assert p.order() == 3 and p(0) == 1
    q = GR.parse_perm("[1,0,3,2]", 4)
    assert q.order() == 2
    assert GR.parse_perm("1 0 3 2", 4) == q
    assert GR.parse_perm("(0,3)(1,2)", 4).order() == 2


def test_parse_perm_errors():
    with pytest.raises(ValueError, match="repeated"):
        GR.parse_perm("(0,1)(1,2)", 3)
    with pytest.raises(ValueError, match="out of range"):
        GR.parse_perm("(0,7)", 3)
    with pytest.raises(ValueError):
        GR.parse_perm("[0,0,1]", 3)


def test_perm_algebra():
    p = GR.parse_perm("(0,1,2,3)", 4)
    assert (p * p.inverse()).is_identity()
    assert (p**4).is_identity() and not (p**2).is_identity()
    assert p**-1 == p.inverse()
    assert p.cycle_string() == "(0,1,2,3)"


def test_orbits_trivial_and_nonuniform():
    triv = GR.PermGroup.trivial(4)
    part = GR.orbits(triv)
    assert len(part.cells) == 4 and part.uniform
    grp = GR.PermGroup(3, (GR.parse_perm("(0,1)", 3),))
    part = GR.orbits(grp)
    assert part.cells == ((0, 1), (2,)) and not part.uniform


def test_orbits_order_17_on_doro():
    g = FX.fixture_graph("doro")
    gens = list(FX.fixture_generators("doro"))
    subs = GR.sample_subgroups(g, gens, [17], trials=80, seed=1)
    assert subs
    part = subs[0].orbits()
    assert len(part.cells) == 4 and part.uniform and len(part.cells[0]) == 17


def test_is_automorphism():
    c4 = cycle_graph(4)
    rot = GR.parse_perm("(0,1,2,3)", 4)
    assert GR.is_automorphism(c4, rot)
    assert GR.is_automorphism(c4, GR.Perm.identity(4))
    p3closure = G.graph_from_edges(3, [(0, 1), (1, 2)])
    swap = GR.parse_perm("(0,1)", 3)
    assert not GR.is_automorphism(p3closure, swap)
    with pytest.raises(ValueError, match="degree"):
        GR.is_automorphism(c4, GR.Perm.identity(5))


def brute_force_automorphisms(g):
    n = g.n
    out = []
    for img in permutations(range(n)):
        p = GR.Perm(list(img))
        if GR.is_automorphism(g, p):
            out.append(p)
    return out


def test_find_automorphisms_c4_complete():
    c4 = cycle_graph(4)
    res = GR.find_automorphisms(c4)
    assert res.complete
    assert sorted(p.images.tobytes() for p in res.automorphisms) == sorted(
        p.images.tobytes() for p in brute_force_automorphisms(c4)
    )
    assert len(res.automorphisms) == 8


def test_find_automorphisms_k4():
    k4 = G.graph_from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    res = GR.find_automorphisms(k4)
    assert res.complete and len(res.automorphisms) == 24


def test_find_automorphisms_budget_and_validity():
    h48 = FX.fixture_graph("hadamard48")
    res = GR.find_automorphisms(h48, budget=800)
    assert not res.complete
    assert any(not p.is_identity() for p in res.automorphisms)
    for p in res.automorphisms[:20]:
        assert GR.is_automorphism(h48, p)


def test_orbit_lengths_divide_generator_order():
    gens = list(FX.fixture_generators("foster"))
    g = FX.fixture_graph("foster")
    walk = GR.RandomWalk(gens, seed=3)
    for _ in range(5):
        x = walk.step()
        part = GR.orbits(GR.PermGroup(g.n, (x,)))
        o = x.order()
        assert all(o % len(c) == 0 for c in part.cells)


def test_closure_and_group_order():
    s3 = GR.PermGroup(3, (GR.parse_perm("(0,1)", 3), GR.parse_perm("(0,1,2)", 3)))
    assert GR.group_order(s3) == 6
    assert GR.group_order(s3, cap=5) is None


def test_describe_group_labels():
    e4 = GR.PermGroup(4, (GR.parse_perm("(0,1)(2,3)", 4), GR.parse_perm("(0,2)(1,3)", 4)))
    assert GR.describe_group(e4) == "E4"
    z6 = GR.PermGroup(6, (GR.parse_perm("(0,1,2,3,4,5)", 6),))
    assert GR.describe_group(z6) == "Z6"
    s3 = GR.PermGroup(3, (GR.parse_perm("(0,1)", 3), GR.parse_perm("(0,1,2)", 3)))
    assert GR.describe_group(s3) == "S3"


def test_sample_subgroups_trivial_target():
    g = cycle_graph(5)
    subs = GR.sample_subgroups(g, [GR.Perm.identity(5)], [1], trials=5, seed=0)
    assert len(subs) == 1
    assert GR.orbits(subs[0]).uniform


def test_sample_subgroups_validates_generators():
    c4 = cycle_graph(4)
    bad = GR.parse_perm("(0,1)", 4)  # not an automorphism of C4
    with pytest.raises(ValueError, match="automorphism"):
        GR.sample_subgroups(c4, [bad], [2], trials=5, seed=0)


def test_sample_subgroups_finds_uniform_involutions():
    g = FX.fixture_graph("dgewirtz")
    gens = list(FX.fixture_generators("dgewirtz"))
    subs = GR.sample_subgroups(g, gens, [2], trials=120, seed=2)
    assert subs
    part = subs[0].orbits()
    assert part.uniform and len(part.cells) == 56
    for p in subs[0].generators:
        assert GR.is_automorphism(g, p)


def test_sample_subgroups_z7_on_gh33():
    g = FX.fixture_graph("gh33")
    gens = list(FX.fixture_generators("gh33"))
    subs = GR.sample_subgroups(g, gens, [7], trials=120, seed=4)
    assert subs
    part = subs[0].orbits()
    assert part.uniform and len(part.cells) == 104 and len(part.cells[0]) == 7


def test_generator_files_roundtrip():
    text = "# comment\n(0,1,2)\n(3,4)\n"
    gens = GR.parse_generator_file(text, 5)
    assert len(gens) == 2 and gens[0].order() == 3 and gens[1].order() == 2
