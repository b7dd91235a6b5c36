"""Catalog of named distance-regular graph fixtures.

Every fixture load is gated: the graph is rebuilt or parsed, then its
intersection array is verified against the manifest before anything is
handed out.  Schemes, tensors and generator lists are cached per process.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from . import graphs as G
from . import groups as GR
from .schemes import AssociationScheme, IntersectionTensor, from_distance_regular, intersection_tensor

FIXTURE_NAMES = ("doro", "hadamard48", "dgewirtz", "gh33", "dodd4", "foster", "dhs")


def _data_text(fname: str) -> str:
    return resources.files("schemecodes").joinpath("data", fname).read_text()


@lru_cache(maxsize=1)
def manifest() -> dict:
    return json.loads(_data_text("manifest.json"))


class UnknownFixture(KeyError):
    pass


def _build(name: str) -> G.Graph:
    try:
        entry = manifest()[name]
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None
    source = entry["source"]
    if source == "graph6":
        return G.parse_graph6(_data_text(entry["file"]))
    if source == "double":
        return G.bipartite_double(G.parse_graph6(_data_text(entry["file"])))
    if source == "hadamard12":
        return G.hadamard_graph(G.paley_hadamard_12())
    if source == "doubled_odd":
        return G.doubled_odd_graph(entry["k"])
    raise ValueError(f"unknown fixture source {source!r}")


@lru_cache(maxsize=None)
def fixture_system(name: str) -> tuple[G.Graph, G.DistanceSystem, G.IntersectionArray]:
    """Graph plus verified distance system; raises if the array is off."""
    entry = manifest().get(name)
    if entry is None:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    g = _build(name)
    if g.n != entry["n"]:
        raise AssertionError(f"fixture {name}: {g.n} vertices, manifest says {entry['n']}")
    ds = G.distance_matrices(g)
    arr = G.verify_distance_regular(ds)
    if not isinstance(arr, G.IntersectionArray):
        raise AssertionError(f"fixture {name} failed distance-regularity: {arr}")
    if list(arr.b) != entry["b"] or list(arr.c) != entry["c"]:
        raise AssertionError(f"fixture {name}: array {arr} does not match manifest")
    return g, ds, arr


def fixture_graph(name: str) -> G.Graph:
    return fixture_system(name)[0]


@lru_cache(maxsize=None)
def fixture_scheme(name: str) -> tuple[AssociationScheme, IntersectionTensor]:
    _, ds, _ = fixture_system(name)
    scheme = from_distance_regular(ds)
    return scheme, intersection_tensor(scheme)


@lru_cache(maxsize=None)
def fixture_generators(name: str) -> tuple[GR.Perm, ...]:
    """Committed automorphism generators, validated against the graph."""
    entry = manifest().get(name)
    if entry is None or "gens" not in entry:
        raise UnknownFixture(f"no generator file for fixture {name!r}")
    g = fixture_graph(name)
    gens = GR.parse_generator_file(_data_text(entry["gens"]), g.n)
    for p in gens:
        if not GR.is_automorphism(g, p):
            raise AssertionError(f"fixture {name}: committed generator fails automorphism check")
    return tuple(gens)


__all__ = [
    "FIXTURE_NAMES",
    "UnknownFixture",
    "fixture_generators",
    "fixture_graph",
    "fixture_scheme",
    "fixture_system",
    "manifest",
]
