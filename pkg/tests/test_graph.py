import random

import networkx as nx
import pytest

from chainsymp import generators as gen
from chainsymp import graph
from chainsymp.graph import F1, F2, F3, ChainDigraph, Edge, NotInFamily, Union, classify, validate


def digraph(n, *edges):
    return ChainDigraph(tuple(f"v{i}" for i in range(1, n + 1)), tuple(Edge(*e) for e in edges))


TRIANGLE = digraph(3, ("v1", "v2", 2), ("v2", "v3", 2), ("v3", "v1", 2))


# -- validation ------------------------------------------------------------------


def test_triangle_valid():
    assert validate(TRIANGLE) is TRIANGLE


@pytest.mark.parametrize(
    "g, exc",
    [
        (digraph(2, ("v1", "v2", 2), ("v2", "v1", 2)), graph.ParallelOrAntiparallelEdge),
        (digraph(2, ("v1", "v2", 2), ("v1", "v2", 3)), graph.ParallelOrAntiparallelEdge),
        (digraph(2, ("v1", "v2", 1)), graph.KappaBelowTwo),
        (digraph(2, ("v1", "v1", 2)), graph.SelfLoop),
        (ChainDigraph(("a", "a"), ()), graph.DuplicateVertex),
        (digraph(2, ("v1", "v9", 2)), graph.UnknownVertex),
    ],
)
def test_validation_errors(g, exc):
    with pytest.raises(exc):
        validate(g)


def test_json_roundtrip(fixture_graph):
    g = fixture_graph("pentagon_pendants")
    assert ChainDigraph.from_dict(g.to_dict()) == g
    assert g.to_dict()["edges"][0] == {"tail": "v5", "head": "v4", "kappa": 2}


# -- orientations --------------------------------------------------------------------


def test_orient_single_edge():
    assert graph.orient_tree(["u", "v"], [("u", "v")], "v") == [("u", "v")]


def test_orient_path():
    assert sorted(graph.orient_tree("abc", [("a", "b"), ("b", "c")], "c")) == [("a", "b"), ("b", "c")]


def test_orient_six_vertex_tree(fixture_graph):
    und = [("v1", "v2"), ("v1", "v3"), ("v2", "v4"), ("v3", "v5"), ("v3", "v6")]
    arcs = graph.orient_tree([f"v{i}" for i in range(1, 7)], und, "v1")
    assert sorted(arcs) == sorted(e.pair for e in fixture_graph("tree6").edges)


def test_orient_tree_errors():
    with pytest.raises(graph.RootAbsent):
        graph.orient_tree("ab", [("a", "b")], "z")
    with pytest.raises(graph.NotATree):
        graph.orient_tree("abc", [("a", "b"), ("b", "c"), ("c", "a")], "a")


def test_orient_triangle_both_directions():
    fwd = graph.orient_unicyclic("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    rev = graph.orient_unicyclic("abc", [("a", "b"), ("b", "c"), ("c", "a")], "reverse")
    assert fwd == [("a", "b"), ("b", "c"), ("c", "a")]
    assert sorted(rev) == sorted((h, t) for t, h in fwd)
    for arcs in (fwd, rev):
        assert sorted(t for t, _ in arcs) == ["a", "b", "c"]


def test_orient_pentagon_with_pendants(fixture_graph):
    g = fixture_graph("pentagon_pendants")
    und = [e.pair for e in g.edges]
    arcs = graph.orient_unicyclic(g.vertices, und, "reverse")
    assert len(arcs) == 11
    assert sorted(arcs) == sorted(e.pair for e in g.edges)


def test_orient_square_with_pendant():
    arcs = graph.orient_unicyclic("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("e", "c")])
    assert len(arcs) == 5 and ("e", "c") in arcs
    assert sorted(t for t, _ in arcs) == list("abcde")


def test_orient_unicyclic_errors():
    with pytest.raises(graph.NotUnicyclic):
        graph.orient_unicyclic("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(graph.NotUnicyclic):
        graph.orient_unicyclic("abcdef", [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e"), ("e", "f"), ("f", "d")])
    with pytest.raises(ValueError):
        graph.orient_unicyclic("abc", [("a", "b"), ("b", "c"), ("c", "a")], "sideways")


# -- components and families -------------------------------------------------------


def test_components():
    assert len(graph.components(digraph(4, ("v1", "v2", 2), ("v3", "v4", 2)))) == 2
    assert len(graph.components(digraph(4))) == 4


def test_components_keep_vertex_order(fixture_graph):
    a, b = graph.components(fixture_graph("two_trees"))
    assert (len(a.vertices), len(b.vertices)) == (7, 6)
    assert a.vertices == tuple(f"v{i}" for i in range(1, 8))


def test_classify_examples(fixture_graph):
    assert isinstance(classify(TRIANGLE), F2)
    tag = classify(digraph(2, ("v1", "v2", 3)))
    assert isinstance(tag, F3) and tag.root == "v2"
    assert classify(digraph(2)) == F1("v1", "v2")
    assert classify(fixture_graph("two_trees")) == F1("v1", "v8")
    assert isinstance(classify(fixture_graph("pentagon_pendants")), F2)


@pytest.mark.parametrize(
    "g, reason",
    [
        (digraph(4, ("v1", "v2", 2), ("v2", "v3", 2), ("v3", "v1", 2), ("v1", "v4", 2), ("v4", "v2", 2)), "EdgeExcess"),
        (digraph(3, ("v1", "v2", 2), ("v1", "v3", 2)), "NotLeavesToRoot"),
        (digraph(3, ("v1", "v2", 3), ("v3", "v2", 5)), "TooManyOddEdges"),
        (digraph(3, ("v1", "v2", 3), ("v2", "v3", 2)), "OddEdgeNotIntoRoot"),
        (digraph(3, ("v1", "v2", 2), ("v2", "v3", 2), ("v1", "v3", 2)), "NotCentripetal"),
        (digraph(3, ("v1", "v2", 2), ("v2", "v3", 2), ("v3", "v1", 3)), "OddKappaOnCycleComponent"),
        (digraph(2, ("v1", "v2", 2)), "UnpairedTree"),
    ],
)
def test_classify_rejections(g, reason):
    tag = classify(validate(g))
    assert isinstance(tag, NotInFamily) and tag.reason == reason


def test_classify_union():
    g = digraph(
        8,
        ("v1", "v2", 2), ("v2", "v3", 2), ("v3", "v1", 2),
        ("v4", "v5", 3),
        ("v7", "v8", 4),
    )
    tag = classify(g)
    assert isinstance(tag, Union)
    assert [p.name for p in tag.parts] == ["F2", "F3", "F1"]
    assert tag.parts[2] == F1("v6", "v8")
    assert str(tag) == "Union(F2,F3,F1)"


def test_out_degree_property_of_orientations():
    rng = random.Random(5)
    for _ in range(100):
        names, und = gen.random_tree(rng, rng.randint(1, 10))
        root = rng.choice(names)
        arcs = graph.orient_tree(names, und, root)
        tails = [t for t, _ in arcs]
        assert sorted(tails) == sorted(v for v in names if v != root)
        names, und = gen.random_unicyclic(rng, rng.randint(3, 10))
        arcs = graph.orient_unicyclic(names, und, rng.choice(("forward", "reverse")))
        assert sorted(t for t, _ in arcs) == sorted(names)


def test_generated_members_classify():
    rng = random.Random(9)
    for maker, cls in ((gen.random_f1, F1), (gen.random_f2, F2), (gen.random_f3, F3)):
        for _ in range(50):
            assert isinstance(classify(validate(maker(rng))), cls)


def test_few_edges_means_at_most_one_cycle_per_component():
    rng = random.Random(13)
    seen = 0
    for _ in range(400):
        g = gen.random_digraph(rng, rng.randint(2, 8), 0.4)
        if len(g.edges) > len(g.vertices):
            continue
        seen += 1
        for c in graph.components(g):
            if len(c.edges) <= len(c.vertices):
                assert len(nx.cycle_basis(c.underlying())) <= 1
    assert seen > 100


def test_dot_export():
    dot = graph.to_dot(digraph(2, ("v1", "v2", 4)))
    assert dot.startswith("digraph chain {") and dot.endswith("}\n")
    assert '"v1" -> "v2" [label="4"];' in dot
    assert dot.count("fillcolor=white") == 2
    assert dot.count("style=dotted") == 2
