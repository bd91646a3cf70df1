import random

import pytest
from hypothesis import given, settings, strategies as st

from veritas.complexes import (
    Complex,
    ComplexError,
    VertexMap,
    euler_characteristic,
    f_vector,
    grid_complex,
    icosahedron,
    is_isomorphic,
    k_cliques,
    link,
    quotient,
    simplex_complex,
)
from veritas.oracles import naive_cliques, octahedron, random_complex, random_graph


def test_validation():
    with pytest.raises(ComplexError):
        Complex((0, 1, 2), ((0, 1), (1, 2, 0)))  # not pure
    with pytest.raises(ComplexError):
        Complex((0, 1, 2), ((0, 0),))
    with pytest.raises(ComplexError):
        Complex((0, 1, 2), ((0, 1),))  # vertex 2 unused


def test_small_complexes():
    assert f_vector(icosahedron()) == [12, 30, 20]
    assert euler_characteristic(icosahedron()) == 2
    assert f_vector(simplex_complex(5)) == [5, 10, 10, 5, 1]
    g = grid_complex(5)
    assert (g.num_vertices, len(g), g.dimension) == (25, 10, 4)
    assert all(a.bit_count() == 8 for a in g.adjacency())


def test_json_round_trip(tmp_path):
    for X in (icosahedron(), grid_complex(3), Complex.from_labeled([[("a", 1), ("b", 2)], [("b", 2), ("c", 3)]])):
        assert Complex.from_json(X.to_json()) == X
        path = X.save(tmp_path / "x.json")
        assert Complex.load(path) == X
        assert X.dumps() == Complex.load(path).dumps()


def test_icosahedron_links_are_pentagons():
    X = icosahedron()
    for v in range(12):
        L = link(X, v)
        assert (L.num_vertices, len(L)) == (5, 5)


def test_octahedron_quotient_rejected():
    X = octahedron()
    with pytest.raises(ComplexError):
        quotient(X, [1, 0, 3, 2, 5, 4])
    with pytest.raises(ComplexError):
        quotient(X, [0, 1, 2, 3, 4, 5])  # fixed points


def test_isomorphism_finds_relabelling():
    rng = random.Random(5)
    X = icosahedron()
    perm = list(range(12))
    rng.shuffle(perm)
    Y = Complex(tuple(range(12)), tuple(tuple(sorted(perm[v] for v in s)) for s in X.maximal_simplices))
    m = is_isomorphic(X, Y)
    assert m is not None and m.is_isomorphism()
    assert is_isomorphic(X, octahedron()) is None
    assert is_isomorphic(grid_complex(5), simplex_complex(5)) is None


def test_vertex_map_checks():
    X = grid_complex(2)
    good = VertexMap(X, X, (1, 0, 3, 2))
    bad = VertexMap(X, X, (0, 3, 2, 1))
    assert good.is_isomorphism() and not bad.is_simplicial()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(8, 22), st.integers(2, 5))
def test_cliques_match_naive(seed, nv, k):
    adj = random_graph(random.Random(seed), nv, 0.5)
    assert k_cliques(adj, k) == naive_cliques(adj, k)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_isomorphism_is_invariant_under_relabelling(seed):
    rng = random.Random(seed)
    X = random_complex(rng, 9, 2, 8)
    perm = list(range(X.num_vertices))
    rng.shuffle(perm)
    Y = Complex(X.vertex_labels, tuple(tuple(sorted(perm[v] for v in s)) for s in X.maximal_simplices))
    m = is_isomorphic(Y, X)
    assert m is not None and m.is_isomorphism()


# -- the 600-cell --------------------------------------------------------------


def test_600_cell(pipe):
    X = pipe.cell600
    assert f_vector(X) == [120, 720, 1200, 600]
    assert euler_characteristic(X) == 0
    assert {a.bit_count() for a in X.adjacency()} == {12}
    ico = icosahedron()
    for v in (0, 17, 119):
        assert is_isomorphic(link(X, v), ico) is not None


def test_sigma3(pipe):
    Q = pipe.sigma3
    assert f_vector(Q) == [60, 360, 600, 300]
    assert euler_characteristic(Q) == 0
    assert all(len(lab) == 2 for lab in Q.vertex_labels)
    # twice-covered: every cell has exactly two preimages
    assert len(pipe.cell600) == 2 * len(Q)
