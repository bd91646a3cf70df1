import random

import pytest
from hypothesis import given, settings, strategies as st

from veritas.chroma import (
    ClassSizeError,
    canonical_partition,
    count_extensions,
    enumerate_colorings,
    enumerate_colorings_by_class_cover,
    exact_covers,
    independent_sets,
    labeling_to_partition,
    verify_shell_extension,
)
from veritas.complexes import grid_complex, icosahedron, link, simplex_complex
from veritas.oracles import brute_force_colorings, coloring_corpus, random_complex


def test_partition_canonical_form():
    assert canonical_partition([[3, 1], [2], [0]]) == ((0,), (1, 3), (2,))
    assert labeling_to_partition([1, 0, 1, 2], 3) == labeling_to_partition([2, 1, 2, 0], 3)


@pytest.mark.parametrize("name,X,n", [c for c in coloring_corpus() if c[0] != "icosahedron"])
def test_corpus_matches_brute_force(name, X, n):
    assert enumerate_colorings(X, n) == brute_force_colorings(X, n)


def test_icosahedron_has_ten():
    cols = enumerate_colorings(icosahedron(), 4)
    assert len(cols) == 10
    assert all(sorted(map(len, c)) == [3, 3, 3, 3] for c in cols)


def test_simplex_has_one_and_too_few_colours_none():
    assert len(enumerate_colorings(simplex_complex(5), 5)) == 1
    assert enumerate_colorings(simplex_complex(5), 4) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_random_complexes_match_oracle(seed):
    X = random_complex(random.Random(seed), 8, 2, 6)
    assert enumerate_colorings(X, 4) == brute_force_colorings(X, 4)


def test_exact_covers():
    subsets = [[0, 1], [2, 3], [0, 2], [1, 3], [0, 3], [1, 2]]
    assert sorted(sorted(c) for c in exact_covers(range(4), subsets)) == [[0, 1], [2, 3], [4, 5]]
    assert list(exact_covers(range(3), [[0, 1], [1, 2]])) == []


def test_class_cover_agrees_on_grid():
    g = grid_complex(4)
    assert enumerate_colorings_by_class_cover(g, 4, 4) == enumerate_colorings(g, 4)
    with pytest.raises(ClassSizeError):
        enumerate_colorings_by_class_cover(g, 5, 3)


def test_independent_sets_block_mode():
    g = grid_complex(3)
    adj = g.adjacency()
    rows = [tuple(range(3 * r, 3 * r + 3)) for r in range(3)]
    assert independent_sets(adj, 3, rows) == independent_sets(adj, 3)
    assert len(independent_sets(adj, 3)) == 6  # permutation matrices
    assert independent_sets(adj, 4) == []


def test_count_extensions_of_precolouring():
    X = icosahedron()
    count, first = count_extensions(X, 4, {0: 0})
    assert first is not None and first[0] == 0
    # 10 partitions, 4! labellings each, a quarter of them put colour 0 on vertex 0
    assert count == 10 * 24 // 4


def test_600_cell_colourings(pipe):
    cols = pipe.colorings
    assert len(cols) == 10
    assert all(sorted(map(len, c)) == [24] * 5 for c in cols)
    star_cols = enumerate_colorings(link(pipe.cell600, pipe.identity), 4)
    assert len(star_cols) == 10


def test_shell_extension_every_stage(pipe):
    r = verify_shell_extension(pipe.cell600, pipe.identity, 5)
    assert r.unique
    assert r.shell_vertex_counts == [13, 45, 87, 119, 120]
    assert r.shell_simplex_counts[-1] == 600
    assert r.seed_colorings == 10


@pytest.mark.slow
def test_600_cell_class_cover_equivalence(pipe):
    # certifies independence number 24, then covers by the 25 independent 24-sets
    assert enumerate_colorings_by_class_cover(pipe.cell600, 5, 24) == pipe.colorings
