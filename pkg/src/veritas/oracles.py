"""Brute-force oracles and a small corpus of complexes for cross-checking the search engines."""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .chroma import Partition, canonical_partition
from .complexes import Complex, bitmask_adjacency, grid_complex, icosahedron, simplex_complex


def brute_force_colorings(X: Complex, n: int, chunk: int = 1 << 18) -> list[Partition]:
    """Try all n**v labellings, keep proper ones using every colour, dedupe as partitions."""
    nv = X.num_vertices
    edges = np.array(X.edges(), dtype=np.int64).reshape(-1, 2)
    powers = n ** np.arange(nv, dtype=np.int64)
    total = n ** nv
    found: set[Partition] = set()
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        labels = (codes[:, None] // powers[None, :]) % n
        ok = np.ones(len(codes), dtype=bool)
        for u, v in edges:
            ok &= labels[:, u] != labels[:, v]
        for c in range(n):
            ok &= (labels == c).any(axis=1)
        for row in labels[ok]:
            found.add(canonical_partition([np.flatnonzero(row == c).tolist() for c in range(n)]))
    return sorted(found)


def naive_cliques(adjacency, k: int) -> list[tuple[int, ...]]:
    n = len(adjacency)
    return [
        c
        for c in combinations(range(n), k)
        if all(adjacency[u] >> v & 1 for u, v in combinations(c, 2))
    ]


def octahedron() -> Complex:
    # antipodal pairs (0, 1), (2, 3), (4, 5)
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return Complex(tuple(range(6)), tuple(tris))


def boundary_of_simplex(n: int) -> Complex:
    return Complex(tuple(range(n)), tuple(combinations(range(n), n - 1)))


def random_complex(rng: random.Random, nv: int, dim: int, count: int) -> Complex:
    simplices = {tuple(sorted(rng.sample(range(nv), dim + 1))) for _ in range(count)}
    used = sorted({v for s in simplices for v in s})
    pos = {v: i for i, v in enumerate(used)}
    return Complex(tuple(range(len(used))), tuple(tuple(pos[v] for v in s) for s in simplices))


def random_graph(rng: random.Random, nv: int, p: float) -> list[int]:
    edges = [(u, v) for u, v in combinations(range(nv), 2) if rng.random() < p]
    return bitmask_adjacency(nv, edges)


def coloring_corpus(seed: int = 600) -> list[tuple[str, Complex, int]]:
    """(name, complex, colour count) for every small complex the oracle is run against."""
    rng = random.Random(seed)
    corpus = [
        ("icosahedron", icosahedron(), 4),
        ("octahedron_3", octahedron(), 3),
        ("octahedron_4", octahedron(), 4),
        ("simplex_5", simplex_complex(5), 5),
        ("tetrahedron_boundary_4", boundary_of_simplex(4), 4),
        ("tetrahedron_boundary_5", boundary_of_simplex(4), 5),
        ("simplex4_boundary_5", boundary_of_simplex(5), 5),
        ("grid_3", grid_complex(3), 3),
        ("grid_3_4", grid_complex(3), 4),
    ]
    for k in range(6):
        nv = rng.randint(6, 9)
        corpus.append((f"random2_{k}", random_complex(rng, nv, 2, rng.randint(4, 10)), 4))
    for k in range(3):
        corpus.append((f"random3_{k}", random_complex(rng, 8, 3, rng.randint(3, 6)), 5))
    return corpus


def clique_corpus(seed: int = 120) -> list[tuple[str, list[int], int]]:
    rng = random.Random(seed)
    out = [
        ("icosahedron", icosahedron().adjacency(), 3),
        ("grid_5", grid_complex(5).adjacency(), 5),
        ("empty_10", [0] * 10, 2),
    ]
    for k in range(4):
        nv = rng.randint(20, 30)
        out.append((f"random_{k}", random_graph(rng, nv, rng.uniform(0.3, 0.6)), rng.choice((3, 4))))
    return out
