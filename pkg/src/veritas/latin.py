"""Unlabelled 5x5 Latin squares as 4-simplices on the 120 permutations of range(5).

A permutation ``s`` is the permutation matrix with cells ``(i, s[i])``. A
square is five pairwise discordant permutations, stored as a sorted tuple.
Permutations are 0-based here; ``cycle_str`` prints them 1-based.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .certificate import Certificate
from .complexes import Complex, bitmask_adjacency, is_isomorphic, k_cliques, link
from .parallel import parallel_map

Perm = tuple[int, ...]
Square = tuple[Perm, ...]

N = 5
IDENTITY: Perm = tuple(range(N))
ALL_PERMS: list[Perm] = list(permutations(range(N)))


def parity(s: Perm) -> int:
    """0 for even, 1 for odd."""
    seen, p = set(), 0
    for start in range(len(s)):
        if start in seen:
            continue
        length, v = 0, start
        while v not in seen:
            seen.add(v)
            v = s[v]
            length += 1
        p ^= (length - 1) & 1
    return p


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, x in enumerate(s):
        out[x] = i
    return tuple(out)


def compose(a: Perm, b: Perm) -> Perm:
    """``a . b``: apply ``b`` first."""
    return tuple(a[x] for x in b)


def discordant(a: Perm, b: Perm) -> bool:
    return all(x != y for x, y in zip(a, b))


def from_cycle(*cycle: int, n: int = N) -> Perm:
    """Permutation from a single 1-based cycle, e.g. ``from_cycle(1, 2)``."""
    out = list(range(n))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        out[a - 1] = b - 1
    return tuple(out)


def cycle_str(s: Perm) -> str:
    seen, parts = set(), []
    for start in range(len(s)):
        if start in seen or s[start] == start:
            seen.add(start)
            continue
        cyc, v = [], start
        while v not in seen:
            seen.add(v)
            cyc.append(str(v + 1))
            v = s[v]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def square(perms: Iterable[Perm]) -> Square:
    return tuple(sorted(perms))


def is_square(s: Sequence[Perm]) -> bool:
    """Five permutation matrices tiling the grid."""
    cells = {(i, p[i]) for p in s for i in range(N)}
    return len(s) == N and len(cells) == N * N


def enumerate_latin_squares() -> list[Square]:
    """All unlabelled 5x5 Latin squares, as 5-cliques of the discordance graph."""
    edges = [(u, v) for u, v in combinations(range(len(ALL_PERMS)), 2) if discordant(ALL_PERMS[u], ALL_PERMS[v])]
    adj = bitmask_adjacency(len(ALL_PERMS), edges)
    return [tuple(ALL_PERMS[i] for i in c) for c in k_cliques(adj, N)]


def vertex_set(squares: Iterable[Square]) -> list[Perm]:
    return sorted({p for s in squares for p in s})


def s5_complex(squares: Iterable[Square]) -> Complex:
    return Complex.from_labeled(squares, vertex_set(squares))


def eta(x):
    """Inverse of a permutation, or elementwise inverse of a square."""
    if x and isinstance(x[0], int):
        return inverse(x)
    return square(inverse(p) for p in x)


def translate(tau: Perm, s: Square) -> Square:
    return square(compose(tau, p) for p in s)


def twisted_eta(tau: Perm) -> Callable:
    """``s -> tau . s^-1 . tau^-1``: inversion followed by conjugation by ``tau``."""
    tau_inv = inverse(tau)

    def apply(x):
        if x and isinstance(x[0], int):
            return compose(compose(tau, inverse(x)), tau_inv)
        return square(apply(p) for p in x)

    return apply


def squares_containing(squares: Iterable[Square]) -> dict[frozenset, list[Square]]:
    """Index from each 4-subset of a square to the squares containing it."""
    out: dict[frozenset, list[Square]] = {}
    for s in squares:
        for face in combinations(s, N - 1):
            out.setdefault(frozenset(face), []).append(s)
    return out


def labeled_latin_count(n: int = N) -> int:
    """Count labelled n x n Latin squares, filling cells row by row."""
    grid = [[-1] * n for _ in range(n)]
    col_used = [0] * n
    row_used = [0] * n

    def rec(pos):
        if pos == n * n:
            return 1
        r, c = divmod(pos, n)
        total = 0
        for sym in range(n):
            bit = 1 << sym
            if row_used[r] & bit or col_used[c] & bit:
                continue
            row_used[r] |= bit
            col_used[c] |= bit
            grid[r][c] = sym
            total += rec(pos + 1)
            row_used[r] &= ~bit
            col_used[c] &= ~bit
        return total

    return rec(0)


# -- decomposition -------------------------------------------------------------


@dataclass
class Block:
    name: str
    tetrahedra: list[Square]  # sorted 4-sets of permutations
    squares: list[Square]  # the unique square completing each tetrahedron

    def complex(self) -> Complex:
        return Complex.from_labeled(self.tetrahedra)

    @property
    def vertices(self) -> list[Perm]:
        return vertex_set(self.tetrahedra)


@dataclass
class Decomposition:
    blocks: list[Block]
    remainder: list[Square]
    components: list[list[Square]] = field(default_factory=list)
    # components when squares count as adjacent only through a shared 3-face
    face_adjacent_components: int = 0
    parity_classes: dict[str, list[Square]] = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "block_sizes": {b.name: len(set(b.squares)) for b in self.blocks},
            "block_overlaps": {
                f"{a.name}|{b.name}": len(set(a.squares) & set(b.squares))
                for a, b in combinations(self.blocks, 2)
            },
            "remainder": len(self.remainder),
            "component_sizes": [len(c) for c in self.components],
            "face_adjacent_components": self.face_adjacent_components,
            "parity_classes": {k: len(v) for k, v in self.parity_classes.items()},
        }


def _complete(tetrahedra: Iterable[Square], faces: dict[frozenset, list[Square]]) -> list[Square]:
    out = []
    for t in tetrahedra:
        hits = faces.get(frozenset(t), [])
        if len(hits) != 1:
            raise ValueError(f"tetrahedron lies in {len(hits)} squares, expected 1")
        out.append(hits[0])
    return out


def face_components(squares: Sequence[Square], shared: int = 1) -> list[list[Square]]:
    """Components of the graph joining squares with ``shared`` permutations in common.

    ``shared=1`` gives the connected components of the complex.
    """
    parent = list(range(len(squares)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen: dict[tuple, int] = {}
    for k, s in enumerate(squares):
        for face in combinations(s, shared):
            if face in seen:
                parent[find(k)] = find(seen[face])
            else:
                seen[face] = k
    groups: dict[int, list[Square]] = {}
    for k, s in enumerate(squares):
        groups.setdefault(find(k), []).append(s)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: (-len(g), g[0]))


def parity_class(s: Square) -> str:
    counts = Counter(parity(p) for p in s)
    if counts[1] == 0:
        return "even"
    if counts[0] == 0:
        return "odd"
    return "mixed"


def decompose(
    squares: Sequence[Square],
    phi_tetrahedra: Sequence[Square],
    tau: Perm,
    reflect: Callable = eta,
) -> Decomposition:
    """Split the squares into the four translated copies of phi(Q) and a remainder.

    Blocks are phi(Q), reflect(phi(Q)), tau.phi(Q), tau.reflect(phi(Q)); each
    tetrahedron is replaced by the square completing it.
    """
    faces = squares_containing(squares)
    base = sorted(square(t) for t in phi_tetrahedra)
    mirrored = sorted(reflect(t) for t in base)
    tetra = {
        "phi": base,
        "eta_phi": mirrored,
        "tau_phi": sorted(translate(tau, t) for t in base),
        "tau_eta_phi": sorted(translate(tau, t) for t in mirrored),
    }
    blocks = [Block(name, ts, _complete(ts, faces)) for name, ts in tetra.items()]
    used = set().union(*(b.squares for b in blocks))
    remainder = sorted(set(squares) - used)
    parity_classes: dict[str, list[Square]] = {}
    for s in remainder:
        parity_classes.setdefault(parity_class(s), []).append(s)
    return Decomposition(
        blocks,
        remainder,
        face_components(remainder),
        len(face_components(remainder, shared=N - 1)),
        dict(sorted(parity_classes.items())),
    )


def check_decomposition(dec: Decomposition, quotient: Complex, total: int) -> Certificate:
    """Disjoint 300-square blocks each isomorphic to the quotient; remainder 72 + 72."""
    sizes = [len(set(b.squares)) for b in dec.blocks]
    overlaps = [len(set(a.squares) & set(b.squares)) for a, b in combinations(dec.blocks, 2)]
    blocks_iso = [is_isomorphic(b.complex(), quotient) is not None for b in dec.blocks]
    comps = [s5_complex(c) for c in dec.components]
    comp_shapes = [(c.num_vertices, len(c)) for c in comps]
    comps_iso = len(comps) == 2 and is_isomorphic(comps[0], comps[1]) is not None
    parity_of_components = [sorted({parity_class(s) for s in c}) for c in dec.components]
    splits_agree = sorted(map(sorted, dec.components)) == sorted(
        sorted(v) for k, v in dec.parity_classes.items()
    )
    even_vertex_component = any(all(parity(p) == 0 for p in vertex_set(c)) for c in dec.components)
    vertex_parities = {
        b.name: sorted({parity(p) for p in b.vertices}) for b in dec.blocks
    }
    details = {
        **dec.summary(),
        "blocks_isomorphic_to_quotient": blocks_iso,
        "component_shapes": comp_shapes,
        "components_isomorphic": comps_iso,
        "component_parities": parity_of_components,
        "component_split_matches_parity_split": splits_agree,
        "even_vertex_component": even_vertex_component,
        "block_vertex_parities": vertex_parities,
    }
    passed = (
        sizes == [300] * 4
        and not any(overlaps)
        and all(blocks_iso)
        and len(dec.remainder) == total - 1200 == 144
        and comp_shapes == [(60, 72), (60, 72)]
        and comps_iso
        and splits_agree
        and even_vertex_component
    )
    return Certificate("decomposition", passed, None, details)


def even_arrangement(s: Square) -> Perm | None:
    """A row order of the square whose five columns are even permutations, if any."""
    for order in permutations(range(N)):
        rows = [s[k] for k in order]
        cols = [tuple(rows[r][c] for r in range(N)) for c in range(N)]
        if all(parity(r) == 0 for r in rows) and all(parity(c) == 0 for c in cols):
            return order
    return None


def verify_even_square_characterization(dec: Decomposition, squares: Sequence[Square]) -> Certificate:
    """Among squares on even permutations, membership in the even component matches an all-even arrangement."""
    even_comp = next(
        (set(c) for c in dec.components if all(parity(p) == 0 for p in vertex_set(c))), set()
    )
    even_squares = [s for s in squares if all(parity(p) == 0 for p in s)]
    mismatches = [s for s in even_squares if (s in even_comp) != (even_arrangement(s) is not None)]
    with_odd = [s for s in squares if any(parity(p) for p in s)]
    odd_excluded = not (set(with_odd) & even_comp)
    details = {
        "even_vertex_squares": len(even_squares),
        "even_component": len(even_comp),
        "mismatches": len(mismatches),
        "squares_with_odd_vertex_excluded": odd_excluded,
    }
    return Certificate("even_square_characterization", bool(even_comp) and not mismatches and odd_excluded, None, details)


def verify_link_regularity(S: Complex, target: Complex, jobs: int = 1) -> Certificate:
    """All vertex links of S isomorphic to the identity link, which matches ``target``."""
    base = link(S, S.index_of(IDENTITY))
    results = parallel_map(_link_iso, [(link(S, v), base) for v in range(S.num_vertices)], jobs)
    to_target = is_isomorphic(base, target)
    details = {
        "link_vertices": base.num_vertices,
        "link_simplices": len(base),
        "links_isomorphic_to_identity_link": sum(results),
        "identity_link_iso_target": to_target is not None,
    }
    passed = all(results) and to_target is not None
    return Certificate("link_regularity", passed, list(to_target.assignment) if to_target else None, details)


def _link_iso(args) -> bool:
    lk, base = args
    return is_isomorphic(lk, base) is not None


def squares_json(squares: Iterable[Square]) -> list[list[list[int]]]:
    return [[list(p) for p in s] for s in sorted(squares)]


def decomposition_json(dec: Decomposition, squares: Sequence[Square]) -> dict[str, list[int]]:
    """Block name -> sorted indices into ``squares``; the remainder is listed too."""
    where = {s: k for k, s in enumerate(squares)}
    out = {b.name: sorted(where[s] for s in b.squares) for b in dec.blocks}
    out["remainder"] = sorted(where[s] for s in dec.remainder)
    return out
