"""Enumeration of colourings of pure complexes, counted as unordered partitions.

A colouring is proper on the 1-skeleton: every maximal simplex is rainbow.
Colour labels are forgotten, so each partition into exactly ``n`` nonempty
classes is reported once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .complexes import Complex

Partition = tuple[tuple[int, ...], ...]


def canonical_partition(classes) -> Partition:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


def labeling_to_partition(labels: Sequence[int], n: int) -> Partition:
    classes: list[list[int]] = [[] for _ in range(n)]
    for v, c in enumerate(labels):
        classes[c].append(v)
    return canonical_partition(c for c in classes if c)


def _search(
    adj: Sequence[int],
    n: int,
    *,
    precolor: dict[int, int] | None = None,
    break_symmetry: bool = True,
    require_all: bool = True,
) -> Iterator[list[int]]:
    """Backtracking with forward checking over colour bitmasks.

    With ``break_symmetry`` a new colour is opened only as the next unused
    index, so every partition is produced by exactly one labelling. The next
    vertex is the one with the fewest remaining colours, ties broken by
    descending degree and then index.
    """
    nv = len(adj)
    full = (1 << n) - 1
    domain = [full] * nv
    colour = [-1] * nv
    rank = sorted(range(nv), key=lambda v: (-adj[v].bit_count(), v))
    neighbours = [[u for u in range(nv) if adj[v] >> u & 1] for v in range(nv)]
    used = 0

    def assign(v, c, trail):
        colour[v] = c
        bit = 1 << c
        for u in neighbours[v]:
            if colour[u] < 0 and domain[u] & bit:
                trail.append((u, domain[u]))
                domain[u] &= ~bit
                if not domain[u]:
                    return False
        return True

    if precolor:
        for v, c in precolor.items():
            for u in neighbours[v]:
                if precolor.get(u) == c:
                    return
        trail: list = []
        for v, c in precolor.items():
            if not assign(v, c, trail):
                return
        used = max(precolor.values()) + 1 if break_symmetry else n

    free = [v for v in rank if colour[v] < 0]

    def pick():
        best, best_size = -1, n + 2
        limit = (1 << min(used + 1, n)) - 1 if break_symmetry else full
        for v in free:
            if colour[v] < 0:
                size = (domain[v] & limit).bit_count()
                if size < best_size:
                    best, best_size = v, size
                    if size <= 1:
                        break
        return best

    def rec(remaining):
        nonlocal used
        if remaining == 0:
            if require_all and len(set(colour)) < n:
                return
            yield list(colour)
            return
        if break_symmetry and require_all and n - used > remaining:
            return
        v = pick()
        options = domain[v]
        if break_symmetry:
            options &= (1 << min(used + 1, n)) - 1
        while options:
            c = (options & -options).bit_length() - 1
            options &= options - 1
            trail: list = []
            saved_used = used
            if assign(v, c, trail):
                if c == used:
                    used += 1
                yield from rec(remaining - 1)
            used = saved_used
            colour[v] = -1
            for u, d in reversed(trail):
                domain[u] = d

    yield from rec(sum(1 for v in range(nv) if colour[v] < 0))


def enumerate_colorings(X: Complex, n: int) -> list[Partition]:
    """All partitions of the vertices into ``n`` classes with every edge bichromatic."""
    if X.dimension + 1 > n:
        return []
    out = {labeling_to_partition(lab, n) for lab in _search(X.adjacency(), n)}
    return sorted(out)


def count_extensions(
    X: Complex, n: int, precolor: dict[int, int], limit: int | None = None
) -> tuple[int, list[int] | None]:
    """Count labelled extensions of ``precolor`` to all of X; also return the first one."""
    count, first = 0, None
    for lab in _search(X.adjacency(), n, precolor=precolor, break_symmetry=False, require_all=False):
        if first is None:
            first = lab
        count += 1
        if limit is not None and count >= limit:
            break
    return count, first


# -- class-cover strategy ------------------------------------------------------


def exact_covers(universe: Sequence[int], subsets: Sequence[Sequence[int]]) -> Iterator[list[int]]:
    """Knuth's Algorithm X over dict-of-sets; yields lists of subset indices."""
    cols: dict[int, set[int]] = {x: set() for x in universe}
    rows = {i: list(s) for i, s in enumerate(subsets)}
    for i, s in rows.items():
        for x in s:
            if x not in cols:
                return
            cols[x].add(i)

    def select(r):
        removed = []
        for j in rows[r]:
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].remove(i)
            removed.append(cols.pop(j))
        return removed

    def deselect(r, removed):
        for j in reversed(rows[r]):
            cols[j] = removed.pop()
            for i in cols[j]:
                for k in rows[i]:
                    if k != j:
                        cols[k].add(i)

    solution: list[int] = []

    def solve():
        if not cols:
            yield sorted(solution)
            return
        c = min(cols, key=lambda x: (len(cols[x]), x))
        for r in sorted(cols[c]):
            solution.append(r)
            removed = select(r)
            yield from solve()
            deselect(r, removed)
            solution.pop()

    yield from solve()


def simplex_partition(X: Complex) -> list[tuple[int, ...]] | None:
    """Some set of disjoint maximal simplices covering every vertex, if one exists."""
    for cover in exact_covers(range(X.num_vertices), X.maximal_simplices):
        return [X.maximal_simplices[i] for i in cover]
    return None


def independent_sets(adj: Sequence[int], size: int, blocks: Sequence[Sequence[int]] | None = None) -> list[tuple[int, ...]]:
    """All independent sets of exactly ``size`` vertices.

    When ``blocks`` is a partition of the vertices into cliques with exactly
    ``size`` blocks, an independent set of that size takes one vertex from each
    block, and the search runs block by block. Otherwise a branch and bound
    with a greedy clique-cover bound is used.
    """
    nv = len(adj)
    out: list[tuple[int, ...]] = []
    if blocks is not None and len(blocks) == size:
        order = list(blocks)

        def by_block(i, chosen, forbidden):
            if i == len(order):
                out.append(tuple(sorted(chosen)))
                return
            for v in order[i]:
                if not forbidden >> v & 1:
                    chosen.append(v)
                    by_block(i + 1, chosen, forbidden | adj[v])
                    chosen.pop()

        by_block(0, [], 0)
        return sorted(out)

    def cover_bound(P, need):
        k = 0
        while P and k < need:
            v = (P & -P).bit_length() - 1
            P &= ~(1 << v)
            common = adj[v] & P
            while common:
                u = (common & -common).bit_length() - 1
                P &= ~(1 << u)
                common &= adj[u]
            k += 1
        return k

    def rec(chosen, P):
        need = size - len(chosen)
        if need == 0:
            out.append(tuple(sorted(chosen)))
            return
        if P.bit_count() < need or cover_bound(P, need) < need:
            return
        best, best_deg, Q = -1, -1, P
        while Q:
            v = (Q & -Q).bit_length() - 1
            Q &= Q - 1
            d = (adj[v] & P).bit_count()
            if d > best_deg:
                best, best_deg = v, d
        if best_deg == 0:
            rest = [u for u in range(nv) if P >> u & 1]
            out.extend(tuple(sorted(chosen + list(c))) for c in combinations(rest, need))
            return
        chosen.append(best)
        rec(chosen, P & ~adj[best] & ~(1 << best))
        chosen.pop()
        rec(chosen, P & ~(1 << best))

    rec([], (1 << nv) - 1)
    return sorted(out)


class ClassSizeError(ValueError):
    pass


def enumerate_colorings_by_class_cover(X: Complex, n: int, class_size: int) -> list[Partition]:
    """Colourings found as exact covers of the vertices by independent ``class_size``-sets.

    Requires that every colour class is forced to have exactly ``class_size``
    vertices. That is certified before searching, either by a partition of the
    vertices into maximal simplices of size ``n`` or by proving there is no
    independent set of ``class_size + 1`` vertices.
    """
    nv = X.num_vertices
    if nv != n * class_size:
        raise ClassSizeError(f"{nv} vertices cannot split into {n} classes of {class_size}")
    adj = X.adjacency()
    blocks = simplex_partition(X) if X.dimension + 1 == n else None
    if blocks is None and independent_sets(adj, class_size + 1):
        raise ClassSizeError(f"independence number exceeds {class_size}; class size not forced")
    classes = independent_sets(adj, class_size, blocks)
    return sorted(
        canonical_partition(classes[i] for i in cover)
        for cover in exact_covers(range(nv), classes)
    )


# -- shells --------------------------------------------------------------------


@dataclass
class ShellReport:
    seed: int
    n: int
    shell_vertex_counts: list[int] = field(default_factory=list)
    shell_simplex_counts: list[int] = field(default_factory=list)
    seed_colorings: int = 0
    # multiplicities[k][c]: extensions of start colouring c from shell k to k+1
    multiplicities: list[list[int]] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return bool(self.multiplicities) and all(m == 1 for stage in self.multiplicities for m in stage)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "shell_vertex_counts": self.shell_vertex_counts,
            "shell_simplex_counts": self.shell_simplex_counts,
            "seed_colorings": self.seed_colorings,
            "multiplicities": self.multiplicities,
            "unique": self.unique,
        }


def _subcomplex(X: Complex, simplices) -> tuple[Complex, list[int]]:
    verts = sorted({v for s in simplices for v in s})
    pos = {v: i for i, v in enumerate(verts)}
    return Complex(tuple(verts), tuple(tuple(pos[v] for v in s) for s in simplices)), verts


def shells(X: Complex, v: int) -> list[list[tuple[int, ...]]]:
    """S0 = star(v); each next shell adds every maximal simplex meeting the previous one."""
    current = set(X.star[v])
    out = [sorted(current)]
    while len(current) < len(X):
        verts = {u for s in current for u in s}
        grown = current | {s for u in verts for s in X.star[u]}
        if grown == current:
            break
        current = grown
        out.append(sorted(current))
    return out


def verify_shell_extension(X: Complex, v: int, n: int | None = None) -> ShellReport:
    """Check that each colouring of the seed star extends uniquely shell by shell."""
    n = X.dimension + 2 if n is None else n
    layers = shells(X, v)
    report = ShellReport(seed=v, n=n)
    subs = [_subcomplex(X, layer) for layer in layers]
    for sub, verts in subs:
        report.shell_vertex_counts.append(len(verts))
        report.shell_simplex_counts.append(len(sub))
    seed_sub, seed_verts = subs[0]
    starts = enumerate_colorings(seed_sub, n)
    report.seed_colorings = len(starts)
    states: list[dict[int, int] | None] = []
    for part in starts:
        states.append({seed_verts[u]: c for c, cls in enumerate(part) for u in cls})
    for sub, verts in subs[1:]:
        pos = {g: i for i, g in enumerate(verts)}
        stage = []
        for i, state in enumerate(states):
            if state is None:
                stage.append(0)
                continue
            count, first = count_extensions(sub, n, {pos[g]: c for g, c in state.items()}, limit=None)
            stage.append(count)
            states[i] = {verts[u]: c for u, c in enumerate(first)} if count == 1 else None
        report.multiplicities.append(stage)
    return report
