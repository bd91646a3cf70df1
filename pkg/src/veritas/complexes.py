"""Pure simplicial complexes: construction, cliques, links, quotients, isomorphism."""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Hashable, Iterable, Sequence

from .golden import PHI, GoldenScalar, IcosianGroup


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Complex:
    """Pure complex given by vertex labels and maximal simplices.

    Maximal simplices are sorted index tuples, kept in lexicographic order.
    Labels are ints, strings, or nested tuples of those.
    """

    vertex_labels: tuple
    maximal_simplices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        simplices = tuple(sorted({tuple(sorted(s)) for s in self.maximal_simplices}))
        object.__setattr__(self, "vertex_labels", tuple(self.vertex_labels))
        object.__setattr__(self, "maximal_simplices", simplices)
        sizes = {len(s) for s in simplices}
        if len(sizes) > 1:
            raise ComplexError(f"complex is not pure: simplex sizes {sorted(sizes)}")
        n = len(self.vertex_labels)
        used = set()
        for s in simplices:
            if len(set(s)) != len(s):
                raise ComplexError(f"simplex {s} repeats a vertex")
            used.update(s)
        if used != set(range(n)):
            raise ComplexError("every vertex must lie in a maximal simplex")

    @classmethod
    def from_labeled(cls, simplices: Iterable[Iterable[Hashable]], labels: Sequence | None = None) -> "Complex":
        """Build from simplices given as label sets; labels are sorted unless supplied."""
        simplices = [tuple(s) for s in simplices]
        if labels is None:
            labels = sorted({v for s in simplices for v in s})
        index = {lab: n for n, lab in enumerate(labels)}
        return cls(tuple(labels), tuple(tuple(index[v] for v in s) for s in simplices))

    @property
    def dimension(self) -> int:
        return len(self.maximal_simplices[0]) - 1 if self.maximal_simplices else -1

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    def __len__(self):
        return len(self.maximal_simplices)

    def index_of(self, label) -> int:
        return self.label_index[label]

    @property
    def label_index(self) -> dict:
        idx = self.__dict__.get("_label_index")
        if idx is None:
            idx = {lab: n for n, lab in enumerate(self.vertex_labels)}
            object.__setattr__(self, "_label_index", idx)
        return idx

    @property
    def star(self) -> list[list[tuple[int, ...]]]:
        """``star[v]``: maximal simplices containing ``v``."""
        st = self.__dict__.get("_star")
        if st is None:
            st = [[] for _ in self.vertex_labels]
            for s in self.maximal_simplices:
                for v in s:
                    st[v].append(s)
            object.__setattr__(self, "_star", st)
        return st

    def edges(self) -> list[tuple[int, int]]:
        return sorted({e for s in self.maximal_simplices for e in combinations(s, 2)})

    def adjacency(self) -> list[int]:
        """Neighbour bitmasks of the 1-skeleton."""
        adj = [0] * self.num_vertices
        for u, v in self.edges():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def faces(self) -> set[tuple[int, ...]]:
        out = set()
        for s in self.maximal_simplices:
            for r in range(1, len(s) + 1):
                out.update(combinations(s, r))
        return out

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertex_labels": [_label_to_json(lab) for lab in self.vertex_labels],
            "maximal_simplices": [list(s) for s in self.maximal_simplices],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Complex":
        c = cls(
            tuple(_label_from_json(lab) for lab in data["vertex_labels"]),
            tuple(tuple(s) for s in data["maximal_simplices"]),
        )
        if c.maximal_simplices and c.dimension != data.get("dimension", c.dimension):
            raise ComplexError("dimension field disagrees with simplices")
        return c

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(self.dumps() + "\n")
        return path

    @classmethod
    def load(cls, path) -> "Complex":
        return cls.from_json(json.loads(Path(path).read_text()))


def _label_to_json(label):
    if isinstance(label, (tuple, list)):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(label):
    if isinstance(label, list):
        return tuple(_label_from_json(x) for x in label)
    return label


@dataclass(frozen=True)
class VertexMap:
    source: Complex
    target: Complex
    assignment: tuple[int, ...]

    def is_simplicial(self) -> bool:
        target = set(self.target.faces())
        return all(
            tuple(sorted(set(self.assignment[v] for v in s))) in target
            for s in self.source.maximal_simplices
        )

    def is_isomorphism(self) -> bool:
        if len(set(self.assignment)) != self.target.num_vertices:
            return False
        if self.source.num_vertices != self.target.num_vertices:
            return False
        image = {tuple(sorted(self.assignment[v] for v in s)) for s in self.source.maximal_simplices}
        return image == set(self.target.maximal_simplices)


def simplex_complex(n: int) -> Complex:
    """A single (n-1)-simplex on vertices 0..n-1."""
    return Complex(tuple(range(n)), (tuple(range(n)),))


def grid_complex(size: int = 5) -> Complex:
    """Vertices (i, j) of a size x size grid; rows and columns are the maximal simplices."""
    labels = [(i, j) for i in range(size) for j in range(size)]
    rows = [[(i, j) for j in range(size)] for i in range(size)]
    cols = [[(i, j) for i in range(size)] for j in range(size)]
    return Complex.from_labeled(rows + cols, labels)


def k_cliques(adjacency: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """All k-cliques of a graph given as neighbour bitmasks, in lexicographic order."""
    n = len(adjacency)
    out: list[tuple[int, ...]] = []
    if k <= 0:
        return out
    if k == 1:
        return [(v,) for v in range(n)]

    def extend(clique: list[int], cand: int):
        if len(clique) == k:
            out.append(tuple(clique))
            return
        need = k - len(clique)
        while cand and cand.bit_count() >= need:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            clique.append(v)
            extend(clique, cand & adjacency[v])
            clique.pop()

    for v in range(n):
        higher = adjacency[v] >> (v + 1) << (v + 1)
        extend([v], higher)
    return out


def bitmask_adjacency(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("adjacency must be irreflexive")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _scaled_coords(q, scale: int = 4) -> tuple[int, ...]:
    out = []
    for c in q.key():
        c = c * scale
        assert c.denominator == 1
        out.append(c.numerator)
    return tuple(out)


def build_600_cell(G: IcosianGroup) -> Complex:
    """Vertices are the group elements; cells are the 4-cliques of the phi/2 dot-product graph."""
    n = len(G)
    if n != 120:
        raise ComplexError(f"expected the 120-element icosian group, got {n}")
    target = PHI * GoldenScalar(Fraction(1, 2))
    # dot products of 4-scaled coordinates equal 16 * <u, v>
    scaled = [_scaled_coords(q) for q in G.elements]
    ta, tb = target.a * 16, target.b * 16
    edges = []
    for u in range(n):
        su = scaled[u]
        for v in range(u + 1, n):
            sv = scaled[v]
            a = b = 0
            for c in range(0, 8, 2):
                a += su[c] * sv[c] + 5 * su[c + 1] * sv[c + 1]
                b += su[c] * sv[c + 1] + su[c + 1] * sv[c]
            if a == ta and b == tb:
                edges.append((u, v))
    adj = bitmask_adjacency(n, edges)
    if any(a.bit_count() != 12 for a in adj):
        raise ComplexError("600-cell graph is not 12-regular")
    cells = k_cliques(adj, 4)
    if len(cells) != 600:
        raise ComplexError(f"found {len(cells)} tetrahedra, expected 600")
    labels = tuple(tuple(e.label()) for e in G.elements)
    return Complex(labels, tuple(cells))


def icosahedron() -> Complex:
    """Boundary of the icosahedron from exact coordinates (0, +-1, +-phi) and cyclic shifts."""
    pts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = (GoldenScalar.of(0), GoldenScalar.of(s1), PHI * s2)
            for r in range(3):
                pts.append(base[r:] + base[:r])
    pts.sort(key=lambda p: tuple(float(c) for c in p))

    def dist2(p, q):
        return sum(((a - b) * (a - b) for a, b in zip(p, q)), GoldenScalar.of(0))

    four = GoldenScalar.of(4)
    edges = [(u, v) for u, v in combinations(range(12), 2) if dist2(pts[u], pts[v]) == four]
    tris = k_cliques(bitmask_adjacency(12, edges), 3)
    labels = tuple(tuple(str(c) for c in p) for p in pts)
    return Complex(labels, tuple(tris))


def link(X: Complex, v: int) -> Complex:
    """Link of vertex ``v``; vertex labels are inherited from ``X``."""
    star = X.star[v]
    if not star:
        raise ComplexError(f"vertex {v} is isolated")
    rest = [tuple(u for u in s if u != v) for s in star]
    if not rest[0]:
        raise ComplexError(f"vertex {v} has an empty link")
    verts = sorted({u for s in rest for u in s})
    return Complex.from_labeled(
        [[X.vertex_labels[u] for u in s] for s in rest],
        [X.vertex_labels[u] for u in verts],
    )


def f_vector(X: Complex) -> list[int]:
    counts = Counter(len(f) for f in X.faces())
    return [counts[r] for r in range(1, X.dimension + 2)]


def euler_characteristic(X: Complex) -> int:
    return sum((-1) ** d * c for d, c in enumerate(f_vector(X)))


def orbit_indices(involution: Sequence[int]) -> list[int]:
    """Map each vertex to the index of its orbit {v, i(v)}, orbits ordered by smallest member."""
    reps = sorted({min(v, w) for v, w in enumerate(involution)})
    pos = {r: n for n, r in enumerate(reps)}
    return [pos[min(v, w)] for v, w in enumerate(involution)]


def quotient(X: Complex, involution: Sequence[int]) -> Complex:
    """Quotient by a fixed-point-free simplicial involution acting as a covering."""
    n = X.num_vertices
    inv = list(involution)
    if len(inv) != n or any(inv[inv[v]] != v for v in range(n)):
        raise ComplexError("map is not an involution on the vertices")
    fixed = [v for v in range(n) if inv[v] == v]
    if fixed:
        raise ComplexError(f"involution has fixed point {fixed[0]}")
    tops = set(X.maximal_simplices)
    for s in X.maximal_simplices:
        if tuple(sorted(inv[v] for v in s)) not in tops:
            raise ComplexError(f"involution is not simplicial at {s}")
    orbit = orbit_indices(inv)
    preimages: dict[tuple[int, ...], set] = defaultdict(set)
    for f in X.faces():
        image = tuple(sorted({orbit[v] for v in f}))
        if len(image) != len(f):
            raise ComplexError(f"face {f} collapses under the involution")
        preimages[image].add(f)
    for image, pre in preimages.items():
        if len(pre) != 2:
            raise ComplexError(f"quotient face {image} has {len(pre)} preimages, expected 2")
    reps = sorted({min(v, inv[v]) for v in range(n)})
    labels = tuple((X.vertex_labels[r], X.vertex_labels[inv[r]]) for r in reps)
    cells = {tuple(sorted(orbit[v] for v in s)) for s in X.maximal_simplices}
    return Complex(labels, tuple(cells))


# -- isomorphism ---------------------------------------------------------------


def _refine(X: Complex, Y: Complex, cx: list[int], cy: list[int]):
    """Jointly refine vertex colourings of X and Y until stable.

    Returns the refined pair, or None when the colour histograms diverge.
    """
    while True:
        sx = [_signature(X, v, cx) for v in range(X.num_vertices)]
        sy = [_signature(Y, v, cy) for v in range(Y.num_vertices)]
        if Counter(sx) != Counter(sy):
            return None
        ids = {s: n for n, s in enumerate(sorted(set(sx)))}
        nx = [ids[s] for s in sx]
        ny = [ids[s] for s in sy]
        if len(ids) == len(set(cx)):
            return nx, ny
        cx, cy = nx, ny


def _signature(X: Complex, v: int, colours: list[int]):
    return (
        colours[v],
        tuple(sorted(tuple(sorted(colours[u] for u in s if u != v)) for s in X.star[v])),
    )


def is_isomorphic(X: Complex, Y: Complex) -> VertexMap | None:
    """Find a vertex bijection carrying maximal simplices of X onto those of Y.

    Individualisation-refinement backtracking. Any map returned has been
    checked simplex by simplex.
    """
    if (X.num_vertices, len(X), X.dimension) != (Y.num_vertices, len(Y), Y.dimension):
        return None
    start = _refine(X, Y, [0] * X.num_vertices, [0] * Y.num_vertices)
    if start is None:
        return None
    target = set(Y.maximal_simplices)

    def search(cx, cy):
        cells = Counter(cx)
        if all(c == 1 for c in cells.values()):
            by_colour = {c: w for w, c in enumerate(cy)}
            assignment = tuple(by_colour[c] for c in cx)
            if all(tuple(sorted(assignment[v] for v in s)) in target for s in X.maximal_simplices):
                return assignment
            return None
        size = min(c for c in cells.values() if c > 1)
        colour = min(c for c, k in cells.items() if k == size)
        v = cx.index(colour)
        fresh = max(cx) + 1
        for w in (u for u, c in enumerate(cy) if c == colour):
            nx, ny = list(cx), list(cy)
            nx[v] = fresh
            ny[w] = fresh
            refined = _refine(X, Y, nx, ny)
            if refined is None:
                continue
            found = search(*refined)
            if found is not None:
                return found
        return None

    assignment = search(*start)
    if assignment is None:
        return None
    vm = VertexMap(X, Y, assignment)
    if not vm.is_isomorphism():
        raise AssertionError("isomorphism search returned an invalid map")
    return vm
