"""The colouring-space functor B and the natural map phi: X -> B^2(X).

``B(X)`` has one vertex per colour class occurring in some colouring of X and
one maximal simplex per colouring. ``phi(p)`` collects the classes of B(X)
containing ``p``; it is a vertex of ``B(B(X))``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .certificate import Certificate
from .chroma import Partition, enumerate_colorings, enumerate_colorings_by_class_cover
from .complexes import Complex, grid_complex, is_isomorphic, orbit_indices
from .golden import IcosianGroup


class FunctorError(RuntimeError):
    pass


@dataclass(frozen=True)
class BComplex:
    """B(source): vertex ``k`` is the class ``classes[k]`` of source vertex indices."""

    complex: Complex
    source: Complex
    n: int
    colorings: tuple[Partition, ...]
    provenance: tuple[int, ...]  # maximal simplex k came from colorings[provenance[k]]

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return self.complex.vertex_labels

    def __len__(self):
        return len(self.complex)

    @classmethod
    def from_complex(cls, cx: Complex, source: Complex, n: int) -> "BComplex":
        """Rebuild provenance from a stored B complex whose labels are source classes."""
        colorings = tuple(sorted(tuple(sorted(cx.vertex_labels[k] for k in s)) for s in cx.maximal_simplices))
        adj = source.adjacency()
        for part in colorings:
            if not is_coloring(adj, part, n):
                raise FunctorError(f"stored simplex {part!r} is not a colouring of the source")
        b = build_B(source, colorings, n)
        if b.complex != cx:
            raise FunctorError("stored complex is not B of its source")
        return b


def is_coloring(adj: Sequence[int], part, n: int) -> bool:
    """``part`` splits all vertices into ``n`` nonempty independent classes."""
    try:
        flat = sorted(v for cls in part for v in cls)
        if len(part) != n or flat != list(range(len(adj))) or not all(part):
            return False
        return all(not (adj[u] >> v & 1) for cls in part for u in cls for v in cls)
    except TypeError:
        return False


def build_B(X: Complex, colorings: Sequence[Partition] | None = None, n: int | None = None) -> BComplex:
    n = X.dimension + 2 if n is None else n
    if colorings is None:
        colorings = enumerate_colorings(X, n)
    colorings = tuple(sorted(colorings))
    if len(set(colorings)) != len(colorings):
        raise FunctorError("duplicate colouring in input")
    classes = sorted({cls for part in colorings for cls in part})
    index = {cls: k for k, cls in enumerate(classes)}
    simplices = [tuple(sorted(index[c] for c in part)) for part in colorings]
    if len(set(simplices)) != len(simplices):
        raise FunctorError("two colourings give the same simplex")
    cx = Complex(tuple(classes), tuple(simplices))
    where = {s: k for k, s in enumerate(simplices)}
    provenance = tuple(where[s] for s in cx.maximal_simplices)
    return BComplex(cx, X, n, colorings, provenance)


def build_B2(X: Complex, n: int | None = None) -> tuple[BComplex, BComplex]:
    """Return ``(B(X), B(B(X)))`` using the same colour count at both steps."""
    b1 = build_B(X, n=n)
    b2 = build_B(b1.complex, n=b1.n)
    return b1, b2


@dataclass(frozen=True)
class PhiMap:
    source: Complex
    target: BComplex
    assignment: tuple[int, ...]

    def fibers(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for p, w in enumerate(self.assignment):
            out.setdefault(w, []).append(p)
        return {w: tuple(ps) for w, ps in sorted(out.items())}

    def fiber_sizes(self) -> Counter:
        return Counter(len(f) for f in self.fibers().values())

    def is_simplicial(self) -> bool:
        faces = self.target.complex.faces()
        return all(
            tuple(sorted({self.assignment[p] for p in s})) in faces
            for s in self.source.maximal_simplices
        )


def phi(X: Complex, b1: BComplex, b2: BComplex) -> PhiMap:
    containing: list[list[int]] = [[] for _ in range(X.num_vertices)]
    for k, cls in enumerate(b1.classes):
        for p in cls:
            containing[p].append(k)
    index = b2.complex.label_index
    assignment = []
    for p, ks in enumerate(containing):
        key = tuple(sorted(ks))
        if key not in index:
            raise FunctorError(f"phi({p}) = {key} is not a vertex of B^2")
        assignment.append(index[key])
    return PhiMap(X, b2, tuple(assignment))


# -- the 600-cell specifics ----------------------------------------------------


def double_coset_cells(G: IcosianGroup, T, p: int) -> dict[tuple[int, ...], tuple[int, int]]:
    """Map each set p^i T p^j (as a sorted index tuple) to its grid cell (i, j)."""
    out = {}
    for i in range(5):
        left = G.left_coset(G.power(p, i), T)
        for j in range(5):
            cell = tuple(sorted(G.right_coset(left, G.power(p, j))))
            if cell in out:
                raise FunctorError(f"p^{i} T p^{j} repeats an earlier cell")
            out[cell] = (i, j)
    return out


def double_coset_colorings(G: IcosianGroup, T, p: int) -> list[Partition]:
    """Rows {p^i T p^j : j} and columns {p^i T p^j : i} of the double-coset grid."""
    cells = {ij: cls for cls, ij in double_coset_cells(G, T, p).items()}
    rows = [tuple(sorted(cells[i, j] for j in range(5))) for i in range(5)]
    cols = [tuple(sorted(cells[i, j] for i in range(5))) for j in range(5)]
    return sorted(set(rows + cols))


def grid_coordinates(b1: BComplex, G: IcosianGroup, T, p: int) -> list[tuple[int, int]]:
    cells = double_coset_cells(G, T, p)
    try:
        return [cells[cls] for cls in b1.classes]
    except KeyError as exc:
        raise FunctorError("a B-vertex is not a double coset p^i T p^j") from exc


def permutation_labels(b2: BComplex, coords: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Read each B^2 vertex (five grid cells) as the permutation row -> column."""
    out = []
    for cells in b2.classes:
        perm = [-1] * 5
        for k in cells:
            i, j = coords[k]
            if perm[i] != -1:
                raise FunctorError(f"B^2 vertex {cells} meets row {i} twice")
            perm[i] = j
        if sorted(perm) != list(range(5)):
            raise FunctorError(f"B^2 vertex {cells} is not a permutation matrix")
        out.append(tuple(perm))
    return out


def verify_grid(b1: BComplex) -> Certificate:
    iso = is_isomorphic(b1.complex, grid_complex(5))
    return Certificate(
        "B_is_grid",
        iso is not None and b1.complex.num_vertices == 25 and len(b1) == 10,
        list(iso.assignment) if iso else None,
        {"vertices": b1.complex.num_vertices, "simplices": len(b1)},
    )


def verify_B3_fixed_point(b1: BComplex, b2: BComplex, perm_labels=None) -> tuple[Certificate, BComplex, BComplex]:
    """Compute B^3 by the class-cover strategy and B^4 directly; compare with B and B^2."""
    S = b2.complex
    n = b2.n
    cols = enumerate_colorings_by_class_cover(S, n, S.num_vertices // n)
    b3 = build_B(S, cols, n)
    b4 = build_B(b3.complex, n=n)
    iso3 = is_isomorphic(b3.complex, b1.complex)
    iso4 = is_isomorphic(b4.complex, S)
    details = {
        "B3_vertices": b3.complex.num_vertices,
        "B3_simplices": len(b3),
        "B4_vertices": b4.complex.num_vertices,
        "B4_simplices": len(b4),
        "B3_iso_B": iso3 is not None,
        "B4_iso_B2": iso4 is not None,
    }
    passed = iso3 is not None and iso4 is not None
    if perm_labels is not None:
        stabilisers = sorted(
            tuple(sorted(k for k, perm in enumerate(perm_labels) if perm[i] == j))
            for i in range(5)
            for j in range(5)
        )
        match = sorted(b3.classes) == stabilisers
        details["classes_are_stabiliser_cosets"] = match
        passed = passed and match
    cert = Certificate("B3_iso_B", passed, list(iso3.assignment) if iso3 else None, details)
    return cert, b3, b4


def verify_quotient_B_equality(b1: BComplex, Q: Complex, involution: Sequence[int]) -> tuple[Certificate, BComplex]:
    """B(Q) computed from Q's own colourings, compared with B(X)."""
    bq = build_B(Q, n=b1.n)
    iso = is_isomorphic(b1.complex, bq.complex)
    stable = all(set(cls) == {involution[p] for p in cls} for cls in b1.classes)
    details = {
        "quotient_colorings": len(bq),
        "B_quotient_vertices": bq.complex.num_vertices,
        "classes_involution_stable": stable,
    }
    cert = Certificate("B_quotient_iso_B", iso is not None and stable, list(iso.assignment) if iso else None, details)
    return cert, bq


def quotient_phi(pm: PhiMap, involution: Sequence[int]) -> list[int]:
    """The map Q -> B^2 induced by phi, indexed by orbit."""
    orbit = orbit_indices(involution)
    out = [-1] * (max(orbit) + 1)
    for p, w in enumerate(pm.assignment):
        if out[orbit[p]] not in (-1, w):
            raise FunctorError(f"phi differs on the orbit of vertex {p}")
        out[orbit[p]] = w
    return out


def verify_phi_injective_on_quotient(Q: Complex, pm: PhiMap, involution: Sequence[int]) -> tuple[Certificate, Complex]:
    """phi descends to an injective simplicial map Q -> B^2.

    Cells of Q have four vertices and B^2 has five per simplex, so each image
    cell is a face; we also check each lies in exactly one maximal simplex and
    that those completions are distinct.
    """
    qmap = quotient_phi(pm, involution)
    b2 = pm.target.complex
    injective = len(set(qmap)) == len(qmap)
    images = {tuple(sorted(qmap[v] for v in s)) for s in Q.maximal_simplices}
    completions: dict[tuple[int, ...], list[tuple[int, ...]]] = {t: [] for t in images}
    for top in b2.maximal_simplices:
        for t in combinations(top, len(top) - 1):
            if t in completions:
                completions[t].append(top)
    unique = all(len(c) == 1 for c in completions.values())
    distinct = len({c[0] for c in completions.values() if c}) == len(images)
    image = Complex.from_labeled(
        [[b2.vertex_labels[w] for w in s] for s in sorted(images)],
        sorted({b2.vertex_labels[w] for w in qmap}),
    )
    iso = is_isomorphic(Q, image)
    details = {
        "injective": injective,
        "distinct_images": len(images),
        "unique_completion": unique,
        "distinct_completions": distinct,
        "fiber_sizes": sorted(Counter(Counter(qmap).values()).items()),
    }
    passed = injective and len(images) == len(Q) and unique and distinct and iso is not None
    return Certificate("phi_injective_on_quotient", passed, list(iso.assignment) if iso else None, details), image
