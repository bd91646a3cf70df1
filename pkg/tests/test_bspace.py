from collections import Counter

import pytest

from veritas import bspace, latin
from veritas.bspace import FunctorError, build_B, build_B2, phi
from veritas.complexes import Complex, grid_complex, icosahedron, is_isomorphic, simplex_complex
from veritas.pipeline import Choices, Pipeline


def test_B_of_simplex_is_simplex():
    b = build_B(simplex_complex(5), n=5)
    assert len(b) == 1 and b.complex.num_vertices == 5


def test_icosahedron_B_and_B2():
    b1, b2 = build_B2(icosahedron(), n=4)
    assert (b1.complex.num_vertices, len(b1)) == (20, 10)
    assert (b2.complex.num_vertices, len(b2)) == (44, 56)
    pm = phi(icosahedron(), b1, b2)
    assert pm.is_simplicial()


def test_from_complex_rejects_foreign(pipe):
    with pytest.raises(FunctorError):
        bspace.BComplex.from_complex(grid_complex(5), pipe.cell600, 5)


def test_B_is_grid(pipe):
    cert = bspace.verify_grid(pipe.B)
    assert cert.passed and cert.witness is not None
    assert sorted(pipe.B.colorings) == pipe.colorings
    assert all(len(c) == 24 for c in pipe.B.classes)


def test_double_cosets(pipe):
    cells = bspace.double_coset_cells(pipe.group, pipe.T, pipe.p)
    assert len(cells) == 25
    # each vertex sits in five cells, one per row and one per column
    where = {v: [] for v in range(120)}
    for c, ij in cells.items():
        for v in c:
            where[v].append(ij)
    for ijs in where.values():
        assert sorted(i for i, _ in ijs) == [0, 1, 2, 3, 4]
        assert sorted(j for _, j in ijs) == [0, 1, 2, 3, 4]
    assert bspace.double_coset_colorings(pipe.group, pipe.T, pipe.p) == pipe.colorings


def test_alternative_p_gives_same_colourings(pipe):
    alt = Pipeline(Choices(alt_p=True))
    assert alt.p != pipe.p
    assert bspace.double_coset_colorings(alt.group, alt.T, alt.p) == pipe.colorings


def test_B2_is_latin_squares(pipe):
    assert (pipe.B2.complex.num_vertices, len(pipe.B2)) == (120, 1344)
    assert sorted(set(pipe.perm_labels)) == latin.ALL_PERMS
    assert pipe.B2_squares == pipe.squares


def test_transposed_reading_gives_same_squares(pipe):
    coords = [(j, i) for i, j in pipe.grid_coords]
    labels = bspace.permutation_labels(pipe.B2, coords)
    assert labels == [latin.inverse(s) for s in pipe.perm_labels]
    squares = sorted(latin.square(labels[w] for w in s) for s in pipe.B2.complex.maximal_simplices)
    assert squares == pipe.squares


def test_phi_fibres(pipe):
    pm = pipe.phi
    assert pm.fiber_sizes() == Counter({2: 60})
    assert all(pipe.involution[a] == b for a, b in pm.fibers().values())
    assert pm.is_simplicial()
    assert {latin.parity(pipe.perm_labels[w]) for w in pm.assignment} == {0}


def test_quotient_B_and_injectivity(pipe):
    cert, bq = bspace.verify_quotient_B_equality(pipe.B, pipe.sigma3, pipe.involution)
    assert cert.passed and len(bq) == 10
    cert, image = bspace.verify_phi_injective_on_quotient(pipe.sigma3, pipe.phi, pipe.involution)
    assert cert.passed, cert.details
    assert (image.num_vertices, len(image)) == (60, 300)


def test_quotient_phi_detects_inconsistency(pipe):
    broken = bspace.PhiMap(pipe.cell600, pipe.B2, tuple(range(120)))
    with pytest.raises(FunctorError):
        bspace.quotient_phi(broken, pipe.involution)


def test_B3_fixed_point(pipe):
    cert, b3, b4 = bspace.verify_B3_fixed_point(pipe.B, pipe.B2, pipe.perm_labels)
    assert cert.passed, cert.details
    assert (b3.complex.num_vertices, len(b3)) == (25, 10)
    assert (b4.complex.num_vertices, len(b4)) == (120, 1344)
    # the class-cover route and plain search agree on S5
    naive = build_B(pipe.B2.complex, n=5)
    assert naive.complex == b3.complex


def test_cache_round_trip(tmp_path):
    first = Pipeline(cache_dir=tmp_path)
    b2 = first.B2.complex
    files = sorted(p.name for p in tmp_path.rglob("*.json"))
    assert len(list(tmp_path.rglob("*.sha256"))) == 3
    assert files == ["600cell.json", "B.json", "B2.json"]
    second = Pipeline(cache_dir=tmp_path)
    assert second.B2.complex == b2
    assert second.B2.provenance == first.B2.provenance


def test_corrupt_cache_is_recomputed(tmp_path):
    Pipeline(cache_dir=tmp_path).B
    path = next(tmp_path.rglob("B.json"))
    path.write_text('{"vertex_labels": [[0]], "maximal_simplices": [[0]], "dimension": 0}')
    again = Pipeline(cache_dir=tmp_path)
    assert len(again.B) == 10
    assert Complex.load(path) == again.B.complex


def test_cache_key_depends_on_choices(tmp_path):
    a = Pipeline(cache_dir=tmp_path).manifest["manifest_hash"]
    b = Pipeline(Choices(alt_p=True), cache_dir=tmp_path).manifest["manifest_hash"]
    c = Pipeline(Choices(alt_tau=True), cache_dir=tmp_path).manifest["manifest_hash"]
    assert len({a, b, c}) == 3


def test_tampered_cache_with_valid_digest_is_rejected(tmp_path):
    Pipeline(cache_dir=tmp_path).B
    path = next(tmp_path.rglob("B.json"))
    g = grid_complex(5)
    path.write_text(g.dumps())
    path.with_suffix(".sha256").write_text(__import__("hashlib").sha256(path.read_bytes()).hexdigest())
    assert len(Pipeline(cache_dir=tmp_path).B) == 10
