from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from veritas import latin
from veritas.complexes import is_isomorphic

perms = st.permutations(range(5)).map(tuple)


@given(perms, perms)
def test_parity_is_a_homomorphism(a, b):
    assert latin.parity(latin.compose(a, b)) == (latin.parity(a) + latin.parity(b)) % 2
    assert latin.compose(a, latin.inverse(a)) == latin.IDENTITY


@given(perms, perms)
def test_discordance_is_translation_invariant(a, b):
    t = latin.from_cycle(1, 2)
    assert latin.discordant(a, b) == latin.discordant(latin.compose(t, a), latin.compose(t, b))
    assert latin.discordant(a, b) == latin.discordant(latin.inverse(a), latin.inverse(b))


def test_cycles():
    assert latin.from_cycle(1, 2) == (1, 0, 2, 3, 4)
    assert latin.parity(latin.from_cycle(1, 2)) == 1
    assert latin.parity(latin.from_cycle(1, 2, 3)) == 0
    assert latin.cycle_str(latin.from_cycle(2, 4, 5)) == "(2 4 5)"


@pytest.fixture(scope="module")
def squares():
    return latin.enumerate_latin_squares()


def test_square_count(squares):
    assert len(squares) == 1344
    assert all(latin.is_square(s) for s in squares)
    assert latin.vertex_set(squares) == latin.ALL_PERMS


def test_labelled_count_oracle(squares):
    # each unlabelled square has 5! row orders
    assert latin.labeled_latin_count() == 161280 == len(squares) * 120


def test_eta_and_translations_are_automorphisms(squares):
    sq = set(squares)
    assert {latin.eta(s) for s in squares} == sq
    for tau in (latin.from_cycle(1, 2), latin.from_cycle(1, 2, 3, 4), latin.from_cycle(1, 2, 3)):
        assert {latin.translate(tau, s) for s in squares} == sq


def test_every_tetrahedron_completes_uniquely(squares):
    faces = latin.squares_containing(squares)
    assert all(len(v) == 1 for k, v in faces.items() if len(k) == 4)


def test_parity_profile(squares):
    profile = sorted(tuple(sorted(latin.parity(p) for p in s)) for s in squares)
    counts = {k: profile.count(k) for k in set(profile)}
    assert counts == {(0, 0, 0, 0, 0): 72, (1, 1, 1, 1, 1): 72, (0, 0, 0, 0, 1): 600, (0, 1, 1, 1, 1): 600}


def test_even_arrangement_is_exhaustive():
    cyclic = latin.square(tuple((i + k) % 5 for i in range(5)) for k in range(5))
    order = latin.even_arrangement(cyclic)
    assert order is not None
    rows = [cyclic[k] for k in order]
    assert all(latin.parity(r) == 0 for r in rows)
    assert all(latin.parity(tuple(r[c] for r in rows)) == 0 for c in range(5))


def test_phi_image_is_tetrahedral_copy_of_sigma3(pipe):
    tets = pipe.phi_tetrahedra
    assert len(tets) == 300 and all(len(t) == 4 for t in tets)
    block = latin.Block("phi", tets, [])
    assert is_isomorphic(block.complex(), pipe.sigma3) is not None
    assert {latin.parity(p) for p in block.vertices} == {0}


def test_eta_fixes_the_phi_image(pipe):
    # inversion preserves parity, and with an even image it maps phi(Q) onto itself
    tets = set(pipe.phi_tetrahedra)
    assert {latin.eta(t) for t in tets} == tets


def test_plain_inversion_blocks_coincide(pipe):
    # with an all-even phi image, s -> s^-1 gives back the same 300 squares
    dec = pipe.decomposition(latin.eta)
    assert dec.blocks[0].squares == dec.blocks[1].squares
    assert len(dec.remainder) == 744


def test_decomposition_with_conjugated_inversion(pipe):
    # s -> tau s^-1 tau^-1 swaps parity, so the four blocks separate
    dec = pipe.decomposition(latin.twisted_eta(pipe.tau))
    total = sum(len(b.squares) for b in dec.blocks) + len(dec.remainder)
    assert total == 1344
    assert len({s for b in dec.blocks for s in b.squares}) == 1200
    cert = latin.check_decomposition(dec, pipe.sigma3, 1344)
    assert cert.passed, cert.details
    assert cert.details["face_adjacent_components"] == 144
    assert latin.verify_even_square_characterization(dec, pipe.squares).passed


def test_decomposition_json(pipe):
    dec = pipe.decomposition()
    js = latin.decomposition_json(dec, pipe.squares)
    assert set(js) == {"phi", "eta_phi", "tau_phi", "tau_eta_phi", "remainder"}
    assert all(len(js[k]) == 300 for k in ("phi", "tau_phi"))
    assert latin.squares_json(pipe.squares[:1]) == [[list(p) for p in pipe.squares[0]]]


def test_transposed_reading_swaps_phi_and_its_inverse(pipe):
    # reading matrices column -> row replaces every permutation by its inverse
    dec = pipe.decomposition()
    transposed = latin.decompose(pipe.squares, [latin.eta(t) for t in pipe.phi_tetrahedra], pipe.tau)
    assert dec.summary() == transposed.summary()


def test_link_regularity(pipe):
    cert = latin.verify_link_regularity(pipe.S5, pipe.B2_icosa, jobs=2)
    assert cert.passed, cert.details
    assert (cert.details["link_vertices"], cert.details["link_simplices"]) == (44, 56)
