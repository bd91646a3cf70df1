"""Staged computation of every object the claims need, plus the claim registry."""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import bspace, chroma, latin, oracles
from .complexes import (
    Complex,
    ComplexError,
    build_600_cell,
    euler_characteristic,
    f_vector,
    grid_complex,
    icosahedron,
    is_isomorphic,
    k_cliques,
    link,
    quotient,
)
from .golden import (
    STANDARD_GENERATORS,
    find_24cell_subgroup,
    generate_icosian_group,
    pick_order5_element,
)

log = logging.getLogger(__name__)

CANONICAL_TAU = latin.from_cycle(1, 2)
ALTERNATIVE_TAU = latin.from_cycle(1, 2, 3, 4)


@dataclass(frozen=True)
class Choices:
    alt_p: bool = False
    alt_tau: bool = False


class Pipeline:
    """Lazily computed stages: golden -> complexes -> chroma -> bspace -> latin.

    With ``cache_dir`` set, the heavier complexes are stored as canonical
    Complex JSON under a directory named by the manifest hash, and reloaded
    on later runs; an unreadable or inconsistent file is recomputed.
    """

    def __init__(self, choices: Choices = Choices(), jobs: int = 1, cache_dir: Path | None = None):
        self.choices = choices
        self.jobs = jobs
        self.cache_root = Path(cache_dir) if cache_dir else None

    # -- golden --------------------------------------------------------------

    @cached_property
    def group(self):
        return generate_icosian_group(STANDARD_GENERATORS)

    @cached_property
    def T(self) -> frozenset[int]:
        return find_24cell_subgroup(self.group)

    @cached_property
    def p(self) -> int:
        return pick_order5_element(self.group, self.T, alternative=self.choices.alt_p)

    @property
    def tau(self) -> tuple[int, ...]:
        return ALTERNATIVE_TAU if self.choices.alt_tau else CANONICAL_TAU

    @cached_property
    def manifest(self) -> dict[str, Any]:
        G = self.group
        inputs = {
            "tool_version": __version__,
            "generators": [g.label() for g in STANDARD_GENERATORS],
            "group_order_hash": G.order_hash(),
            "T": sorted(self.T),
            "p": {"index": self.p, "coords": G.elements[self.p].label()},
            "tau": list(self.tau),
        }
        digest = hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()[:16]
        inputs["manifest_hash"] = digest
        inputs["cache_files"] = {
            name: f"cache/{digest}/{name}.json" for name in ("600cell", "B", "B2", "sigma3", "B2_icosa")
        }
        return inputs

    def _cached(self, name: str, build: Callable[[], Complex], check: Callable[[Complex], Any] = lambda c: c):
        if self.cache_root is None:
            return check(build())
        path = self.cache_root / self.manifest["cache_files"][name]
        digest_path = path.with_suffix(".sha256")
        if path.exists():
            try:
                if not digest_path.exists() or digest_path.read_text().strip() != _digest(path):
                    raise ValueError("digest mismatch")
                return check(Complex.load(path))
            except (ValueError, KeyError, TypeError, ComplexError, bspace.FunctorError) as exc:
                log.warning("cache %s unusable (%s); recomputing", path, exc)
        value = build()
        path.parent.mkdir(parents=True, exist_ok=True)
        value.save(path)
        digest_path.write_text(_digest(path) + "\n")
        return check(value)

    # -- complexes -----------------------------------------------------------

    @cached_property
    def cell600(self) -> Complex:
        def check(c: Complex) -> Complex:
            expected = tuple(tuple(e.label()) for e in self.group.elements)
            if c.vertex_labels != expected or len(c) != 600:
                raise ComplexError("cached 600-cell does not match the group")
            return c

        return self._cached("600cell", lambda: build_600_cell(self.group), check)

    @cached_property
    def identity(self) -> int:
        return self.group.identity

    @cached_property
    def involution(self) -> list[int]:
        return [self.group.neg(v) for v in range(len(self.group))]

    @cached_property
    def sigma3(self) -> Complex:
        return self._cached("sigma3", lambda: quotient(self.cell600, self.involution))

    @cached_property
    def icosahedron(self) -> Complex:
        return icosahedron()

    # -- chroma / bspace -----------------------------------------------------

    @cached_property
    def colorings(self) -> list[chroma.Partition]:
        return chroma.enumerate_colorings(self.cell600, 5)

    @cached_property
    def B(self) -> bspace.BComplex:
        return self._cached(
            "B",
            lambda: bspace.build_B(self.cell600, self.colorings, 5).complex,
            lambda c: bspace.BComplex.from_complex(c, self.cell600, 5),
        )

    @cached_property
    def B2(self) -> bspace.BComplex:
        return self._cached(
            "B2",
            lambda: bspace.build_B(self.B.complex, n=5).complex,
            lambda c: bspace.BComplex.from_complex(c, self.B.complex, 5),
        )

    @cached_property
    def B2_icosa(self) -> Complex:
        return self._cached("B2_icosa", lambda: bspace.build_B2(self.icosahedron, n=4)[1].complex)

    @cached_property
    def phi(self) -> bspace.PhiMap:
        return bspace.phi(self.cell600, self.B, self.B2)

    @cached_property
    def grid_coords(self) -> list[tuple[int, int]]:
        return bspace.grid_coordinates(self.B, self.group, self.T, self.p)

    @cached_property
    def perm_labels(self) -> list[tuple[int, ...]]:
        return bspace.permutation_labels(self.B2, self.grid_coords)

    # -- latin ---------------------------------------------------------------

    @cached_property
    def squares(self) -> list[latin.Square]:
        return latin.enumerate_latin_squares()

    @cached_property
    def S5(self) -> Complex:
        return latin.s5_complex(self.squares)

    @cached_property
    def B2_squares(self) -> list[latin.Square]:
        """Maximal simplices of B^2 read through the permutation labelling."""
        P = self.perm_labels
        return sorted(latin.square(P[w] for w in s) for s in self.B2.complex.maximal_simplices)

    @cached_property
    def phi_tetrahedra(self) -> list[latin.Square]:
        qmap = bspace.quotient_phi(self.phi, self.involution)
        P = self.perm_labels
        return sorted(latin.square(P[qmap[v]] for v in s) for s in self.sigma3.maximal_simplices)

    def decomposition(self, reflect=latin.eta) -> latin.Decomposition:
        return latin.decompose(self.squares, self.phi_tetrahedra, self.tau, reflect)

    def export(self, name: str) -> Complex:
        table = {
            "600cell": lambda: self.cell600,
            "sigma3": lambda: self.sigma3,
            "B": lambda: self.B.complex,
            "B2": lambda: self.B2.complex,
            "B2_icosa": lambda: self.B2_icosa,
            "grid": lambda: grid_complex(5),
        }
        if name not in table:
            raise KeyError(f"unknown complex {name!r}; valid names: {', '.join(table)}")
        return table[name]()


EXPORT_NAMES = ("600cell", "sigma3", "B", "B2", "B2_icosa", "grid")


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


# -- claims --------------------------------------------------------------------


@dataclass
class ClaimRecord:
    id: str
    description: str
    expected: Any
    observed: Any
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        # elapsed time is excluded so that reports are reproducible byte for byte
        return {
            "id": self.id,
            "description": self.description,
            "expected": self.expected,
            "observed": self.observed,
            "status": self.status,
            "details": self.details,
        }


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    check: Callable[[Pipeline], tuple[Any, Any, bool, dict]]


REGISTRY: dict[str, Claim] = {}


def claim(cid: str, description: str):
    def register(fn):
        REGISTRY[cid] = Claim(cid, description, fn)
        return fn

    return register


def run_claim(pipe: Pipeline, cid: str) -> ClaimRecord:
    c = REGISTRY[cid]
    start = time.perf_counter()
    try:
        expected, observed, passed, details = c.check(pipe)
    except Exception as exc:  # a crashing stage is a failed claim, not a crashed run
        log.exception("claim %s raised", cid)
        expected, observed, passed, details = None, f"error: {type(exc).__name__}: {exc}", False, {}
    elapsed = (time.perf_counter() - start) * 1000
    return ClaimRecord(cid, c.description, expected, observed, bool(passed), _jsonable(details), elapsed)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@claim("C01_colorings_600cell", "5-colourings of the 600-cell, as partitions")
def _c01(pipe: Pipeline):
    n = len(pipe.colorings)
    sizes = sorted({len(c) for part in pipe.colorings for c in part})
    return 10, n, n == 10, {"class_sizes": sizes}


@claim("C02_colorings_icosahedron", "4-colourings of the icosahedron, as partitions")
def _c02(pipe: Pipeline):
    n = len(chroma.enumerate_colorings(pipe.icosahedron, 4))
    link_n = len(chroma.enumerate_colorings(link(pipe.cell600, pipe.identity), 4))
    return 10, n, n == 10 and link_n == 10, {"identity_link_colorings": link_n}


@claim("C03_600cell_structure", "f-vector of the 600-cell and icosahedral vertex links")
def _c03(pipe: Pipeline):
    X = pipe.cell600
    fv = f_vector(X)
    links = sum(
        is_isomorphic(link(X, v), pipe.icosahedron) is not None for v in range(X.num_vertices)
    )
    degrees = sorted({a.bit_count() for a in X.adjacency()})
    ok = fv == [120, 720, 1200, 600] and links == 120
    return [120, 720, 1200, 600], fv, ok, {"icosahedral_links": links, "degrees": degrees}


@claim("C04_shell_extension", "5-colourings of a vertex star extend uniquely shell by shell")
def _c04(pipe: Pipeline):
    seeds = [pipe.identity, 0]
    reports = [chroma.verify_shell_extension(pipe.cell600, v, 5) for v in seeds]
    observed = [sorted({m for stage in r.multiplicities for m in stage}) for r in reports]
    ok = all(r.unique and r.shell_vertex_counts[-1] == 120 and r.seed_colorings == 10 for r in reports)
    return [[1], [1]], observed, ok, {"reports": [r.to_json() for r in reports]}


@claim("C05_B_grid", "B(600-cell) has 25 vertices, 10 simplices and is the 5x5 grid complex")
def _c05(pipe: Pipeline):
    cert = bspace.verify_grid(pipe.B)
    observed = [pipe.B.complex.num_vertices, len(pipe.B), "isomorphism" if cert.passed else "none"]
    return [25, 10, "isomorphism"], observed, cert.passed, cert.to_json()


@claim("C06_double_coset_colorings", "the colourings are the double-coset rows and columns p^i T p^j")
def _c06(pipe: Pipeline):
    built = bspace.double_coset_colorings(pipe.group, pipe.T, pipe.p)
    same = built == sorted(pipe.colorings)
    return True, same, same and len(built) == 10, {"p": pipe.p, "double_coset_colorings": len(built)}


@claim("C07_B2_latin_squares", "B^2(600-cell) is the complex of 1344 unlabelled Latin squares on 120 permutations")
def _c07(pipe: Pipeline):
    b2 = pipe.B2
    match = pipe.B2_squares == pipe.squares
    observed = [len(b2), b2.complex.num_vertices, match]
    ok = observed == [1344, 120, True] and sorted(set(pipe.perm_labels)) == latin.ALL_PERMS
    return [1344, 120, True], observed, ok, {"independent_enumeration": len(pipe.squares)}


@claim("C08_phi_two_to_one", "phi is two-to-one with fibres {v, -v}; image is the 60 even permutations")
def _c08(pipe: Pipeline):
    pm = pipe.phi
    fibers = pm.fibers()
    antipodal = all(
        len(f) == 2 and pipe.involution[f[0]] == f[1] for f in fibers.values()
    )
    image = sorted({pipe.perm_labels[w] for w in pm.assignment})
    even = [s for s in latin.ALL_PERMS if latin.parity(s) == 0]
    ok = antipodal and image == even and pm.is_simplicial()
    observed = [sorted(pm.fiber_sizes().items()), len(image), image == even]
    return [[[2, 60]], 60, True], _jsonable(observed), ok, {"simplicial": pm.is_simplicial()}


@claim("C09_quotient", "Sigma^3 = 600-cell/(v ~ -v): f-vector, links, B(Sigma^3) = B(600-cell), injective into B^2")
def _c09(pipe: Pipeline):
    Q = pipe.sigma3
    fv = f_vector(Q)
    chi = euler_characteristic(Q)
    links = sum(is_isomorphic(link(Q, v), pipe.icosahedron) is not None for v in range(Q.num_vertices))
    cert_b, _ = bspace.verify_quotient_B_equality(pipe.B, Q, pipe.involution)
    cert_i, image = bspace.verify_phi_injective_on_quotient(Q, pipe.phi, pipe.involution)
    squares = {sq for t in pipe.phi_tetrahedra for sq in latin.squares_containing(pipe.squares)[frozenset(t)]}
    observed = [fv, chi, links, cert_b.passed, cert_i.passed, len(squares)]
    expected = [[60, 360, 600, 300], 0, 60, True, True, 300]
    details = {"B_equality": cert_b.to_json(), "phi_injective": cert_i.to_json()}
    details["phi_injective"]["witness"] = None
    return expected, observed, observed == expected, details


@claim("C10_B3_fixed_point", "B^3(600-cell) is isomorphic to B(600-cell); B^4 to B^2")
def _c10(pipe: Pipeline):
    cert, b3, b4 = bspace.verify_B3_fixed_point(pipe.B, pipe.B2, pipe.perm_labels)
    observed = [len(b3), b3.complex.num_vertices, "isomorphism" if cert.passed else "none"]
    return [10, 25, "isomorphism"], observed, cert.passed, cert.to_json()


@claim("C11_decomposition", "4 disjoint copies of Sigma^3 (phi, eta.phi, tau.phi, tau.eta.phi) plus 72 + 72 even/odd squares")
def _c11(pipe: Pipeline):
    dec = pipe.decomposition(latin.eta)
    cert = latin.check_decomposition(dec, pipe.sigma3, len(pipe.squares))
    even = latin.verify_even_square_characterization(dec, pipe.squares)
    # Same construction with eta replaced by s -> tau s^-1 tau^-1, for diagnosis.
    twisted = pipe.decomposition(latin.twisted_eta(pipe.tau))
    cert_t = latin.check_decomposition(twisted, pipe.sigma3, len(pipe.squares))
    even_t = latin.verify_even_square_characterization(twisted, pipe.squares)
    observed = [
        sorted(cert.details["block_sizes"].values()),
        sum(cert.details["block_overlaps"].values()),
        len(dec.remainder),
        [len(c) for c in dec.components][:4],
    ]
    details = {
        "eta": {**_trim(cert.details), "even_characterization": even.details},
        "twisted_eta_diagnostic": {
            "passed": cert_t.passed and even_t.passed,
            **_trim(cert_t.details),
            "even_characterization": even_t.details,
        },
        "tau": latin.cycle_str(pipe.tau),
    }
    return [[300, 300, 300, 300], 0, 144, [72, 72]], observed, cert.passed and even.passed, details


def _trim(details: dict) -> dict:
    out = dict(details)
    for key in ("component_sizes", "component_shapes", "component_parities"):
        if len(out.get(key, [])) > 4:
            out[key] = f"{len(out[key])} entries"
    return out


@claim("C12_eta_automorphism", "eta: s -> s^-1 is an automorphism of S5; phi(Sigma^3) and eta(phi(Sigma^3)) share no square")
def _c12(pipe: Pipeline):
    sq = set(pipe.squares)
    image = {latin.eta(s) for s in pipe.squares}
    automorphism = image == sq
    dec = pipe.decomposition(latin.eta)
    base, mirrored = dec.blocks[0], dec.blocks[1]
    shared_squares = len(set(base.squares) & set(mirrored.squares))
    shared_tets = len(set(base.tetrahedra) & set(mirrored.tetrahedra))
    ok = automorphism and shared_squares == 0
    return [True, 0], [automorphism, shared_squares], ok, {"shared_tetrahedra": shared_tets}


@claim("C13_link_regularity", "all vertex links of S5 are isomorphic, and link(S5, id) = B^2(icosahedron)")
def _c13(pipe: Pipeline):
    cert = latin.verify_link_regularity(pipe.S5, pipe.B2_icosa, pipe.jobs)
    d = cert.details
    observed = [d["links_isomorphic_to_identity_link"], d["link_vertices"], d["link_simplices"], d["identity_link_iso_target"]]
    return [120, 44, 56, True], observed, cert.passed and observed == [120, 44, 56, True], d


@claim("C14_property_oracles", "search engines agree with brute-force oracles; 161280 labelled Latin squares")
def _c14(pipe: Pipeline):
    colour_ok = {
        name: chroma.enumerate_colorings(X, n) == oracles.brute_force_colorings(X, n)
        for name, X, n in oracles.coloring_corpus()
    }
    clique_ok = {
        name: k_cliques(adj, k) == oracles.naive_cliques(adj, k) for name, adj, k in oracles.clique_corpus()
    }
    labelled = latin.labeled_latin_count()
    observed = [all(colour_ok.values()), all(clique_ok.values()), labelled, len(pipe.squares) * 120]
    return [True, True, 161280, 161280], observed, observed == [True, True, 161280, 161280], {
        "colorings": colour_ok,
        "cliques": clique_ok,
    }


CORE = [f"C{k:02d}" for k in range(1, 14)]


def core_ids() -> list[str]:
    return [cid for cid in REGISTRY if cid[:3] in CORE]


@claim("C15_determinism", "a fresh run with a different worker count reproduces C01-C13 byte for byte")
def _c15(pipe: Pipeline):
    first = _serialise([run_claim(pipe, cid) for cid in core_ids()])
    other = Pipeline(pipe.choices, jobs=1 if pipe.jobs > 1 else 2)
    second = _serialise([run_claim(other, cid) for cid in core_ids()])
    same = first == second
    digest = hashlib.sha256(first.encode()).hexdigest()
    return True, same, same, {"sha256": digest, "jobs": [pipe.jobs, other.jobs]}


@claim("C16_choice_invariance", "C01-C13 under an alternative order-5 element p and an alternative odd tau")
def _c16(pipe: Pipeline):
    results = {}
    for label, choices in (("alt_p", Choices(alt_p=True)), ("alt_tau", Choices(alt_tau=True))):
        alt = Pipeline(choices, jobs=pipe.jobs)
        results[label] = {cid: run_claim(alt, cid).status for cid in core_ids()}
    base = {cid: run_claim(pipe, cid).status for cid in core_ids()}
    all_pass = all(s == "pass" for r in results.values() for s in r.values())
    same = all(r == base for r in results.values())
    failing = sorted({cid for r in results.values() for cid, s in r.items() if s != "pass"})
    return True, all_pass, all_pass, {"statuses": results, "same_statuses_as_this_run": same, "failing": failing}


def _serialise(records: list[ClaimRecord]) -> str:
    return json.dumps([r.to_json() for r in records], sort_keys=True, indent=2)


def resolve(selectors: list[str]) -> list[str]:
    """Expand ``all``, full ids and ``Cnn`` prefixes into registry ids, in registry order."""
    if not selectors or "all" in selectors:
        return list(REGISTRY)
    chosen = set()
    for sel in selectors:
        hits = [cid for cid in REGISTRY if cid == sel or cid.split("_")[0] == sel]
        if not hits:
            raise KeyError(f"unknown claim {sel!r}")
        chosen.update(hits)
    return [cid for cid in REGISTRY if cid in chosen]


def run(claim_ids: list[str], choices: Choices = Choices(), jobs: int = 1, out_dir: Path | None = None):
    pipe = Pipeline(choices, jobs=jobs, cache_dir=out_dir)
    records = []
    for cid in claim_ids:
        log.info("running %s", cid)
        records.append(run_claim(pipe, cid))
    return pipe, records
