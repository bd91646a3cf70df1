"""Exact arithmetic in Q(sqrt 5), quaternions over it, and the icosian group.

Everything here is exact. A :class:`GoldenScalar` is ``a + b*sqrt(5)`` with
rational ``a`` and ``b``; an :class:`Icosian` is a quaternion with golden
coordinates. The 120-element icosian group is generated by closure and then
handled through its Cayley table, so downstream code works on indices.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GoldenScalar:
    """The number ``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        # Fraction already keeps lowest terms with a positive denominator.
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, x) -> "GoldenScalar":
        if isinstance(x, GoldenScalar):
            return x
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        other = GoldenScalar.of(other)
        return GoldenScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = GoldenScalar.of(other)
        return GoldenScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return GoldenScalar.of(other) - self

    def __neg__(self):
        return GoldenScalar(-self.a, -self.b)

    def __mul__(self, other):
        other = GoldenScalar.of(other)
        return GoldenScalar(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GoldenScalar":
        """Galois conjugate ``a - b*sqrt(5)``."""
        return GoldenScalar(self.a, -self.b)

    def field_norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "GoldenScalar":
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("GoldenScalar division by zero")
        return GoldenScalar(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * GoldenScalar.of(other).inverse()

    def __rtruediv__(self, other):
        return GoldenScalar.of(other) * self.inverse()

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*r5"
        sign = "+" if self.b > 0 else "-"
        return f"({self.a}{sign}{abs(self.b)}*r5)"


ZERO = GoldenScalar()
ONE = GoldenScalar(Fraction(1))
HALF = GoldenScalar(Fraction(1, 2))
SQRT5 = GoldenScalar(Fraction(0), Fraction(1))
PHI = GoldenScalar(Fraction(1, 2), Fraction(1, 2))
PHI_INV = GoldenScalar(Fraction(-1, 2), Fraction(1, 2))


def scalar_arith(op: str, s: GoldenScalar, t: GoldenScalar | None = None) -> GoldenScalar:
    """Apply ``op`` (add, sub, mul, div, neg) to golden scalars."""
    if op == "neg":
        return -s
    if t is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "add":
        return s + t
    if op == "sub":
        return s - t
    if op == "mul":
        return s * t
    if op == "div":
        return s / t
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class Icosian:
    """Quaternion ``w + x i + y j + z k`` with golden coordinates."""

    w: GoldenScalar = ZERO
    x: GoldenScalar = ZERO
    y: GoldenScalar = ZERO
    z: GoldenScalar = ZERO

    def __mul__(self, other: "Icosian") -> "Icosian":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return Icosian(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self) -> "Icosian":
        return Icosian(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self) -> "Icosian":
        return Icosian(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> GoldenScalar:
        return self.dot(self)

    def dot(self, other: "Icosian") -> GoldenScalar:
        """Euclidean inner product of the coordinate vectors."""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def inverse(self) -> "Icosian":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero quaternion has no inverse")
        c = self.conjugate()
        inv = n.inverse()
        return Icosian(c.w * inv, c.x * inv, c.y * inv, c.z * inv)

    def coords(self) -> tuple[GoldenScalar, ...]:
        return (self.w, self.x, self.y, self.z)

    def key(self) -> tuple[Fraction, ...]:
        """The 8-tuple ``(a_w, b_w, a_x, ..., b_z)`` used for canonical ordering."""
        return tuple(c for s in self.coords() for c in (s.a, s.b))

    def label(self) -> list[str]:
        return [str(c) for c in self.key()]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coords()) + "]"


def quat(w=0, x=0, y=0, z=0) -> Icosian:
    return Icosian(*(GoldenScalar.of(c) for c in (w, x, y, z)))


def quat_mul(p: Icosian, q: Icosian) -> Icosian:
    return p * q


Q_ONE = quat(1)
Q_I = quat(0, 1)
Q_J = quat(0, 0, 1)
Q_K = quat(0, 0, 0, 1)

# du Val's coordinates: i together with (phi^-1 + i + phi j)/2 generate the group.
STANDARD_GENERATORS = (Q_I, Icosian(PHI_INV * HALF, HALF, PHI * HALF, ZERO))


class GroupClosureError(RuntimeError):
    pass


@dataclass
class IcosianGroup:
    """A finite group of unit icosians in canonical order, with its Cayley table."""

    elements: list[Icosian]
    index: dict[Icosian, int] = field(repr=False)
    table: list[list[int]] = field(repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def identity(self) -> int:
        return self.index[Q_ONE]

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def neg(self, g: int) -> int:
        return self.index[-self.elements[g]]

    def power(self, g: int, k: int) -> int:
        r = self.identity
        for _ in range(k % self.order(g)):
            r = self.table[r][g]
        return r

    def order(self, g: int) -> int:
        e, r, n = self.identity, g, 1
        while r != e:
            r, n = self.table[r][g], n + 1
        return n

    @cached_property
    def inverses(self) -> list[int]:
        e = self.identity
        return [row.index(e) for row in self.table]

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by the given element indices."""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.table[g][s]
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(seen)

    def right_coset(self, sub: Iterable[int], g: int) -> frozenset[int]:
        return frozenset(self.table[t][g] for t in sub)

    def left_coset(self, g: int, sub: Iterable[int]) -> frozenset[int]:
        return frozenset(self.table[g][t] for t in sub)

    def order_hash(self) -> str:
        """SHA-256 of the canonical element list; a fingerprint for run manifests."""
        text = "\n".join(",".join(e.label()) for e in self.elements)
        return hashlib.sha256(text.encode()).hexdigest()


def generate_icosian_group(generators: Sequence[Icosian], limit: int = 120) -> IcosianGroup:
    """Close ``generators`` under multiplication; elements come back in canonical order."""
    for g in generators:
        if g.norm() != ONE:
            raise ValueError(f"generator {g} is not a unit quaternion")
    seen = {Q_ONE}
    frontier = [Q_ONE]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g * s
                if h not in seen:
                    if len(seen) >= limit:
                        raise GroupClosureError(
                            f"closure exceeds {limit} elements at product {g} * {s} = {h}"
                        )
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    elements = sorted(seen, key=Icosian.key)
    index = {e: n for n, e in enumerate(elements)}
    return IcosianGroup(elements, index, _cayley_table(elements, index))


def _scaled(q: Icosian, scale: int) -> tuple[int, ...] | None:
    out = []
    for c in q.key():
        c *= scale
        if c.denominator != 1:
            return None
        out.append(c.numerator)
    return tuple(out)


def _cayley_table(elements: list[Icosian], index: dict[Icosian, int]) -> list[list[int]]:
    # Icosian coordinates lie in (1/4)Z[sqrt5]; multiplying by 4 keeps the
    # table computation in exact integers, far cheaper than Fraction arithmetic.
    scaled = [_scaled(q, 4) for q in elements]
    if any(s is None for s in scaled):
        return [[index[g * h] for h in elements] for g in elements]
    lookup = {s: n for n, s in enumerate(scaled)}

    def smul(a, b, c, d):
        # (a + b r5)(c + d r5)
        return a * c + 5 * b * d, a * d + b * c

    table = []
    for p in scaled:
        row = []
        pw, px, py, pz = (p[0], p[1]), (p[2], p[3]), (p[4], p[5]), (p[6], p[7])
        for q in scaled:
            qw, qx, qy, qz = (q[0], q[1]), (q[2], q[3]), (q[4], q[5]), (q[6], q[7])
            terms = (
                ((1, pw, qw), (-1, px, qx), (-1, py, qy), (-1, pz, qz)),
                ((1, pw, qx), (1, px, qw), (1, py, qz), (-1, pz, qy)),
                ((1, pw, qy), (-1, px, qz), (1, py, qw), (1, pz, qx)),
                ((1, pw, qz), (1, px, qy), (-1, py, qx), (1, pz, qw)),
            )
            prod = []
            for comp in terms:
                ra = rb = 0
                for sign, u, v in comp:
                    a, b = smul(u[0], u[1], v[0], v[1])
                    ra += sign * a
                    rb += sign * b
                # 16 * (true product); rescale to 4 * (true product)
                if ra % 4 or rb % 4:
                    raise GroupClosureError("product left the scaled lattice")
                prod += [ra // 4, rb // 4]
            row.append(lookup[tuple(prod)])
        table.append(row)
    return table


def icosian_group() -> IcosianGroup:
    return generate_icosian_group(STANDARD_GENERATORS)


def find_24cell_subgroup(G: IcosianGroup) -> frozenset[int]:
    """Binary tetrahedral subgroup: the closure of i, j and (1+i+j+k)/2."""
    omega = quat(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    try:
        gens = [G.index[q] for q in (Q_I, Q_J, omega)]
    except KeyError as exc:
        raise LookupError("binary tetrahedral generators missing from group") from exc
    T = G.closure(gens)
    if len(T) != 24 or any(G.neg(t) not in T for t in T):
        raise LookupError(f"24-cell subgroup search produced {len(T)} elements")
    return T


def order5_elements(G: IcosianGroup) -> list[int]:
    return [g for g in range(len(G)) if G.order(g) == 5]


def coset_partitions_ok(G: IcosianGroup, T: frozenset[int], p: int) -> bool:
    """True if the right cosets T p^k and left cosets p^k T each partition G."""
    for side in ("right", "left"):
        union: set[int] = set()
        for k in range(5):
            pk = G.power(p, k)
            c = G.right_coset(T, pk) if side == "right" else G.left_coset(pk, T)
            if union & c:
                return False
            union |= c
        if len(union) != len(G):
            return False
    return True


def pick_order5_element(G: IcosianGroup, T: frozenset[int], alternative: bool = False) -> int:
    """Smallest order-5 element in canonical order.

    With ``alternative`` set, return the smallest order-5 element that does not
    generate the same cyclic subgroup as the default choice.
    """
    candidates = [g for g in order5_elements(G) if coset_partitions_ok(G, T, g)]
    if not candidates:
        raise LookupError("no order-5 element with disjoint cosets")
    p = candidates[0]
    if not alternative:
        return p
    cyclic = G.closure([p])
    for g in candidates:
        if g not in cyclic:
            return g
    raise LookupError("no alternative order-5 element")
