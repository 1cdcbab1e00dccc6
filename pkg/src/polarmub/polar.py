"""The symplectic polar space W_{2N-1}(d).

Points are the projective points of PG(2N-1, d), normalised so the first
nonzero coordinate is 1, indexed in lexicographic coordinate order.
Generators (maximal totally isotropic subspaces) are found by breadth-first
extension of isotropic rref bases, deduplicated through the canonical rref
representative, and indexed in lexicographic order of their basis.  Point
sets are held as arbitrary-precision integer bitmasks over point indices,
so disjointness and coverage tests are single AND/OR operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import algebra
from .algebra import FieldSpec, Matrix, Vector
from .errors import (
    DimensionMismatch,
    NotDisjoint,
    NotIsotropic,
    NotRankTwo,
    PointOnGenerator,
    ScaleExceeded,
    WrongRank,
)

POINT_LIMIT = 100_000
GENERATOR_LIMIT = 100_000


def point_count(d: int, n: int) -> int:
    """d^{2N-1} + d^{2N-2} + ... + 1"""
    return sum(d**i for i in range(2 * n))


def generator_count(d: int, n: int) -> int:
    """(d^N + 1)(d^{N-1} + 1) ... (d + 1)"""
    total = 1
    for i in range(1, n + 1):
        total *= d**i + 1
    return total


@dataclass(frozen=True)
class PPoint:
    point_index: int
    vec: Vector


@dataclass(frozen=True)
class Generator:
    gen_index: int
    basis: Matrix
    point_mask: int


class PolarSpace:
    """W_{2N-1}(d) with its canonical alternating form and catalogs.

    Immutable after construction; the generator catalog is built lazily on
    first use.  Only prime orders are supported in this version.
    """

    def __init__(self, d: int, n: int):
        if n < 1:
            raise ValueError("rank n must be at least 1")
        self.field = FieldSpec(d, n)
        self.d = d
        self.n = n
        self.dim = 2 * n
        if point_count(d, n) > POINT_LIMIT:
            raise ScaleExceeded(f"too many points for W_{2*n-1}({d})")
        self.form: Matrix = self._build_form()
        self.points: tuple[Vector, ...] = tuple(
            v
            for v in itertools.product(range(d), repeat=self.dim)
            if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
        )
        self.point_index: dict[Vector, int] = {
            v: i for i, v in enumerate(self.points)
        }
        assert len(self.points) == point_count(d, n)
        self._generators: tuple[Generator, ...] | None = None
        self._gen_lookup: dict[Matrix, int] | None = None
        self._disjoint_adj: list[int] | None = None
        self._symplectic_mats: tuple[Matrix, ...] | None = None

    def __repr__(self):
        return f"PolarSpace(d={self.d}, n={self.n})"

    def _build_form(self) -> Matrix:
        J = [[0] * self.dim for _ in range(self.dim)]
        for i in range(0, self.dim, 2):
            J[i][i + 1] = 1
            J[i + 1][i] = self.d - 1
        return tuple(tuple(r) for r in J)

    # -- points

    @property
    def num_points(self) -> int:
        return len(self.points)

    def point(self, index: int) -> PPoint:
        return PPoint(index, self.points[index])

    def normalize(self, v: Vector) -> Vector:
        lead = next((x for x in v if x % self.d), None)
        if lead is None:
            raise ValueError("cannot normalize the zero vector")
        inv = pow(lead % self.d, -1, self.d)
        return tuple((x * inv) % self.d for x in v)

    def symp_form(self, u: Vector, v: Vector) -> int:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch(f"vectors must have length {self.dim}")
        total = 0
        for i in range(0, self.dim, 2):
            total += u[i] * v[i + 1] - u[i + 1] * v[i]
        return total % self.d

    def form_constraint(self, v: Vector) -> Vector:
        """Row c with c . x = F(x, v) for all x."""
        d = self.d
        out = [0] * self.dim
        for i in range(0, self.dim, 2):
            out[i] = v[i + 1] % d
            out[i + 1] = (-v[i]) % d
        return tuple(out)

    def span_vectors(self, basis: Matrix) -> list[Vector]:
        """All d^k vectors of the row space, zero included."""
        d = self.d
        vectors = [(0,) * self.dim] if not basis else [(0,) * len(basis[0])]
        for row in basis:
            scaled = [row]
            for c in range(2, d):
                scaled.append(tuple((c * x) % d for x in row))
            new = list(vectors)
            for s in scaled:
                new.extend(tuple((a + b) % d for a, b in zip(v, s)) for v in vectors)
            vectors = new
        return vectors

    def mask_of_span(self, basis: Matrix) -> int:
        """Bitmask of the projective points lying in the row space."""
        mask = 0
        index = self.point_index
        for v in self.span_vectors(basis):
            if any(v):
                lead = next(x for x in v if x)
                if lead == 1:  # already the normalized representative
                    mask |= 1 << index[v]
        return mask

    def point_indices(self, mask: int) -> list[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    # -- generators

    @property
    def generators(self) -> tuple[Generator, ...]:
        if self._generators is None:
            self._enumerate_generators()
        return self._generators

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def generator(self, index: int) -> Generator:
        return self.generators[index]

    def generator_by_basis(self, basis: Matrix) -> Generator:
        if self._gen_lookup is None:
            self._enumerate_generators()
        return self.generators[self._gen_lookup[basis]]

    def _enumerate_generators(self) -> None:
        d, n = self.d, self.n
        expected = generator_count(d, n)
        if expected > GENERATOR_LIMIT:
            raise ScaleExceeded(
                f"W_{2*n-1}({d}) has {expected} generators; enumeration refused"
            )
        spec = self.field
        level: set[Matrix] = {(p,) for p in self.points}
        for _ in range(n - 1):
            nxt: set[Matrix] = set()
            for basis in level:
                constraints = tuple(self.form_constraint(row) for row in basis)
                perp = algebra.kernel(constraints, self.dim, spec)
                for v in self.span_vectors(perp):
                    if not any(v):
                        continue
                    ext = algebra.rref_extend(basis, v, spec)
                    if ext is not None:
                        nxt.add(ext)
            level = nxt
        ordered = sorted(level)
        assert len(ordered) == expected, "generator census does not match"
        gens = []
        lookup = {}
        per_gen = (d**n - 1) // (d - 1)
        for i, basis in enumerate(ordered):
            mask = self.mask_of_span(basis)
            assert bin(mask).count("1") == per_gen
            gens.append(Generator(i, basis, mask))
            lookup[basis] = i
        self._generators = tuple(gens)
        self._gen_lookup = lookup


# --------------------------------------------------------------------------
# Operations on a space.
# --------------------------------------------------------------------------


def enumerate_generators(space: PolarSpace) -> tuple[Generator, ...]:
    """Complete, duplicate-free, lexicographically ordered generator catalog."""
    return space.generators


def symp_form(u: Vector, v: Vector, space: PolarSpace) -> int:
    return space.symp_form(u, v)


def perp(s: Matrix, space: PolarSpace) -> Matrix:
    """rref basis of the polarity image {v : F(v, w) = 0 for w in <s>}."""
    constraints = tuple(space.form_constraint(row) for row in s)
    return algebra.kernel(constraints, space.dim, space.field)


def nearest_generator(x: PPoint, g: Generator, space: PolarSpace) -> Generator:
    """The unique generator on x meeting g in an (N-2)-space: <x, x^perp ∩ g>."""
    idx = space.point_index[space.normalize(x.vec)]
    if (g.point_mask >> idx) & 1:
        raise PointOnGenerator("x lies on g")
    section = algebra.subspace_meet(perp((x.vec,), space), g.basis, space.field)
    basis = algebra.rref(section + (x.vec,), space.field)
    assert len(basis) == space.n
    return space.generator_by_basis(basis)


def hyperplane_map(g: Generator, g2: Generator, space: PolarSpace) -> dict[int, Matrix]:
    """x -> x^perp ∩ g2, a bijection from points of g onto hyperplanes of g2."""
    if g.point_mask & g2.point_mask:
        raise NotDisjoint("generators share a point")
    mapping = {}
    for idx in space.point_indices(g.point_mask):
        vec = space.points[idx]
        h = algebra.subspace_meet(perp((vec,), space), g2.basis, space.field)
        assert len(h) == space.n - 1
        mapping[idx] = h
    assert len(set(mapping.values())) == len(mapping)
    return mapping


def generators_through(s: Matrix, space: PolarSpace) -> list[Generator]:
    """The d + 1 generators containing a totally isotropic (N-2)-space."""
    basis = algebra.rref(s, space.field)
    if len(basis) != space.n - 1:
        raise WrongRank(f"expected rank {space.n - 1}, got {len(basis)}")
    for u, v in itertools.combinations(basis, 2):
        if space.symp_form(u, v):
            raise NotIsotropic("subspace is not totally isotropic")
    need = 0
    for row in basis:
        need |= 1 << space.point_index[row]
    out = [g for g in space.generators if g.point_mask & need == need]
    assert len(out) == space.d + 1
    return out


def common_transversals(gens: list[Generator], space: PolarSpace) -> list[Generator]:
    """All lines of W_3(d) meeting every member of a set of disjoint lines."""
    if space.n != 2:
        raise NotRankTwo("transversals are a rank-2 operation")
    masks = [g.point_mask for g in gens]
    for a, b in itertools.combinations(masks, 2):
        if a & b:
            raise NotDisjoint("input lines are not pairwise disjoint")
    member_ids = {g.gen_index for g in gens}
    out = [
        g
        for g in space.generators
        if g.gen_index not in member_ids
        and all(g.point_mask & m for m in masks)
    ]
    if len(gens) == 2:
        assert len(out) == space.d + 1
    return out


def double_perp_size(V: Generator, W: Generator, space: PolarSpace) -> int:
    """|({V,W}^perp)^perp|: 3 in order 2, 2 in odd order (antiregularity)."""
    inner = common_transversals([V, W], space)
    return len(common_transversals(inner, space))


def symplectic_group(space: PolarSpace) -> tuple[Matrix, ...]:
    """All matrices over F_d preserving the form.  Order-2 rank-2 case only."""
    if (space.d, space.n) != (2, 2):
        raise ScaleExceeded("symplectic group enumeration supported for W_3(2) only")
    if space._symplectic_mats is not None:
        return space._symplectic_mats
    J = space.form
    spec = space.field
    out = []
    for bits in range(1 << 16):
        rows = tuple(
            tuple((bits >> (4 * r + c)) & 1 for c in range(4)) for r in range(4)
        )
        MJ = algebra.mat_mul(rows, J, spec)
        MJMt = tuple(
            tuple(sum(MJ[i][k] * rows[j][k] for k in range(4)) % 2 for j in range(4))
            for i in range(4)
        )
        if MJMt == J:
            out.append(rows)
    space._symplectic_mats = tuple(out)
    return space._symplectic_mats
