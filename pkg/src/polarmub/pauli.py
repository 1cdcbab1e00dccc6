"""Generalized Pauli operators on N d-level systems.

An operator is stored symbolically: exponent vectors a, b encode the
tensor product of single-system factors X^{a_j} Z^{b_j}, together with a
phase exponent (a power of omega = exp(2*pi*i/d) for odd d, a power of i
for d = 2).  The symplectic image interleaves a and b one tensor factor at
a time, so the canonical alternating form of the polar space is exactly
the commutation pairing.  Dense matrices are built on demand for oracle
checks and never cached on the operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import FieldSpec, Vector
from .errors import DimensionMismatch, NotAClass, ScaleExceeded
from .polar import Generator, PolarSpace

MAX_DENSE_DIM = 32


@dataclass(frozen=True)
class PauliOp:
    d: int
    a: Vector
    b: Vector
    phase_exp: int = 0

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise DimensionMismatch("a and b must have equal length")
        object.__setattr__(self, "a", tuple(x % self.d for x in self.a))
        object.__setattr__(self, "b", tuple(x % self.d for x in self.b))
        modulus = 4 if self.d == 2 else self.d
        object.__setattr__(self, "phase_exp", self.phase_exp % modulus)

    @property
    def num_systems(self) -> int:
        return len(self.a)

    @property
    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b) and self.phase_exp == 0

    def symplectic_image(self) -> Vector:
        out = []
        for aj, bj in zip(self.a, self.b):
            out.append(aj)
            out.append(bj)
        return tuple(out)


def op_from_image(v: Vector, d: int) -> PauliOp:
    """Canonical coset representative with symplectic image v.

    For odd d the representative X^a Z^b carries no phase and has order d;
    for d = 2 it is i^{a.b} X^a Z^b, which squares to the identity.
    """
    a = tuple(v[0::2])
    b = tuple(v[1::2])
    phase = 0
    if d == 2:
        phase = sum(x * y for x, y in zip(a, b)) % 4
    return PauliOp(d, a, b, phase)


@dataclass(frozen=True)
class CommutingClass:
    d: int
    ops: tuple[PauliOp, ...]
    generator_image: int


def commutes(p: PauliOp, q: PauliOp, space: PolarSpace) -> bool:
    """Symplectic criterion: zero form iff the dense matrices commute."""
    if p.d != q.d or p.d != space.d or p.num_systems != space.n:
        raise DimensionMismatch("operators do not live in this space")
    return space.symp_form(p.symplectic_image(), q.symplectic_image()) == 0


def _omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def _single_factor(d: int, a: int, b: int) -> np.ndarray:
    """X^a Z^b on one system: |s> -> omega^{b s} |s + a>."""
    w = _omega(d)
    m = np.zeros((d, d), dtype=complex)
    for s in range(d):
        m[(s + a) % d, s] = w ** (b * s)
    return m


def pauli_matrix(op: PauliOp, spec: FieldSpec) -> np.ndarray:
    """Dense matrix of the operator, phase included."""
    d = spec.d
    if d != op.d:
        raise DimensionMismatch("field order does not match the operator")
    dim = d**op.num_systems
    if dim > MAX_DENSE_DIM:
        raise ScaleExceeded(f"dense dimension {dim} exceeds {MAX_DENSE_DIM}")
    out = np.eye(1, dtype=complex)
    for aj, bj in zip(op.a, op.b):
        out = np.kron(out, _single_factor(d, aj, bj))
    if d == 2:
        out = 1j**op.phase_exp * out
    else:
        out = _omega(d) ** op.phase_exp * out
    return out


def class_from_generator(g: Generator, space: PolarSpace) -> CommutingClass:
    """The d^N - 1 canonical coset representatives over a generator.

    One operator per nonzero vector of the underlying rank-N subspace, in
    lexicographic vector order; commuting is inherited from total isotropy.
    """
    vecs = sorted(v for v in space.span_vectors(g.basis) if any(v))
    ops = tuple(op_from_image(v, space.d) for v in vecs)
    return CommutingClass(space.d, ops, g.gen_index)


def generator_from_class(c: CommutingClass, space: PolarSpace) -> Generator:
    """The generator spanned by the symplectic images of a class."""
    images = tuple(op.symplectic_image() for op in c.ops)
    basis = algebra.rref(images, space.field)
    if len(basis) != space.n:
        raise NotAClass(f"images span rank {len(basis)}, expected {space.n}")
    for u, v in itertools.combinations(basis, 2):
        if space.symp_form(u, v):
            raise NotAClass("images do not span a totally isotropic subspace")
    for img in images:
        if not algebra.row_space_contains(basis, img, space.field):
            raise NotAClass("an operator leaves the spanned subspace")
    if len(set(images)) != space.d**space.n - 1:
        raise NotAClass("class must hold one operator per nonzero vector")
    return space.generator_by_basis(basis)


def center_check(spec: FieldSpec) -> dict:
    """Matrix verification of the center and exponent of the Pauli group.

    Works over the plain coset representatives X^a Z^b.  Confirms that the
    scalars omega^k commute with everything, that no nonidentity
    representative is central, and the group exponent: d for odd d, 4 for
    d = 2 (where representatives square to +/- identity).
    """
    d, n = spec.d, spec.ext_degree
    dim = d**n
    if dim > MAX_DENSE_DIM:
        raise ScaleExceeded(f"dense dimension {dim} exceeds {MAX_DENSE_DIM}")
    mats = {}
    for exps in itertools.product(range(d), repeat=2 * n):
        a, b = exps[:n], exps[n:]
        mats[(a, b)] = pauli_matrix(PauliOp(d, a, b), spec)
    identity = np.eye(dim)
    tol = 1e-9

    def commute(m1, m2):
        return np.max(np.abs(m1 @ m2 - m2 @ m1)) < tol

    w = _omega(d)
    scalars_central = all(
        commute(w**k * identity, m) for k in range(d) for m in mats.values()
    )
    noncentral_ok = True
    for key, m in mats.items():
        if key == ((0,) * n, (0,) * n):
            continue
        if all(commute(m, other) for other in mats.values()):
            noncentral_ok = False
            break
    squares_minus_identity = 0
    exponent_ok = True
    for m in mats.values():
        if d == 2:
            sq = m @ m
            if np.max(np.abs(sq + identity)) < tol:
                squares_minus_identity += 1
            elif np.max(np.abs(sq - identity)) >= tol:
                exponent_ok = False
            if np.max(np.abs(sq @ sq - identity)) >= tol:
                exponent_ok = False
        else:
            p = np.linalg.matrix_power(m, d)
            if np.max(np.abs(p - identity)) >= tol:
                exponent_ok = False
    x1 = mats[((1,) + (0,) * (n - 1), (0,) * n)]
    z1 = mats[((0,) * n, (1,) + (0,) * (n - 1))]
    return {
        "d": d,
        "n": n,
        "center_order": 4 if d == 2 else d,
        "scalars_central": scalars_central,
        "no_noncentral_rep": noncentral_ok,
        "exponent": 4 if d == 2 else d,
        "exponent_ok": exponent_ok,
        "squares_to_minus_identity": squares_minus_identity,
        "nonabelian": not commute(x1, z1),
    }
