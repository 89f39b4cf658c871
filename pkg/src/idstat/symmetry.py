"""Sparse exact state vectors for N identical particles and the
permutation-adapted combinations built from them.

A vector maps product states (tuples of level indices, slot i = particle i)
to RadicalRational amplitudes.  Everything here is exact: norms, inner
products, projections and residuals are ring elements, so "equals zero"
means the amplitude map is empty, not "small".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .errors import (
    BasisNotOrthonormal,
    CapacityExceeded,
    NotRepresentable,
    RequiresDistinctLevels,
    ZeroVectorInput,
)
from .exactnum import ONE, ZERO, RadicalRational, rsqrt_of_rational
from .perm import MAX_ENUM_N, Permutation, enumerate_permutations

Parity = Literal["S", "A"]


def _check_levels(levels: Sequence[int]) -> tuple[int, ...]:
    t = tuple(levels)
    for lv in t:
        if not isinstance(lv, int) or lv < 0:
            raise ValueError(f"level indices must be nonnegative ints, got {lv!r}")
    return t


class StateVector:
    """Sparse map from product states to exact amplitudes."""

    __slots__ = ("n_particles", "basis_size", "_amps")

    def __init__(self, n_particles: int, amps: dict | None = None, basis_size: int = 0):
        self.n_particles = n_particles
        clean: dict[tuple, RadicalRational] = {}
        top = -1
        for state, amp in (amps or {}).items():
            state = _check_levels(state)
            if len(state) != n_particles:
                raise ValueError(f"state {state} has wrong particle count")
            amp = RadicalRational.of(amp)
            if not amp.is_zero:
                clean[state] = amp
                top = max(top, max(state, default=-1))
        self._amps = clean
        self.basis_size = max(basis_size, top + 1)

    # -- inspection ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._amps

    def amplitude(self, state: Sequence[int]) -> RadicalRational:
        return self._amps.get(tuple(state), ZERO)

    def items(self) -> list[tuple[tuple, RadicalRational]]:
        """Terms sorted lexicographically by product state."""
        return sorted(self._amps.items())

    def support(self) -> list[tuple]:
        return sorted(self._amps)

    def __len__(self) -> int:
        return len(self._amps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.n_particles == other.n_particles and self._amps == other._amps

    def __hash__(self):
        return hash((self.n_particles, tuple(self.items())))

    # -- linear structure ------------------------------------------------

    def __add__(self, other: "StateVector") -> "StateVector":
        if self.n_particles != other.n_particles:
            raise ValueError("particle counts differ")
        amps = dict(self._amps)
        for s, a in other._amps.items():
            amps[s] = amps.get(s, ZERO) + a
        return StateVector(self.n_particles, amps, max(self.basis_size, other.basis_size))

    def __sub__(self, other: "StateVector") -> "StateVector":
        return self + other.scale(RadicalRational.of(-1))

    def __neg__(self) -> "StateVector":
        return self.scale(RadicalRational.of(-1))

    def scale(self, c) -> "StateVector":
        c = RadicalRational.of(c)
        return StateVector(
            self.n_particles, {s: a * c for s, a in self._amps.items()}, self.basis_size
        )

    def norm_squared(self) -> RadicalRational:
        total = ZERO
        for a in self._amps.values():
            total = total + a * a
        return total

    def normalized(self) -> "StateVector":
        if self.is_zero:
            raise ZeroVectorInput("cannot normalize the zero vector")
        n2 = self.norm_squared()
        norm = rsqrt_of_rational(n2.as_rational())
        return StateVector(
            self.n_particles, {s: a / norm for s, a in self._amps.items()}, self.basis_size
        )

    def permuted(self, p: Permutation) -> "StateVector":
        return StateVector(
            self.n_particles,
            {p.apply(s): a for s, a in self._amps.items()},
            self.basis_size,
        )

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n_particles,
            "terms": [{"state": list(s), "amp": a.to_json()} for s, a in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StateVector":
        amps = {
            tuple(t["state"]): RadicalRational.from_json(t["amp"]) for t in data["terms"]
        }
        return cls(int(data["n"]), amps)

    def __repr__(self) -> str:
        body = " ".join(f"{s}:{a}" for s, a in self.items())
        return f"StateVector<{self.n_particles}>({body or '0'})"


def product_state_vector(levels: Sequence[int], basis_size: int = 0) -> StateVector:
    """The bare product state |l_1 ... l_N> as a unit vector."""
    levels = _check_levels(levels)
    return StateVector(len(levels), {levels: ONE}, basis_size)


def inner_product(u: StateVector, v: StateVector) -> RadicalRational:
    """Exact <u|v>; amplitudes are real so no conjugation is needed."""
    if u.n_particles != v.n_particles:
        raise ValueError("particle counts differ")
    small, big = (u, v) if len(u) <= len(v) else (v, u)
    total = ZERO
    for s, a in small._amps.items():
        b = big._amps.get(s)
        if b is not None:
            total = total + a * b
    return total


def permute_vector(p: Permutation, v: StateVector) -> StateVector:
    return v.permuted(p)


@dataclass(frozen=True)
class SymmetrizeResult:
    """Output of symmetrize: the unit vector (or the zero vector when the
    alternating sum cancels), plus the squared norm of the raw
    1/sqrt(N!)-weighted sum before renormalization."""

    vector: StateVector
    raw_norm_squared: RadicalRational
    is_zero: bool


def symmetrize_raw(levels: Sequence[int], parity: Parity) -> StateVector:
    """(1/sqrt(N!)) * sum_P (+-1)^P P|levels>, not renormalized."""
    levels = _check_levels(levels)
    n = len(levels)
    if n > MAX_ENUM_N:
        raise CapacityExceeded(f"symmetrization capped at N = {MAX_ENUM_N}")
    if parity not in ("S", "A"):
        raise ValueError(f"parity must be 'S' or 'A', got {parity!r}")
    counts: dict[tuple, int] = {}
    for p in enumerate_permutations(n):
        s = p.apply(levels)
        w = 1 if parity == "S" else p.sign()
        counts[s] = counts.get(s, 0) + w
    scale = rsqrt_of_rational(Fraction(1, math.factorial(n)))
    return StateVector(n, {s: scale * k for s, k in counts.items() if k})


def symmetrize(levels: Sequence[int], parity: Parity) -> SymmetrizeResult:
    """Symmetrized (parity 'S') or antisymmetrized ('A') unit vector.

    Repeated levels under 'A' cancel to the zero vector, which is reported
    with is_zero rather than raised.  When repeats make the raw norm differ
    from 1 the vector is renormalized and the raw norm squared kept.
    """
    raw = symmetrize_raw(levels, parity)
    n2 = raw.norm_squared()
    if raw.is_zero:
        return SymmetrizeResult(raw, ZERO, True)
    vec = raw if n2 == ONE else raw.normalized()
    return SymmetrizeResult(vec, n2, False)


# Coefficient patterns for the N = 3 distinct-level orbit basis.  Keys are
# 1-based slot images: image (i, j, k) is the product state whose slot i-1
# holds the first input level, slot j-1 the second, slot k-1 the third.
# Values are integer numerators; each pattern is scaled by sqrt(norm_sq)
# with norm_sq listed first.  The antisymmetric member is oriented so the
# input-ordered product state carries a NEGATIVE amplitude; symmetrize(.., "A")
# uses the opposite (identity-positive) orientation.
_BASIS_PATTERNS: dict[str, tuple[Fraction, dict[tuple[int, int, int], int]]] = {
    "sym": (
        Fraction(1, 6),
        {(1, 2, 3): 1, (1, 3, 2): 1, (2, 1, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (3, 2, 1): 1},
    ),
    "antisym": (
        Fraction(1, 6),
        {(1, 2, 3): -1, (1, 3, 2): 1, (2, 1, 3): 1, (2, 3, 1): -1, (3, 1, 2): -1, (3, 2, 1): 1},
    ),
    "s1": (
        Fraction(1, 12),
        {(1, 2, 3): 2, (1, 3, 2): -1, (2, 1, 3): 2, (2, 3, 1): -1, (3, 1, 2): -1, (3, 2, 1): -1},
    ),
    "s2": (
        Fraction(1, 4),
        {(1, 3, 2): 1, (2, 3, 1): -1, (3, 1, 2): 1, (3, 2, 1): -1},
    ),
    "s1p": (
        Fraction(1, 12),
        {(1, 2, 3): 2, (1, 3, 2): 1, (2, 1, 3): -2, (2, 3, 1): -1, (3, 1, 2): -1, (3, 2, 1): 1},
    ),
    "s2p": (
        Fraction(1, 4),
        {(1, 3, 2): 1, (2, 3, 1): 1, (3, 1, 2): -1, (3, 2, 1): -1},
    ),
}

#: Basis member order used everywhere a six-vector decomposition is reported.
ORBIT_BASIS_NAMES = ("sym", "antisym", "s1", "s2", "s1p", "s2p")
MIXED_BASIS_NAMES = ("s1", "s2", "s1p", "s2p")


def _pattern_vector(name: str, levels: tuple[int, ...]) -> StateVector:
    norm_sq, coeffs = _BASIS_PATTERNS[name]
    scale = rsqrt_of_rational(norm_sq)
    amps: dict[tuple, RadicalRational] = {}
    for image, k in coeffs.items():
        state = [0, 0, 0]
        for m in range(3):
            state[image[m] - 1] = levels[m]
        amps[tuple(state)] = scale * k
    return StateVector(3, amps)


def _require_three_distinct(levels: Sequence[int]) -> tuple[int, ...]:
    levels = _check_levels(levels)
    if len(levels) != 3 or len(set(levels)) != 3:
        raise RequiresDistinctLevels("defined for exactly three pairwise distinct levels")
    return levels


def mixed_basis_n3(levels: Sequence[int]) -> tuple[StateVector, StateVector, StateVector, StateVector]:
    """The two mixed-symmetry pairs (s1, s2) and (s1', s2') for three
    distinct levels; each pair spans a permutation-stable plane."""
    levels = _require_three_distinct(levels)
    return tuple(_pattern_vector(name, levels) for name in MIXED_BASIS_NAMES)


def orbit_basis_n3(levels: Sequence[int]) -> tuple[StateVector, ...]:
    """Orthonormal six-vector basis of the distinct-level orbit span:
    symmetric, antisymmetric (oriented negative on the input ordering),
    then the four mixed members."""
    levels = _require_three_distinct(levels)
    return tuple(_pattern_vector(name, levels) for name in ORBIT_BASIS_NAMES)


def decompose(
    v: StateVector, basis: Sequence[StateVector]
) -> tuple[list[RadicalRational], StateVector]:
    """Exact coefficients of v in an orthonormal basis plus the residual.

    The basis is verified orthonormal exactly first; a residual of zero
    (empty map) certifies the decomposition is complete.
    """
    basis = list(basis)
    for i, b in enumerate(basis):
        for j in range(i, len(basis)):
            expected = ONE if i == j else ZERO
            if inner_product(b, basis[j]) != expected:
                raise BasisNotOrthonormal(f"members {i} and {j} fail exact orthonormality")
    coeffs = [inner_product(b, v) for b in basis]
    residual = v
    for c, b in zip(coeffs, basis):
        residual = residual - b.scale(c)
    return coeffs, residual


def exchange_degeneracy_dimension(levels: Sequence[int]) -> int:
    """Number of distinct product states in the permutation orbit:
    N! / prod(multiplicity!)."""
    levels = _check_levels(levels)
    dim = math.factorial(len(levels))
    for lv in set(levels):
        dim //= math.factorial(levels.count(lv))
    return dim


class SymmetryTag(str, Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    MIXED = "mixed"
    NONE = "none"


@dataclass(frozen=True)
class SymmetryClass:
    tag: SymmetryTag
    pair: int | None = None       # 1 for span{s1,s2}, 2 for span{s1',s2'}
    member: int | None = None     # set when collinear with a canonical member

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "pair": self.pair, "member": self.member}


def classify_symmetry(v: StateVector) -> SymmetryClass:
    """Tag a vector symmetric/antisymmetric under every transposition, a
    member of an N = 3 mixed-symmetry stable plane, or none of those."""
    if v.is_zero:
        raise ZeroVectorInput("cannot classify the zero vector")
    n = v.n_particles
    if n < 2:
        return SymmetryClass(SymmetryTag.SYMMETRIC)
    swaps = [
        Permutation.transposition(n, i, j) for i in range(n) for j in range(i + 1, n)
    ]
    if all(v.permuted(p) == v for p in swaps):
        return SymmetryClass(SymmetryTag.SYMMETRIC)
    if all(v.permuted(p) == -v for p in swaps):
        return SymmetryClass(SymmetryTag.ANTISYMMETRIC)
    if n == 3:
        anchor = sorted(v.support()[0])
        if len(set(anchor)) == 3 and all(sorted(s) == anchor for s in v.support()):
            basis = orbit_basis_n3(tuple(anchor))
            coeffs, residual = decompose(v, basis)
            if residual.is_zero:
                live = [i for i, c in enumerate(coeffs) if not c.is_zero]
                for pair, idxs in ((1, {2, 3}), (2, {4, 5})):
                    if set(live) <= idxs:
                        member = None
                        if len(live) == 1:
                            member = 1 if live[0] in (2, 4) else 2
                        return SymmetryClass(SymmetryTag.MIXED, pair, member)
    return SymmetryClass(SymmetryTag.NONE)


def symmetric_antisymmetric_dimensions(levels: Sequence[int]) -> tuple[int, int]:
    """Dimensions of the symmetric and antisymmetric sectors inside the
    span of the permutation orbit of `levels`, computed by projecting every
    distinct ordering and checking exact collinearity of the images."""
    levels = _check_levels(levels)
    orbit = sorted({p.apply(levels) for p in enumerate_permutations(len(levels))})
    dims = []
    for parity in ("S", "A"):
        images = [symmetrize_raw(s, parity) for s in orbit]
        images = [u for u in images if not u.is_zero]
        if not images:
            dims.append(0)
            continue
        u0 = images[0]
        g00 = inner_product(u0, u0)
        for u in images[1:]:
            # collinearity without division: u <u0|u0> == u0 <u0|u>
            if u.scale(g00) != u0.scale(inner_product(u0, u)):
                raise NotRepresentable("projector images unexpectedly span > 1 dimension")
        dims.append(1)
    return tuple(dims)
