"""Per-particle observables on exact state vectors, plus plane-wave
bookkeeping for the free sector.

Single-particle operators act on one slot of a product state: the
expectation of O on particle i contracts amplitudes over all state pairs
that agree on every other slot.  With an exact (rational-entry) operator
the result is a ring element; with a float-entry operator it is a float.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    NotNormalized,
    ZeroVectorInput,
)
from .exactnum import ONE, ZERO, RadicalRational, Rational
from .symmetry import Parity, StateVector, symmetrize


@dataclass(frozen=True)
class OneBodyOperator:
    """Square single-particle matrix; entries all Rational (exact=True)
    or all float (exact=False)."""

    entries: tuple[tuple, ...]
    exact: bool
    hermitian: bool = True

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("operator matrix must be square")
        if self.hermitian:
            for i in range(n):
                for j in range(i + 1, n):
                    if self.entries[i][j] != self.entries[j][i]:
                        raise ValueError("hermitian flag set but matrix is not symmetric")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    @classmethod
    def diagonal(cls, values: Sequence) -> "OneBodyOperator":
        """Exact diagonal operator, e.g. a single-particle Hamiltonian
        with caller-chosen rational level energies."""
        vals = [Fraction(v) for v in values]
        n = len(vals)
        entries = tuple(
            tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
        )
        return cls(entries, exact=True)


def box_position_operator(length: float, n_levels: int) -> OneBodyOperator:
    """Position matrix for a 1-D hard-wall box of the given length.

    Level index i stands for quantum number n = i + 1.  Diagonal entries
    are length/2; off-diagonal entries vanish for even n - m and are
    -8*length*m*n / (pi^2 (m^2 - n^2)^2) for odd n - m.
    """
    if n_levels < 1:
        raise ValueError("need at least one level")
    rows = []
    for i in range(n_levels):
        row = []
        for j in range(n_levels):
            m, n = i + 1, j + 1
            if m == n:
                row.append(length / 2.0)
            elif (m - n) % 2 == 0:
                row.append(0.0)
            else:
                row.append(-8.0 * length * m * n / (math.pi**2 * (m * m - n * n) ** 2))
        rows.append(tuple(row))
    return OneBodyOperator(tuple(rows), exact=False)


def _check_state(v: StateVector, op: OneBodyOperator, particle: int) -> None:
    if v.is_zero:
        raise ZeroVectorInput("expectation undefined on the zero vector")
    if not (0 <= particle < v.n_particles):
        raise ValueError(f"particle index {particle} out of range")
    if op.dim < v.basis_size:
        raise DimensionMismatch(f"operator dim {op.dim} < basis size {v.basis_size}")
    if v.norm_squared() != ONE:
        raise NotNormalized("state vector must have norm squared exactly 1")


def one_body_expectation(v: StateVector, op: OneBodyOperator, particle: int):
    """<v| O acting on `particle` |v>; exact when the operator is exact.

    Cross terms only connect product states that agree on every slot
    except `particle`, so terms are bucketed by their spectator levels.
    """
    _check_state(v, op, particle)
    buckets: dict[tuple, list[tuple[int, RadicalRational]]] = {}
    for state, amp in v.items():
        spectator = state[:particle] + state[particle + 1 :]
        buckets.setdefault(spectator, []).append((state[particle], amp))
    if op.exact:
        total = ZERO
        for group in buckets.values():
            for li, ai in group:
                for lj, aj in group:
                    e = op.entry(li, lj)
                    if e:
                        total = total + ai * aj * e
        return total
    total_f = 0.0
    for group in buckets.values():
        floats = [(lv, float(a)) for lv, a in group]
        for li, ai in floats:
            for lj, aj in floats:
                total_f += ai * aj * op.entry(li, lj)
    return total_f


def occupancy_weights(v: StateVector, particle: int) -> list[RadicalRational]:
    """Per-level probability weights of one particle: w_k = sum of squared
    amplitudes over states whose slot holds level k.  For a diagonal
    operator with energies e_k the expectation is sum_k w_k e_k, so equal
    weights prove the symbolic equal-share identity for any energies."""
    if v.is_zero:
        raise ZeroVectorInput("weights undefined on the zero vector")
    if not (0 <= particle < v.n_particles):
        raise ValueError(f"particle index {particle} out of range")
    weights = [ZERO] * v.basis_size
    for state, amp in v.items():
        k = state[particle]
        weights[k] = weights[k] + amp * amp
    return weights


def energy_sum_rule(v: StateVector, op: OneBodyOperator):
    """Sum of the per-particle expectations over all slots."""
    values = [one_body_expectation(v, op, i) for i in range(v.n_particles)]
    if op.exact:
        total = ZERO
        for val in values:
            total = total + val
        return total
    return math.fsum(values)


def position_expectation_symmetrized(
    levels: Sequence[int], length: float, particle: int, parity: Parity
) -> float:
    """<x_i> in the (anti)symmetrized box state built from 1-based
    quantum numbers `levels`."""
    internal = tuple(int(n) - 1 for n in levels)
    if any(i < 0 for i in internal):
        raise ValueError("box quantum numbers start at 1")
    res = symmetrize(internal, parity)
    if res.is_zero:
        raise ZeroVectorInput("antisymmetrization cancelled: repeated level")
    op = box_position_operator(length, max(internal) + 1)
    return one_body_expectation(res.vector, op, particle)


# -- free sector -------------------------------------------------------


@dataclass(frozen=True)
class PlaneWaveState:
    """N sharp momenta (rational components for exact identities), a mass,
    and a box volume for the 1/sqrt(V) normalization bookkeeping."""

    momenta: tuple[tuple[Fraction, ...], ...]
    mass: Fraction = Fraction(1)
    volume: Fraction = Fraction(1)

    def __post_init__(self):
        momenta = tuple(tuple(Fraction(c) for c in p) for p in self.momenta)
        if not momenta:
            raise ValueError("need at least one particle")
        d = len(momenta[0])
        if any(len(p) != d for p in momenta):
            raise ValueError("momentum vectors must share one dimension")
        object.__setattr__(self, "momenta", momenta)
        object.__setattr__(self, "mass", Fraction(self.mass))
        object.__setattr__(self, "volume", Fraction(self.volume))
        if self.mass <= 0 or self.volume <= 0:
            raise ValueError("mass and volume must be positive")

    @property
    def n_particles(self) -> int:
        return len(self.momenta)


def plane_wave_energy(pw: PlaneWaveState) -> Fraction:
    """Total kinetic energy sum |p_j|^2 / (2 m), exact."""
    return sum(sum(c * c for c in p) for p in pw.momenta) / (2 * pw.mass)


def wave_coefficients(pw: PlaneWaveState, h=1) -> tuple[tuple[Fraction, ...], ...]:
    """Linear phase coefficients a_j = p_j / h of the product plane wave."""
    h = Fraction(h)
    return tuple(tuple(c / h for c in p) for p in pw.momenta)


def energy_from_wave_coefficients(coeffs, mass, h=1) -> Fraction:
    """Kinetic energy recovered from phase coefficients:
    sum h^2 |a_j|^2 / (2 m).  Exact inverse of wave_coefficients."""
    h, mass = Fraction(h), Fraction(mass)
    return sum(sum(Fraction(c) * Fraction(c) for c in a) for a in coeffs) * h * h / (2 * mass)


def laplacian_condition_residual(linear_coeffs, quadratic_coeffs=None) -> Fraction:
    """Laplacian of the phase polynomial sum_j (a_j . q_j) [+ sum_j b_j . q_j^2].

    A pure linear phase gives exactly zero; the optional per-coordinate
    quadratic coefficients exist as a negative control (each unit
    coefficient contributes 2)."""
    for a in linear_coeffs:
        for c in a:
            Fraction(c)  # validates
    total = Fraction(0)
    if quadratic_coeffs is not None:
        for b in quadratic_coeffs:
            for c in b:
                total += 2 * Fraction(c)
    return total


def momentum_degeneracy(pw: PlaneWaveState) -> int:
    """Distinct orderings of the momentum multiset: N! / prod(n_j!)."""
    counts = Counter(pw.momenta)
    deg = math.factorial(pw.n_particles)
    for mult in counts.values():
        deg //= math.factorial(mult)
    return deg
