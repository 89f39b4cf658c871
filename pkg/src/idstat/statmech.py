"""Spectra, occupation enumeration, canonical and grand partition sums,
and the extensivity report.

Statistics kinds: Bose-Einstein ("be"), Fermi-Dirac ("fd"), and two
Boltzmann normalizations, z1^N / N^N ("mb-nn", the per-particle-subvolume
convention that makes the continuum free energy extensive) and z1^N / N!
("mb-fact", the conventional Gibbs correction).  Thermodynamic arithmetic
runs in log space wherever overflow threatens.
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, Sequence

from .errors import (
    BoseDivergence,
    CapacityExceeded,
    CutoffTooLarge,
    InputError,
)

MAX_PARTICLES = 12      # exhaustive occupation enumeration cap
MAX_LEVELS = 20         # level count cap for enumeration
MAX_RECURSION_N = 50    # cap for the one-body-trace recursion
MAX_CUTOFF = 10**4      # spectrum length cap

PLANCK_H_SI = 6.62607015e-34
BOLTZMANN_K_SI = 1.380649e-23

FREE_ENERGY_NOTE = (
    "free energy convention: F = -kT*ln(Z); "
    "the opposite printed sign is treated as a typo and flagged as a noted discrepancy"
)


class Statistics(str, Enum):
    BE = "be"
    FD = "fd"
    MB_NN = "mb-nn"
    MB_FACT = "mb-fact"

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InputError(
                f"unknown statistics {text!r}; expected one of "
                + ", ".join(s.value for s in cls)
            ) from None

    @property
    def quantum(self) -> bool:
        return self in (Statistics.BE, Statistics.FD)


@dataclass(frozen=True)
class Spectrum:
    """Finite ascending list of single-particle energies; degenerate
    levels appear as repeated entries."""

    energies: tuple[float, ...]
    source: str = "levels"

    def __post_init__(self):
        if not self.energies:
            raise InputError("spectrum must contain at least one level")
        energies = tuple(float(e) for e in self.energies)
        for e in energies:
            if not math.isfinite(e):
                raise InputError("spectrum energies must be finite")
        if list(energies) != sorted(energies):
            energies = tuple(sorted(energies))
        object.__setattr__(self, "energies", energies)

    @property
    def offset(self) -> float:
        """Ground-state energy; energies - offset is nonnegative."""
        return self.energies[0]

    def shifted(self) -> tuple[float, ...]:
        return tuple(e - self.offset for e in self.energies)

    def __len__(self) -> int:
        return len(self.energies)


def _check_cutoff(cutoff: int) -> int:
    cutoff = int(cutoff)
    if cutoff < 1:
        raise InputError("cutoff must be at least 1")
    if cutoff > MAX_CUTOFF:
        raise CutoffTooLarge(f"cutoff {cutoff} exceeds cap {MAX_CUTOFF}")
    return cutoff


def spectrum_from_levels(values: Sequence[float], source: str = "levels") -> Spectrum:
    if len(values) > MAX_CUTOFF:
        raise CutoffTooLarge(f"{len(values)} levels exceed cap {MAX_CUTOFF}")
    return Spectrum(tuple(float(v) for v in values), source)


def dimensionless_spectrum(cutoff: int) -> Spectrum:
    """e_n = n^2 for n = 1..cutoff."""
    cutoff = _check_cutoff(cutoff)
    return Spectrum(tuple(float(n * n) for n in range(1, cutoff + 1)), "dimensionless")


def box1d_spectrum(cutoff: int, length: float = 1.0, mass: float = 1.0, h: float = 1.0) -> Spectrum:
    """1-D hard-wall box: e_n = n^2 h^2 / (8 m L^2)."""
    cutoff = _check_cutoff(cutoff)
    scale = h * h / (8.0 * mass * length * length)
    return Spectrum(
        tuple(scale * n * n for n in range(1, cutoff + 1)),
        f"box1d(L={length},m={mass},h={h})",
    )


def box3d_spectrum(cutoff: int, length: float = 1.0, mass: float = 1.0, h: float = 1.0) -> Spectrum:
    """3-D cubic box: e = (h^2 / 8 m L^2)(nx^2+ny^2+nz^2), degeneracies
    expanded, lowest `cutoff` levels kept."""
    cutoff = _check_cutoff(cutoff)
    bound = 2
    while True:
        # every triple with nx^2+ny^2+nz^2 <= bound^2 + 2 has all n <= bound,
        # so shells up to that value are complete
        complete = bound * bound + 2
        sums = sorted(
            nx * nx + ny * ny + nz * nz
            for nx, ny, nz in itertools.product(range(1, bound + 1), repeat=3)
            if nx * nx + ny * ny + nz * nz <= complete
        )
        if len(sums) >= cutoff:
            break
        bound *= 2
    scale = h * h / (8.0 * mass * length * length)
    return Spectrum(
        tuple(scale * s for s in sums[:cutoff]),
        f"box3d(L={length},m={mass},h={h})",
    )


def spectrum_from_csv(path: str) -> Spectrum:
    """CSV with header column `energy`, optional `degeneracy` (expanded)."""
    energies: list[float] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "energy" not in reader.fieldnames:
            raise InputError(f"{path}: missing required CSV column 'energy'")
        for row in reader:
            try:
                e = float(row["energy"])
                g = int(row.get("degeneracy") or 1)
            except (TypeError, ValueError) as exc:
                raise InputError(f"{path}: bad spectrum row {row}") from exc
            if g < 1:
                raise InputError(f"{path}: degeneracy must be positive, got {g}")
            energies.extend([e] * g)
    if len(energies) > MAX_CUTOFF:
        raise CutoffTooLarge(f"{path}: {len(energies)} levels exceed cap {MAX_CUTOFF}")
    return spectrum_from_levels(energies, f"file:{path}")


# -- occupation enumeration ---------------------------------------------


@dataclass(frozen=True)
class OccupationState:
    """Occupation numbers as sorted (level, count>0) pairs."""

    counts: tuple[tuple[int, int], ...]

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_vector(self, n_levels: int) -> tuple[int, ...]:
        vec = [0] * n_levels
        for lv, c in self.counts:
            vec[lv] = c
        return tuple(vec)

    def energy(self, spectrum: Spectrum) -> float:
        return math.fsum(c * spectrum.energies[lv] for lv, c in self.counts)


def _check_enumeration_caps(n_levels: int, n_particles: int) -> None:
    if n_particles > MAX_PARTICLES:
        raise CapacityExceeded(f"occupation enumeration capped at N = {MAX_PARTICLES}")
    if n_levels > MAX_LEVELS:
        raise CapacityExceeded(f"occupation enumeration capped at {MAX_LEVELS} levels")
    if n_levels < 1 or n_particles < 0:
        raise InputError("need n_levels >= 1 and n_particles >= 0")


def enumerate_occupations(
    n_levels: int, n_particles: int, stat: Statistics
) -> Iterator[OccupationState]:
    """All Fock occupation vectors with the given total: 0/1 per level for
    FD, unrestricted for BE (and both MB kinds, which share BE support)."""
    _check_enumeration_caps(n_levels, n_particles)
    if stat is Statistics.FD:
        if n_particles > n_levels:
            return
        for chosen in itertools.combinations(range(n_levels), n_particles):
            yield OccupationState(tuple((lv, 1) for lv in chosen))
    else:
        for combo in itertools.combinations_with_replacement(range(n_levels), n_particles):
            counts = {}
            for lv in combo:
                counts[lv] = counts.get(lv, 0) + 1
            yield OccupationState(tuple(sorted(counts.items())))


def occupation_count(n_levels: int, n_particles: int, stat: Statistics) -> int:
    """Closed-form state count: C(K, N) for FD, C(K+N-1, N) otherwise."""
    if stat is Statistics.FD:
        return math.comb(n_levels, n_particles)
    return math.comb(n_levels + n_particles - 1, n_particles)


# -- canonical partition functions ----------------------------------------


def single_particle_z(spectrum: Spectrum, beta: float) -> float:
    return math.fsum(math.exp(-beta * e) for e in spectrum.energies)


def canonical_ln_Z(spectrum: Spectrum, n_particles: int, beta: float, stat: Statistics) -> float:
    """ln Z; BE/FD by exhaustive occupation sum, MB kinds in closed form."""
    if beta <= 0:
        raise InputError("beta must be positive")
    if n_particles == 0:
        return 0.0
    if stat.quantum:
        return math.log(canonical_Z(spectrum, n_particles, beta, stat))
    ln_z1 = math.log(single_particle_z(spectrum, beta))
    if stat is Statistics.MB_NN:
        return n_particles * ln_z1 - n_particles * math.log(n_particles)
    return n_particles * ln_z1 - math.lgamma(n_particles + 1)


def canonical_Z(spectrum: Spectrum, n_particles: int, beta: float, stat: Statistics) -> float:
    """Canonical Z at integer particle number."""
    if beta <= 0:
        raise InputError("beta must be positive")
    if n_particles == 0:
        return 1.0
    if stat.quantum:
        return math.fsum(
            math.exp(-beta * occ.energy(spectrum))
            for occ in enumerate_occupations(len(spectrum), n_particles, stat)
        )
    return math.exp(canonical_ln_Z(spectrum, n_particles, beta, stat))


def canonical_Z_recursive(
    spectrum: Spectrum, n_particles: int, beta: float, stat: Statistics
) -> float:
    """Independent route for BE/FD: Z_N = (1/N) sum_{k=1..N} (+-1)^{k+1}
    z(k beta) Z_{N-k}, with + for BE and - for FD."""
    if not stat.quantum:
        raise InputError("recursion applies to BE/FD only")
    if n_particles > MAX_RECURSION_N:
        raise CapacityExceeded(f"recursion capped at N = {MAX_RECURSION_N}")
    sign = 1.0 if stat is Statistics.BE else -1.0
    z_powers = [0.0] + [single_particle_z(spectrum, k * beta) for k in range(1, n_particles + 1)]
    Z = [1.0] + [0.0] * n_particles
    for n in range(1, n_particles + 1):
        acc = 0.0
        for k in range(1, n + 1):
            acc += (sign ** (k + 1)) * z_powers[k] * Z[n - k]
        Z[n] = acc / n
    return Z[n_particles]


# -- grand canonical --------------------------------------------------------


def grand_ln_Xi(spectrum: Spectrum, beta: float, mu: float, stat: Statistics) -> float:
    """ln of the grand partition product over levels.

    BE requires mu strictly below the lowest level; at or above it the
    geometric occupation series diverges."""
    if beta <= 0:
        raise InputError("beta must be positive")
    if not stat.quantum:
        raise InputError("grand product defined here for BE/FD only")
    total = 0.0
    for e in spectrum.energies:
        x = math.exp(-beta * (e - mu))
        if stat is Statistics.BE:
            if x >= 1.0:
                raise BoseDivergence(
                    f"mu = {mu} is not below the lowest level {spectrum.offset}"
                    if mu >= spectrum.offset
                    else f"occupation factor {x} >= 1"
                )
            total -= math.log1p(-x)
        else:
            total += math.log1p(x)
    return total


def grand_Xi(spectrum: Spectrum, beta: float, mu: float, stat: Statistics) -> float:
    return math.exp(grand_ln_Xi(spectrum, beta, mu, stat))


def grand_Xi_series(
    spectrum: Spectrum, beta: float, mu: float, stat: Statistics, n_max: int | None = None
) -> float:
    """Fugacity-series route: sum_N z^N Z_N with z = exp(beta mu) and Z_N
    from the recursion.  Exact finite sum for FD (Z_N = 0 beyond the level
    count); truncated at n_max (default recursion cap) for BE."""
    if not stat.quantum:
        raise InputError("fugacity series defined here for BE/FD only")
    if n_max is None:
        n_max = len(spectrum) if stat is Statistics.FD else MAX_RECURSION_N
    n_max = min(n_max, MAX_RECURSION_N)
    z = math.exp(beta * mu)
    total = 0.0
    for n in range(n_max + 1):
        total += z**n * canonical_Z_recursive(spectrum, n, beta, stat)
    return total


# -- thermodynamic points and Boltzmann closed forms ------------------------


@dataclass(frozen=True)
class ThermoPoint:
    """Temperature, volume, particle number and constants; dimensionless
    mode is h = k = m = 1."""

    T: float
    V: float
    N: int
    mu: float | None = None
    mass: float = 1.0
    h: float = 1.0
    k: float = 1.0

    def __post_init__(self):
        if self.T <= 0 or self.V <= 0:
            raise InputError("T and V must be positive")
        if self.N < 0:
            raise InputError("N must be nonnegative")
        if self.mass <= 0 or self.h <= 0 or self.k <= 0:
            raise InputError("constants must be positive")

    @property
    def beta(self) -> float:
        return 1.0 / (self.k * self.T)

    @classmethod
    def dimensionless(cls, T: float = 1.0, V: float = 1.0, N: int = 1, mu: float | None = None):
        return cls(T=T, V=V, N=N, mu=mu, mass=1.0, h=1.0, k=1.0)


def thermal_wavelength(tp: ThermoPoint) -> float:
    """Lambda = h / sqrt(2 pi m k T)."""
    return tp.h / math.sqrt(2.0 * math.pi * tp.mass * tp.k * tp.T)


def mb_ln_Z_continuum(tp: ThermoPoint, stat: Statistics = Statistics.MB_NN) -> float:
    """Continuum Boltzmann ln Z: N ln(V / (N Lambda^3)) for the
    per-particle-subvolume convention, N ln(V / Lambda^3) - ln N! for the
    factorial convention."""
    if tp.N == 0:
        return 0.0
    lam = thermal_wavelength(tp)
    if stat is Statistics.MB_NN:
        return tp.N * math.log(tp.V / (tp.N * lam**3))
    if stat is Statistics.MB_FACT:
        return tp.N * math.log(tp.V / lam**3) - math.lgamma(tp.N + 1)
    raise InputError("continuum closed form applies to MB kinds only")


def free_energy_from_ln_Z(ln_Z: float, T: float, k: float = 1.0) -> float:
    """F = -k T ln Z (thermodynamic standard sign)."""
    return -k * T * ln_Z


def mb_free_energy(tp: ThermoPoint, stat: Statistics = Statistics.MB_NN) -> float:
    return free_energy_from_ln_Z(mb_ln_Z_continuum(tp, stat), tp.T, tp.k)


def nfactor_correction(Z: float, n_particles: int, a: float = 0.0) -> float:
    """Z * N^N * e^(a N); `a` is left configurable (default 0)."""
    return Z * math.exp(nfactor_correction_ln(0.0, n_particles, a))


def nfactor_correction_ln(ln_Z: float, n_particles: int, a: float = 0.0) -> float:
    if n_particles < 1:
        raise InputError("N must be at least 1")
    return ln_Z + n_particles * math.log(n_particles) + a * n_particles


def momentum_multiset_sum(energies: Sequence[float], n_particles: int, beta: float) -> float:
    """Sum over unordered momentum multisets of (distinct-ordering count)
    x Boltzmann weight; equals single-particle-z^N by the multinomial
    theorem, which the verification suite checks."""
    if n_particles > MAX_PARTICLES:
        raise CapacityExceeded(f"multiset sum capped at N = {MAX_PARTICLES}")
    total = 0.0
    for multiset in itertools.combinations_with_replacement(range(len(energies)), n_particles):
        deg = math.factorial(n_particles)
        for lv in set(multiset):
            deg //= math.factorial(multiset.count(lv))
        total += deg * math.exp(-beta * sum(energies[lv] for lv in multiset))
    return total


# -- extensivity report ------------------------------------------------------


@dataclass(frozen=True)
class ExtensivityRow:
    V: float
    N: int
    ln_Z: float
    F: float
    F_per_particle: float
    defect: float  # F(T,V,N) - N*F(T,V/N,1)


@dataclass(frozen=True)
class ExtensivityReport:
    statistics: Statistics
    T: float
    note: str
    rows: tuple[ExtensivityRow, ...]
    checks: tuple[dict, ...]

    def table(self) -> list[list]:
        head = ["V", "N", "ln_Z", "F", "F_per_particle", "extensivity_defect"]
        body = [
            [r.V, r.N, r.ln_Z, r.F, r.F_per_particle, r.defect] for r in self.rows
        ]
        return [head] + body

    def to_json(self) -> dict:
        return {
            "statistics": self.statistics.value,
            "T": self.T,
            "note": self.note,
            "rows": [
                {
                    "V": r.V,
                    "N": r.N,
                    "ln_Z": r.ln_Z,
                    "F": r.F,
                    "F_per_particle": r.F_per_particle,
                    "extensivity_defect": r.defect,
                }
                for r in self.rows
            ],
            "checks": list(self.checks),
        }


def extensivity_report(
    stat: Statistics,
    T: float,
    sizes: Sequence[tuple[float, int]],
    *,
    mass: float = 1.0,
    h: float = 1.0,
    k: float = 1.0,
    continuum: bool = True,
    spectrum_builder: Callable[[float], Spectrum] | None = None,
) -> ExtensivityReport:
    """F, F/N and the extensivity defect F(T,V,N) - N F(T,V/N,1) across
    system sizes.  Continuum mode supports the MB kinds in closed form;
    discrete mode builds a spectrum per volume and enumerates."""
    if continuum and stat.quantum:
        raise InputError("continuum closed form applies to MB kinds only")
    if not continuum and spectrum_builder is None:
        raise InputError("discrete mode needs a spectrum_builder(V)")

    def ln_Z_at(V: float, N: int) -> float:
        if continuum:
            return mb_ln_Z_continuum(ThermoPoint(T=T, V=V, N=N, mass=mass, h=h, k=k), stat)
        spec = spectrum_builder(V)
        beta = 1.0 / (k * T)
        return canonical_ln_Z(spec, N, beta, stat)

    rows = []
    checks = []
    for V, N in sizes:
        if N < 1:
            raise InputError("sizes need N >= 1")
        ln_Z = ln_Z_at(V, N)
        F = free_energy_from_ln_Z(ln_Z, T, k)
        F_single = free_energy_from_ln_Z(ln_Z_at(V / N, 1), T, k)
        defect = F - N * F_single
        rows.append(ExtensivityRow(V, N, ln_Z, F, F / N, defect))
        if stat is Statistics.MB_NN and continuum:
            rel = abs(defect) / abs(F) if F else abs(defect)
            checks.append(
                {
                    "name": f"extensive_V{V}_N{N}",
                    "passed": rel <= 1e-12,
                    "lhs": F,
                    "rhs": N * F_single,
                    "tolerance": 1e-12,
                }
            )
        elif N > 1:
            checks.append(
                {
                    "name": f"defect_nonzero_V{V}_N{N}",
                    "passed": defect != 0.0,
                    "lhs": defect,
                    "rhs": 0.0,
                    "tolerance": 0.0,
                }
            )
    return ExtensivityReport(stat, T, FREE_ENERGY_NOTE, tuple(rows), tuple(checks))
