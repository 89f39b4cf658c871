"""One-shot verification suite.

Replays every identity the package is built around and reports one line
per check.  Statuses: "pass" / "fail" for machine-checked identities, and
"noted" for the two documented convention discrepancies (the orientation
of the antisymmetric basis member and the free-energy sign), which are
recorded rather than failed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import observables, statmech, symmetry
from .exactnum import ONE, RadicalRational, ZERO, rsqrt_of_rational


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    claim: str
    status: str  # pass | fail | noted
    lhs: str
    rhs: str
    tolerance: float

    def to_json(self) -> dict:
        return {
            "id": self.check_id,
            "claim": self.claim,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "tolerance": self.tolerance,
        }


def _third() -> RadicalRational:
    return RadicalRational.of(Fraction(1, 3))


def _weights_str(weights) -> str:
    return "[" + ", ".join(str(w) for w in weights) + "]"


def _check_equal_share(parity: str):
    res = symmetry.symmetrize((0, 1, 2), parity)
    expected = [_third()] * 3
    ok = True
    for i in range(3):
        ok = ok and observables.occupancy_weights(res.vector, i) == expected
    return ok, "per-particle level weights all 1/3", _weights_str(expected)


def _check_mixed_split(name: str, expected_by_particle):
    vec = dict(zip(symmetry.ORBIT_BASIS_NAMES, symmetry.orbit_basis_n3((0, 1, 2))))[name]
    got = [observables.occupancy_weights(vec, i) for i in range(3)]
    want = [[RadicalRational.of(Fraction(*q)) for q in row] for row in expected_by_particle]
    return got == want, _weights_str([_weights_str(r) for r in got]), _weights_str(
        [_weights_str(r) for r in want]
    )


def _check_mixed_instantiated():
    op = observables.OneBodyOperator.diagonal([1, 2, 3])
    basis = dict(zip(symmetry.ORBIT_BASIS_NAMES, symmetry.orbit_basis_n3((0, 1, 2))))
    cases = [
        ("s1", 0, Fraction(7, 4)),
        ("s1", 2, Fraction(5, 2)),
        ("s2", 0, Fraction(9, 4)),
        ("s2", 2, Fraction(3, 2)),
    ]
    got, want = [], []
    for name, particle, expected in cases:
        val = observables.one_body_expectation(basis[name], op, particle)
        got.append(str(val))
        want.append(str(RadicalRational.of(expected)))
    return got == want, ", ".join(got), ", ".join(want)


def _check_sum_rule():
    op = observables.OneBodyOperator.diagonal([1, 2, 3])
    six = RadicalRational.of(6)
    ok = True
    vals = []
    for vec in symmetry.orbit_basis_n3((0, 1, 2)):
        total = observables.energy_sum_rule(vec, op)
        vals.append(str(total))
        ok = ok and total == six
    return ok, ", ".join(vals), "6 for each basis vector"


def _check_orthonormal():
    basis = symmetry.orbit_basis_n3((0, 1, 2))
    ok = True
    worst = "identity"
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            g = symmetry.inner_product(u, v)
            want = ONE if i == j else ZERO
            if g != want:
                ok = False
                worst = f"<{i}|{j}> = {g}"
    return ok, worst, "6x6 Gram matrix = identity, exactly"


def _check_pair_planes():
    basis = dict(zip(symmetry.ORBIT_BASIS_NAMES, symmetry.orbit_basis_n3((0, 1, 2))))
    ok = True
    for pair in (("s1", "s2"), ("s1p", "s2p")):
        plane = [basis[pair[0]], basis[pair[1]]]
        for name in pair:
            for p in symmetry.enumerate_permutations(3):
                image = basis[name].permuted(p)
                coeffs, residual = symmetry.decompose(image, plane)
                total = ZERO
                for c in coeffs:
                    total = total + c * c
                ok = ok and residual.is_zero and total == ONE
    return ok, "all 12 orbit images stay in their 2-plane", "zero residual, unit coefficient norm"


def _check_parity_dimensions():
    dims = symmetry.symmetric_antisymmetric_dimensions((0, 1, 2))
    return dims == (1, 1), f"(dim S, dim A) = {dims}", "(1, 1): 2 of 6 dimensions"


def _check_product_decomposition():
    basis = symmetry.orbit_basis_n3((0, 1, 2))
    v = symmetry.product_state_vector((0, 1, 2))
    coeffs, residual = symmetry.decompose(v, list(basis))
    want = [
        rsqrt_of_rational(Fraction(1, 6)),
        -rsqrt_of_rational(Fraction(1, 6)),
        rsqrt_of_rational(Fraction(1, 3)),
        ZERO,
        rsqrt_of_rational(Fraction(1, 3)),
        ZERO,
    ]
    total = ZERO
    for c in coeffs:
        total = total + c * c
    ok = list(coeffs) == want and residual.is_zero and total == ONE
    return ok, "(" + ", ".join(str(c) for c in coeffs) + ")", (
        "(1/sqrt(6), -1/sqrt(6), 1/sqrt(3), 0, 1/sqrt(3), 0), zero residual"
    )


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    if largest is None:
        largest = n
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _check_degeneracy_small():
    got = [
        symmetry.exchange_degeneracy_dimension(lv)
        for lv in ((0, 0, 0), (0, 0, 1), (0, 1, 2))
    ]
    return got == [1, 3, 6], str(got), "[1, 3, 6]"


def _check_degeneracy_multinomial():
    ok = True
    checked = 0
    for n in range(1, 7):
        for part in _partitions(n):
            levels = tuple(
                lv for lv, count in enumerate(part) for _ in range(count)
            )
            formula = symmetry.exchange_degeneracy_dimension(levels)
            brute = len(set(itertools.permutations(levels)))
            ok = ok and formula == brute
            checked += 1
    return ok, f"{checked} partitions, formula = orbit count in each", "exhaustive agreement"


def _check_position_center():
    worst = 0.0
    for length in (1.0, 2.5):
        for n in (2, 3):
            for levels in itertools.combinations(range(1, 6), n):
                for parity in ("S", "A"):
                    for particle in range(n):
                        x = observables.position_expectation_symmetrized(
                            levels, length, particle, parity
                        )
                        worst = max(worst, abs(x - length / 2.0))
    return worst <= 1e-10, f"max |<x_i> - L/2| = {worst:.3e}", "<= 1e-10"


def _check_laplacian_linear():
    cases = [
        [(Fraction(1), Fraction(2), Fraction(3))],
        [(Fraction(-1, 2), Fraction(0), Fraction(5, 7)), (Fraction(1, 3),) * 3],
    ]
    ok = all(
        observables.laplacian_condition_residual(coeffs) == 0 for coeffs in cases
    )
    return ok, "residual = 0 for linear phases", "0, exactly"


def _check_laplacian_control():
    r = observables.laplacian_condition_residual(
        [(Fraction(1), Fraction(0), Fraction(0))],
        quadratic_coeffs=[(Fraction(1), Fraction(1), Fraction(1))],
    )
    return r != 0, f"quadratic control residual = {r}", "nonzero"


def _check_plane_wave_energy():
    momenta = ((Fraction(1), Fraction(2), Fraction(-3)), (Fraction(1, 2), Fraction(0), Fraction(5, 6)))
    for h in (Fraction(1), Fraction(7, 5)):
        pw = observables.PlaneWaveState(momenta, mass=Fraction(3), volume=Fraction(1))
        direct = observables.plane_wave_energy(pw)
        coeffs = observables.wave_coefficients(pw, h)
        via_wave = observables.energy_from_wave_coefficients(coeffs, Fraction(3), h)
        if direct != via_wave:
            return False, f"{direct} != {via_wave}", "exact equality"
    return True, "sum |p|^2 / 2m reproduced through the wave coefficients", "exact equality"


def _check_momentum_multiset():
    energies = [0.0, 0.4, 0.9, 1.6, 2.5]
    beta = 1.0
    z1 = statmech.single_particle_z(statmech.spectrum_from_levels(energies), beta)
    worst = 0.0
    for n in range(1, 5):
        lhs = statmech.momentum_multiset_sum(energies, n, beta)
        worst = max(worst, abs(lhs - z1**n) / z1**n)
    return worst <= 1e-12, f"max relative gap = {worst:.3e}", "z1^N, within 1e-12"


def _check_canonical_recursion():
    spec = statmech.spectrum_from_levels([0.0, 0.5, 1.1, 1.8, 2.6, 3.5, 4.5, 5.6])
    worst = 0.0
    for stat in (statmech.Statistics.BE, statmech.Statistics.FD):
        for beta in (0.3, 1.0):
            for n in range(1, 6):
                direct = statmech.canonical_Z(spec, n, beta, stat)
                rec = statmech.canonical_Z_recursive(spec, n, beta, stat)
                worst = max(worst, abs(direct - rec) / direct)
    return worst <= 1e-12, f"max relative gap = {worst:.3e}", "<= 1e-12"


def _check_fugacity_fd():
    spec = statmech.spectrum_from_levels([0.0, 0.4, 1.1, 2.2])
    beta, mu = 1.3, 0.2
    product = statmech.grand_Xi(spec, beta, mu, statmech.Statistics.FD)
    series = statmech.grand_Xi_series(spec, beta, mu, statmech.Statistics.FD)
    rel = abs(product - series) / product
    return rel <= 1e-12, f"relative gap = {rel:.3e}", "<= 1e-12 (finite polynomial identity)"


def _check_fugacity_be():
    spec = statmech.spectrum_from_levels([0.0, 0.6, 1.5])
    beta, mu = 1.0, -0.8
    product = statmech.grand_Xi(spec, beta, mu, statmech.Statistics.BE)
    series = statmech.grand_Xi_series(spec, beta, mu, statmech.Statistics.BE)
    rel = abs(product - series) / product
    return rel <= 1e-10, f"relative gap = {rel:.3e}", "<= 1e-10 (truncated series)"


def _check_bose_guard():
    spec = statmech.spectrum_from_levels([0.5, 1.0])
    below_ok = statmech.grand_Xi(spec, 2.0, 0.5 - 1e-6, statmech.Statistics.BE) > 0
    raised_at = raised_above = False
    try:
        statmech.grand_ln_Xi(spec, 2.0, 0.5, statmech.Statistics.BE)
    except statmech.BoseDivergence:
        raised_at = True
    try:
        statmech.grand_ln_Xi(spec, 2.0, 0.7, statmech.Statistics.BE)
    except statmech.BoseDivergence:
        raised_above = True
    ok = below_ok and raised_at and raised_above
    return ok, "diverges at and above the lowest level, converges below", "guard exactly at mu = min energy"


def _check_extensivity_mb_nn():
    report = statmech.extensivity_report(
        statmech.Statistics.MB_NN, 0.9, [(1.7 * n, n) for n in (1, 2, 10, 100, 10**4)]
    )
    ok = all(c["passed"] for c in report.checks)
    worst = max(
        (abs(r.defect) / abs(r.F) if r.F else abs(r.defect)) for r in report.rows
    )
    return ok, f"max relative defect = {worst:.3e}", "F(T,V,N) = N*F(T,V/N,1) within 1e-12"


def _check_extensivity_mb_fact():
    kT = 1.0
    report = statmech.extensivity_report(
        statmech.Statistics.MB_FACT, 1.0, [(2.0 * n, n) for n in (2, 10, 100, 1000)]
    )
    ok = True
    for r in report.rows:
        expected = kT * (math.lgamma(r.N + 1) - r.N * math.log(r.N))
        ok = ok and r.defect != 0.0
        ok = ok and abs(r.defect - expected) <= 1e-9 * abs(expected)
        # residual after adding back kT*N is the Stirling remainder
        resid = r.defect + kT * r.N - kT * 0.5 * math.log(2.0 * math.pi * r.N)
        ok = ok and 0.0 < resid < kT / (12.0 * r.N) + 1e-9
    return ok, "defect = kT*(ln N! - N ln N), shrinking per particle", (
        "nonzero drift matching ln(N!) - N ln N + N"
    )


def _random_radical(rng: random.Random) -> RadicalRational:
    value = RadicalRational.of(Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
    for _ in range(rng.randint(0, 2)):
        q = Fraction(rng.randint(1, 8), rng.randint(1, 8))
        term = rsqrt_of_rational(q) * RadicalRational.of(Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
        value = value + term
    return value


def _check_float_shadow(seed: int):
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(60):
        a, b, c = (_random_radical(rng) for _ in range(3))
        exact = (a + b) * c - a * b
        shadow = (float(a) + float(b)) * float(c) - float(a) * float(b)
        scale = max(1.0, abs(shadow))
        worst = max(worst, abs(float(exact) - shadow) / scale)
    return worst <= 1e-12, f"max relative gap = {worst:.3e} over 60 seeded trees", "<= 1e-12"


def run_verification(seed: int = 0) -> list[CheckResult]:
    results: list[CheckResult] = []

    def add(check_id: str, claim: str, fn, tolerance: float = 0.0) -> None:
        try:
            ok, lhs, rhs = fn()
        except Exception as exc:  # a broken identity may surface as a raise
            results.append(
                CheckResult(check_id, claim, "fail", f"error: {exc!r}", "-", tolerance)
            )
            return
        results.append(
            CheckResult(check_id, claim, "pass" if ok else "fail", lhs, rhs, tolerance)
        )

    def note(check_id: str, claim: str, lhs: str, rhs: str) -> None:
        results.append(CheckResult(check_id, claim, "noted", lhs, rhs, 0.0))

    add(
        "equal_share_S",
        "fully symmetric 3-particle state gives each particle mean energy (e1+e2+e3)/3",
        lambda: _check_equal_share("S"),
    )
    add(
        "equal_share_A",
        "fully antisymmetric 3-particle state gives each particle mean energy (e1+e2+e3)/3",
        lambda: _check_equal_share("A"),
    )
    add(
        "mixed_split_s1",
        "first mixed vector splits mean energies as (5,5,2)/12 and (2,2,8)/12",
        lambda: _check_mixed_split(
            "s1", [[(5, 12), (5, 12), (2, 12)]] * 2 + [[(2, 12), (2, 12), (8, 12)]]
        ),
    )
    add(
        "mixed_split_s2",
        "second mixed vector splits mean energies as (1,1,2)/4 and (1,1,0)/2",
        lambda: _check_mixed_split(
            "s2", [[(1, 4), (1, 4), (1, 2)]] * 2 + [[(1, 2), (1, 2), (0, 1)]]
        ),
    )
    add(
        "mixed_instantiated",
        "mixed-vector mean energies at (e1,e2,e3) = (1,2,3): 7/4, 5/2, 9/4, 3/2",
        _check_mixed_instantiated,
    )
    add(
        "sum_rule_six",
        "per-particle mean energies sum to the total energy for all six basis vectors",
        _check_sum_rule,
    )
    add(
        "basis_orthonormal",
        "the six distinct-level 3-particle basis vectors are exactly orthonormal",
        _check_orthonormal,
    )
    add(
        "pair_plane_stable",
        "every permutation image of a mixed pair decomposes in its own 2-plane with zero residual",
        _check_pair_planes,
    )
    add(
        "parity_dimensions",
        "symmetric plus antisymmetric sectors span exactly 2 of the 6 dimensions",
        _check_parity_dimensions,
    )
    add(
        "product_decomposition",
        "the bare product state decomposes with coefficients "
        "(1/sqrt(6), -1/sqrt(6), 1/sqrt(3), 0, 1/sqrt(3), 0) and zero residual",
        _check_product_decomposition,
    )
    note(
        "decomposition_sign",
        "the antisymmetric basis member is oriented opposite to the commonly displayed "
        "expansion, so its projection coefficient is -1/sqrt(6) rather than +1/sqrt(6); "
        "orientation chosen to keep the six-vector basis exactly orthonormal",
        "-1/sqrt(6)",
        "+1/sqrt(6) (displayed)",
    )
    add(
        "degeneracy_small",
        "exchange degeneracy is 1, 3, 6 for (a,a,a), (a,a,b), (a,b,c)",
        _check_degeneracy_small,
    )
    add(
        "degeneracy_multinomial",
        "multinomial N!/prod(n_k!) matches exhaustive orbit counting for all partitions, N <= 6",
        _check_degeneracy_multinomial,
    )
    add(
        "position_center",
        "box eigenstate (anti)symmetrized combinations place every particle at L/2",
        _check_position_center,
        tolerance=1e-10,
    )
    add(
        "laplacian_linear",
        "linear-phase plane waves have exactly zero Laplacian residual",
        _check_laplacian_linear,
    )
    add(
        "laplacian_control",
        "a quadratic phase control produces a nonzero Laplacian residual",
        _check_laplacian_control,
    )
    add(
        "plane_wave_energy",
        "total energy equals sum |p|^2/2m through the wave-coefficient route, exactly",
        _check_plane_wave_energy,
    )
    add(
        "momentum_multiset",
        "degeneracy-weighted momentum-multiset sum equals z1^N for N <= 4",
        _check_momentum_multiset,
        tolerance=1e-12,
    )
    add(
        "canonical_recursion",
        "canonical enumeration matches the recursion oracle for BE and FD, N <= 5, 8 levels",
        _check_canonical_recursion,
        tolerance=1e-12,
    )
    add(
        "fugacity_fd",
        "grand product equals the finite fugacity polynomial for FD",
        _check_fugacity_fd,
        tolerance=1e-12,
    )
    add(
        "fugacity_be",
        "grand product matches the truncated fugacity series for BE",
        _check_fugacity_be,
        tolerance=1e-10,
    )
    add(
        "bose_guard",
        "Bose grand product diverges exactly when mu reaches the lowest level",
        _check_bose_guard,
    )
    add(
        "extensivity_mb_nn",
        "per-subvolume Boltzmann free energy is extensive: F(T,V,N) = N*F(T,V/N,1)",
        _check_extensivity_mb_nn,
        tolerance=1e-12,
    )
    add(
        "extensivity_mb_fact",
        "factorial-convention free energy drifts by kT*(ln N! - N ln N), nonzero and shrinking",
        _check_extensivity_mb_fact,
        tolerance=1e-9,
    )
    note(
        "free_energy_sign",
        "free energies are reported with F = -kT*ln(Z); the opposite printed sign "
        "convention is recorded here as a discrepancy, not applied",
        "F = -kT*ln(Z)",
        "F = +kT*ln(Z) (displayed)",
    )
    add(
        "float_shadow",
        "exact radical arithmetic agrees with floating-point evaluation on seeded expression trees",
        lambda: _check_float_shadow(seed),
        tolerance=1e-12,
    )
    return results


def verification_passed(results: list[CheckResult]) -> bool:
    return all(r.status != "fail" for r in results)


def noted_count(results: list[CheckResult]) -> int:
    return sum(1 for r in results if r.status == "noted")
