"""Spectra, occupation enumeration, partition functions, extensivity."""

from __future__ import annotations

import math

import pytest

from idstat.errors import (
    BoseDivergence,
    CapacityExceeded,
    CutoffTooLarge,
    InputError,
)
from idstat.statmech import (
    MAX_CUTOFF,
    MAX_LEVELS,
    MAX_PARTICLES,
    MAX_RECURSION_N,
    Spectrum,
    Statistics,
    ThermoPoint,
    box1d_spectrum,
    box3d_spectrum,
    canonical_Z,
    canonical_Z_recursive,
    canonical_ln_Z,
    dimensionless_spectrum,
    enumerate_occupations,
    extensivity_report,
    free_energy_from_ln_Z,
    grand_Xi,
    grand_Xi_series,
    grand_ln_Xi,
    mb_free_energy,
    mb_ln_Z_continuum,
    momentum_multiset_sum,
    nfactor_correction,
    nfactor_correction_ln,
    occupation_count,
    single_particle_z,
    spectrum_from_csv,
    spectrum_from_levels,
    thermal_wavelength,
)

BE, FD, MB_NN, MB_FACT = (
    Statistics.BE,
    Statistics.FD,
    Statistics.MB_NN,
    Statistics.MB_FACT,
)


def test_statistics_parse():
    assert Statistics.parse(" FD ") is FD
    assert Statistics.parse("mb-nn") is MB_NN
    with pytest.raises(InputError):
        Statistics.parse("boltzmann")


def test_spectrum_sorts_and_offsets():
    s = spectrum_from_levels([2.0, 0.5, 1.0])
    assert s.energies == (0.5, 1.0, 2.0)
    assert s.offset == 0.5
    assert s.shifted() == (0.0, 0.5, 1.5)


def test_dimensionless_spectrum():
    assert dimensionless_spectrum(3).energies == (1.0, 4.0, 9.0)


def test_box1d_spectrum_scale_and_ratio():
    s = box1d_spectrum(4)
    assert s.energies[0] == 1.0 / 8.0  # h^2/(8 m L^2) with unit constants
    assert s.energies[1] / s.energies[0] == 4.0
    assert box1d_spectrum(3, length=2.0).energies[0] == 1.0 / 32.0


def test_box3d_spectrum_degeneracies():
    s = box3d_spectrum(4)
    assert [e / s.energies[0] * 3 for e in s.energies] == [3.0, 6.0, 6.0, 6.0]
    # brute-force the first 50 shell values independently
    brute = sorted(
        nx * nx + ny * ny + nz * nz
        for nx in range(1, 30)
        for ny in range(1, 30)
        for nz in range(1, 30)
    )[:50]
    got = [round(e / (1.0 / 8.0)) for e in box3d_spectrum(50).energies]
    assert got == brute


def test_spectrum_csv_round(tmp_path):
    p = tmp_path / "levels.csv"
    p.write_text("energy,degeneracy\n1.5,2\n0.5,1\n2.5,3\n")
    s = spectrum_from_csv(str(p))
    assert s.energies == (0.5, 1.5, 1.5, 2.5, 2.5, 2.5)
    q = tmp_path / "plain.csv"
    q.write_text("energy\n3.0\n1.0\n")
    assert spectrum_from_csv(str(q)).energies == (1.0, 3.0)


def test_spectrum_csv_rejects_bad_input(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("eps\n1.0\n")
    with pytest.raises(InputError):
        spectrum_from_csv(str(p))
    p.write_text("energy\nnot-a-number\n")
    with pytest.raises(InputError):
        spectrum_from_csv(str(p))


def test_level_count_caps():
    with pytest.raises(CutoffTooLarge):
        spectrum_from_levels([0.0] * (MAX_CUTOFF + 1))
    with pytest.raises(CutoffTooLarge):
        dimensionless_spectrum(MAX_CUTOFF + 1)


def test_enumerate_occupations_fd():
    states = list(enumerate_occupations(4, 2, FD))
    assert len(states) == math.comb(4, 2)
    for occ in states:
        assert occ.total == 2
        assert all(c == 1 for _, c in occ.counts)
    assert len({occ.counts for occ in states}) == len(states)


def test_enumerate_occupations_be_allows_repeats():
    states = list(enumerate_occupations(4, 2, BE))
    assert len(states) == math.comb(4 + 2 - 1, 2)
    assert any(any(c == 2 for _, c in occ.counts) for occ in states)
    # MB kinds share BE support
    assert len(list(enumerate_occupations(4, 2, MB_NN))) == len(states)


@pytest.mark.parametrize("stat", [BE, FD])
@pytest.mark.parametrize("n_levels", [1, 2, 4, 6])
@pytest.mark.parametrize("n_particles", [0, 1, 2, 3, 4])
def test_occupation_count_matches_enumeration(stat, n_levels, n_particles):
    states = list(enumerate_occupations(n_levels, n_particles, stat))
    assert len(states) == occupation_count(n_levels, n_particles, stat)
    assert all(occ.total == n_particles for occ in states)


def test_occupation_vector_and_energy():
    spec = spectrum_from_levels([0.0, 1.0, 2.5])
    occ = next(o for o in enumerate_occupations(3, 3, BE) if o.counts == ((0, 2), (2, 1)))
    assert occ.as_vector(3) == (2, 0, 1)
    assert occ.energy(spec) == 2.5


def test_enumeration_caps():
    with pytest.raises(CapacityExceeded):
        list(enumerate_occupations(MAX_LEVELS + 1, 2, FD))
    with pytest.raises(CapacityExceeded):
        list(enumerate_occupations(4, MAX_PARTICLES + 1, BE))


def test_canonical_fd_frozen_example():
    spec = spectrum_from_levels([0.0, 1.0, 2.0])
    z = canonical_Z(spec, 2, 1.0, FD)
    expected = math.exp(-1.0) + math.exp(-2.0) + math.exp(-3.0)
    assert math.isclose(z, expected, rel_tol=1e-15)


def test_canonical_edge_cases():
    spec = spectrum_from_levels([0.0, 1.0])
    assert canonical_Z(spec, 0, 1.0, BE) == 1.0
    assert canonical_Z(spec, 3, 1.0, FD) == 0.0  # more fermions than levels
    assert canonical_Z(spectrum_from_levels([0.0]), 3, 1.0, BE) == 1.0
    with pytest.raises(InputError):
        canonical_Z(spec, 2, 0.0, BE)


def test_canonical_mb_closed_forms():
    spec = spectrum_from_levels([0.0, 0.7, 1.9])
    beta, n = 1.3, 3
    z1 = single_particle_z(spec, beta)
    assert math.isclose(canonical_Z(spec, n, beta, MB_NN), z1**n / n**n, rel_tol=1e-13)
    assert math.isclose(
        canonical_Z(spec, n, beta, MB_FACT), z1**n / math.factorial(n), rel_tol=1e-13
    )
    assert math.isclose(canonical_ln_Z(spec, n, beta, MB_NN), n * math.log(z1 / n), rel_tol=1e-13)


@pytest.mark.parametrize("stat", [BE, FD])
@pytest.mark.parametrize("beta", [0.3, 1.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_recursion_matches_enumeration(stat, beta, n):
    spec = spectrum_from_levels([0.0, 0.5, 1.3, 2.0, 3.1])
    direct = canonical_Z(spec, n, beta, stat)
    rec = canonical_Z_recursive(spec, n, beta, stat)
    assert math.isclose(direct, rec, rel_tol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_recursion_matches_enumeration_be_cold(n):
    # BE recursion terms are all positive, so no cancellation at any beta
    spec = spectrum_from_levels([0.0, 0.5, 1.3, 2.0, 3.1])
    assert math.isclose(
        canonical_Z(spec, n, 2.7, BE), canonical_Z_recursive(spec, n, 2.7, BE), rel_tol=1e-12
    )


@pytest.mark.parametrize("n", [3, 4, 5])
def test_recursion_fd_cold_conditioning(n):
    # The alternating FD recursion cancels: terms stay O(1) while Z_N
    # shrinks like exp(-beta * E_ground), so the float64 relative error
    # floor scales with the term/result ratio.  Assert agreement within
    # that conditioning bound instead of a fixed tolerance.
    spec = spectrum_from_levels([0.0, 0.5, 1.3, 2.0, 3.1])
    beta = 2.7
    direct = canonical_Z(spec, n, beta, FD)
    rec = canonical_Z_recursive(spec, n, beta, FD)
    kappa = sum(
        single_particle_z(spec, k * beta) * canonical_Z(spec, n - k, beta, FD)
        for k in range(1, n + 1)
    ) / (n * direct)
    assert abs(direct - rec) / direct <= 1e-13 * kappa
    assert math.isclose(direct, rec, rel_tol=1e-8)


def test_recursion_base_and_caps():
    spec = spectrum_from_levels([0.0, 1.0])
    assert math.isclose(canonical_Z_recursive(spec, 1, 2.0, BE), single_particle_z(spec, 2.0))
    with pytest.raises(CapacityExceeded):
        canonical_Z_recursive(spec, MAX_RECURSION_N + 1, 1.0, BE)
    with pytest.raises(InputError):
        canonical_Z_recursive(spec, 2, 1.0, MB_NN)


def test_monotonic_in_beta():
    spec = spectrum_from_levels([0.0, 0.9, 1.4])
    for stat in (BE, FD, MB_NN, MB_FACT):
        zs = [canonical_Z(spec, 2, b, stat) for b in (0.4, 0.9, 1.7, 3.0)]
        assert all(a > b for a, b in zip(zs, zs[1:]))


def test_grand_xi_frozen_single_level():
    spec = spectrum_from_levels([0.0])
    mu = -math.log(2.0)  # occupation factor exactly 1/2
    assert math.isclose(grand_Xi(spec, 1.0, mu, BE), 2.0, rel_tol=1e-15)
    assert math.isclose(grand_Xi(spec, 1.0, mu, FD), 1.5, rel_tol=1e-15)


def test_bose_divergence_iff_mu_reaches_ground_state():
    spec = spectrum_from_levels([0.5, 1.0])
    assert grand_Xi(spec, 2.0, 0.4999, BE) > 0
    for mu in (0.5, 0.7):
        with pytest.raises(BoseDivergence):
            grand_ln_Xi(spec, 2.0, mu, BE)
    # FD never diverges
    assert grand_Xi(spec, 2.0, 5.0, FD) > 0
    with pytest.raises(InputError):
        grand_Xi(spec, 1.0, 0.0, MB_NN)


def test_fugacity_series_matches_product_fd():
    spec = spectrum_from_levels([0.0, 0.4, 1.1, 2.2])
    beta, mu = 1.3, 0.2
    assert math.isclose(
        grand_Xi(spec, beta, mu, FD), grand_Xi_series(spec, beta, mu, FD), rel_tol=1e-12
    )


def test_fugacity_series_matches_product_be():
    spec = spectrum_from_levels([0.0, 0.6, 1.5])
    beta, mu = 1.0, -0.8
    assert math.isclose(
        grand_Xi(spec, beta, mu, BE), grand_Xi_series(spec, beta, mu, BE), rel_tol=1e-10
    )


def test_thermal_wavelength_dimensionless():
    tp = ThermoPoint.dimensionless(T=1.0 / (2.0 * math.pi))
    assert math.isclose(thermal_wavelength(tp), 1.0, rel_tol=1e-15)


def test_thermal_wavelength_si_against_mpmath():
    import mpmath

    from idstat.statmech import BOLTZMANN_K_SI, PLANCK_H_SI

    m_he = 6.6464731e-27
    tp = ThermoPoint(T=300.0, V=1.0, N=1, mass=m_he, h=PLANCK_H_SI, k=BOLTZMANN_K_SI)
    mpmath.mp.dps = 50
    ref = mpmath.mpf(PLANCK_H_SI) / mpmath.sqrt(
        2 * mpmath.pi * mpmath.mpf(m_he) * mpmath.mpf(BOLTZMANN_K_SI) * 300
    )
    assert abs(thermal_wavelength(tp) - float(ref)) / float(ref) < 1e-12


def test_mb_free_energy_extensive_closed_form():
    v_per_n, T = 1.7, 0.9
    f1 = mb_free_energy(ThermoPoint.dimensionless(T=T, V=v_per_n, N=1))
    for n in (1, 2, 10, 100, 10**4):
        F = mb_free_energy(ThermoPoint.dimensionless(T=T, V=v_per_n * n, N=n))
        assert abs(F - n * f1) <= 1e-12 * abs(F)


def test_mb_ln_z_rejects_quantum_kinds():
    with pytest.raises(InputError):
        mb_ln_Z_continuum(ThermoPoint.dimensionless(), BE)


def test_free_energy_sign_convention():
    assert free_energy_from_ln_Z(2.0, 1.5, k=1.0) == -3.0


def test_nfactor_correction_trivial_cases():
    assert nfactor_correction(1.0, 2, 0.0) == 4.0
    assert math.isclose(nfactor_correction(0.7, 1, 1.3), 0.7 * math.exp(1.3), rel_tol=1e-15)
    with pytest.raises(InputError):
        nfactor_correction(1.0, 0)


def test_nfactor_stirling_bridge():
    # N^N e^{-N} ~= N!: correcting the factorial convention with a = -1
    # reproduces the full-volume Boltzmann Z up to the Stirling error,
    # pinned here with the exact remainder bounds.
    spec = spectrum_from_levels([0.0, 0.3, 1.1, 2.4])
    beta = 0.8
    z1 = single_particle_z(spec, beta)
    for n in range(2, 51):
        ln_fact = canonical_ln_Z(spec, n, beta, MB_FACT)
        corrected = nfactor_correction_ln(ln_fact, n, a=-1.0)
        target = nfactor_correction_ln(canonical_ln_Z(spec, n, beta, MB_NN), n, a=0.0)
        assert math.isclose(target, n * math.log(z1), rel_tol=1e-12)
        diff = target - corrected  # = ln N! - N ln N + N
        stirling = 0.5 * math.log(2.0 * math.pi * n)
        assert stirling + 1.0 / (12 * n + 1) - 1e-9 < diff < stirling + 1.0 / (12 * n) + 1e-9


def test_momentum_multiset_sum_equals_z1_power():
    energies = [0.0, 0.5, 1.0, 1.7, 2.2]
    beta = 1.1
    z1 = math.fsum(math.exp(-beta * e) for e in energies)
    for n in (1, 2, 3, 4):
        lhs = momentum_multiset_sum(energies, n, beta)
        assert abs(lhs - z1**n) <= 1e-12 * z1**n


def test_extensivity_report_mb_nn():
    report = extensivity_report(MB_NN, 0.9, [(1.7 * n, n) for n in (1, 2, 10, 100)])
    assert all(c["passed"] for c in report.checks)
    f_per = [r.F_per_particle for r in report.rows]
    assert max(f_per) - min(f_per) <= 1e-12 * abs(f_per[0])
    assert "F = -kT*ln(Z)" in report.note


def test_extensivity_report_mb_fact_drifts():
    report = extensivity_report(MB_FACT, 1.0, [(2.0 * n, n) for n in (1, 2, 10, 50)])
    defects = [r.defect for r in report.rows]
    assert defects[0] == 0.0  # N = 1 is its own reference
    assert all(d != 0.0 for d in defects[1:])
    # per-particle defect approaches -kT like 0.5 ln(2 pi N)/N
    kT = 1.0
    for r in report.rows[1:]:
        residual = r.defect + kT * r.N - kT * 0.5 * math.log(2.0 * math.pi * r.N)
        assert 0.0 < residual < kT / (12.0 * r.N) + 1e-9


def test_extensivity_report_discrete_fd():
    builder = lambda V: box1d_spectrum(12, length=V)
    report = extensivity_report(
        FD, 1.0, [(1.0, 2), (2.0, 4)], continuum=False, spectrum_builder=builder
    )
    assert report.rows[1].defect != 0.0
    table = report.table()
    assert table[0][0] == "V" and len(table) == 3


def test_extensivity_report_input_errors():
    with pytest.raises(InputError):
        extensivity_report(FD, 1.0, [(1.0, 2)])  # quantum needs discrete mode
    with pytest.raises(InputError):
        extensivity_report(MB_NN, 1.0, [(1.0, 0)])


def test_thermo_point_validation():
    with pytest.raises(InputError):
        ThermoPoint(T=0.0, V=1.0, N=1)
    with pytest.raises(InputError):
        ThermoPoint(T=1.0, V=-1.0, N=1)
    assert ThermoPoint.dimensionless(T=2.0).beta == 0.5
