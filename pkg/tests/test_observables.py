"""Per-particle expectations, box position matrix, plane-wave sector."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest
from scipy import integrate

from idstat.errors import DimensionMismatch, NotNormalized, ZeroVectorInput
from idstat.exactnum import ZERO, RadicalRational
from idstat.observables import (
    OneBodyOperator,
    PlaneWaveState,
    box_position_operator,
    energy_from_wave_coefficients,
    energy_sum_rule,
    laplacian_condition_residual,
    momentum_degeneracy,
    occupancy_weights,
    one_body_expectation,
    plane_wave_energy,
    position_expectation_symmetrized,
    wave_coefficients,
)
from idstat.symmetry import mixed_basis_n3, product_state_vector, symmetrize

H123 = OneBodyOperator.diagonal([1, 2, 3])
THIRD = Fraction(1, 3)


def test_symmetrized_states_share_energy_equally():
    for parity in ("S", "A"):
        v = symmetrize((0, 1, 2), parity).vector
        for i in range(3):
            assert occupancy_weights(v, i) == [THIRD, THIRD, THIRD]
            assert one_body_expectation(v, H123, i) == 2  # (1+2+3)/3


def test_mixed_state_weights_are_symbolic_splittings():
    s1, s2, _, _ = mixed_basis_n3((0, 1, 2))
    f = Fraction
    assert occupancy_weights(s1, 0) == [f(5, 12), f(5, 12), f(2, 12)]
    assert occupancy_weights(s1, 1) == [f(5, 12), f(5, 12), f(2, 12)]
    assert occupancy_weights(s1, 2) == [f(2, 12), f(2, 12), f(8, 12)]
    assert occupancy_weights(s2, 0) == [f(1, 4), f(1, 4), f(2, 4)]
    assert occupancy_weights(s2, 1) == [f(1, 4), f(1, 4), f(2, 4)]
    assert occupancy_weights(s2, 2) == [f(1, 2), f(1, 2), f(0)]


def test_mixed_state_expectations_instantiated():
    s1, s2, _, _ = mixed_basis_n3((0, 1, 2))
    assert one_body_expectation(s1, H123, 0) == Fraction(7, 4)  # (5+10+6)/12
    assert one_body_expectation(s1, H123, 2) == Fraction(5, 2)  # (2+4+24)/12
    assert one_body_expectation(s2, H123, 0) == Fraction(9, 4)  # (1+2+6)/4
    assert one_body_expectation(s2, H123, 2) == Fraction(3, 2)  # (1+2)/2


def test_energy_sum_rule_equals_total():
    s1, s2, s1p, s2p = mixed_basis_n3((0, 1, 2))
    vectors = [
        symmetrize((0, 1, 2), "S").vector,
        symmetrize((0, 1, 2), "A").vector,
        s1,
        s2,
        s1p,
        s2p,
    ]
    for v in vectors:
        assert energy_sum_rule(v, H123) == 6  # 1 + 2 + 3


def test_momentum_share_for_diagonal_momentum_operator():
    # sharp per-level momenta as an exact diagonal operator
    P = OneBodyOperator.diagonal([Fraction(-3, 2), Fraction(1, 2), Fraction(5, 2)])
    v = symmetrize((0, 1, 2), "A").vector
    mean = (Fraction(-3, 2) + Fraction(1, 2) + Fraction(5, 2)) / 3
    for i in range(3):
        assert one_body_expectation(v, P, i) == mean


def test_expectation_validation_errors():
    v = product_state_vector((0, 1, 2))
    with pytest.raises(DimensionMismatch):
        one_body_expectation(v, OneBodyOperator.diagonal([1, 2]), 0)
    with pytest.raises(NotNormalized):
        one_body_expectation(v.scale(2), H123, 0)
    with pytest.raises(ZeroVectorInput):
        one_body_expectation(v - v, H123, 0)
    with pytest.raises(ValueError):
        one_body_expectation(v, H123, 3)


def _box_quadrature(m: int, n: int, L: float) -> float:
    phi = lambda k, x: math.sqrt(2.0 / L) * math.sin(k * math.pi * x / L)
    val, _ = integrate.quad(lambda x: phi(m, x) * x * phi(n, x), 0.0, L, limit=200)
    return val


@pytest.mark.parametrize("m, n", [(1, 1), (2, 2), (1, 2), (1, 3), (2, 3), (3, 4), (1, 4)])
@pytest.mark.parametrize("L", [1.0, 2.53])
def test_box_position_matrix_against_quadrature(m, n, L):
    op = box_position_operator(L, 4)
    assert abs(op.entry(m - 1, n - 1) - _box_quadrature(m, n, L)) < 1e-10


def test_box_position_closed_form_values():
    op = box_position_operator(1.0, 2)
    assert op.entry(0, 0) == 0.5
    assert math.isclose(op.entry(0, 1), -16.0 / (9.0 * math.pi**2), rel_tol=1e-15)
    assert op.entry(0, 1) == op.entry(1, 0)  # hermitian builder
    assert box_position_operator(1.0, 3).entry(0, 2) == 0.0  # even difference


@pytest.mark.parametrize("parity", ["S", "A"])
@pytest.mark.parametrize("levels", [(1, 2), (2, 5), (1, 2, 3), (1, 3, 5), (2, 3, 4)])
@pytest.mark.parametrize("L", [1.0, 2.53])
def test_position_expectation_is_box_center(parity, levels, L):
    for i in range(len(levels)):
        x = position_expectation_symmetrized(levels, L, i, parity)
        assert abs(x - L / 2.0) < 1e-10


def test_position_expectation_zero_vector_flagged():
    with pytest.raises(ZeroVectorInput):
        position_expectation_symmetrized((2, 2), 1.0, 0, "A")


def test_float_exchange_symmetry():
    op = box_position_operator(1.0, 3)
    v = symmetrize((0, 1, 2), "S").vector
    values = [one_body_expectation(v, op, i) for i in range(3)]
    assert max(values) - min(values) < 1e-10


def test_plane_wave_energy_identity_exact():
    pw = PlaneWaveState(
        momenta=((Fraction(1), Fraction(2), Fraction(3)),
                 (Fraction(-1), Fraction(0), Fraction(2)),
                 (Fraction(1, 2), Fraction(1, 3), Fraction(0))),
        mass=Fraction(3, 2),
    )
    e = plane_wave_energy(pw)
    assert e == (14 + 5 + Fraction(13, 36)) / 3  # sum |p|^2 / (2m), m = 3/2
    for h in (1, Fraction(7, 5), 2):
        coeffs = wave_coefficients(pw, h)
        assert energy_from_wave_coefficients(coeffs, pw.mass, h) == e


def test_laplacian_of_linear_phase_is_exactly_zero():
    a = ((Fraction(1), Fraction(-2), Fraction(3)), (Fraction(1, 7), Fraction(0), Fraction(5)))
    assert laplacian_condition_residual(a) == 0


def test_laplacian_quadratic_negative_control():
    a = ((Fraction(1), Fraction(1), Fraction(1)),)
    q = ((Fraction(1), Fraction(1), Fraction(1)),)
    assert laplacian_condition_residual(a, q) == 6  # 2 per dimension


def _fd_laplacian(f, point, h=1e-4):
    total = 0.0
    for idx in range(len(point)):
        up = list(point)
        dn = list(point)
        up[idx] += h
        dn[idx] -= h
        total += (f(up) - 2.0 * f(point) + f(dn)) / (h * h)
    return total


def test_laplacian_finite_difference_oracle():
    a = [0.7, -1.3, 2.1]
    linear = lambda q: sum(c * x for c, x in zip(a, q))
    quad = lambda q: sum(x * x for x in q)
    assert abs(_fd_laplacian(linear, [0.3, 0.9, -0.5])) < 1e-6
    assert abs(_fd_laplacian(quad, [0.3, 0.9, -0.5]) - 6.0) < 1e-4


def test_momentum_degeneracy_counts():
    p = lambda *xs: tuple(Fraction(x) for x in xs)
    assert momentum_degeneracy(PlaneWaveState((p(1), p(2), p(3)))) == 6
    assert momentum_degeneracy(PlaneWaveState((p(1), p(1), p(3)))) == 3
    assert momentum_degeneracy(PlaneWaveState((p(1), p(1), p(1)))) == 1
    assert momentum_degeneracy(PlaneWaveState((p(1), p(1), p(2), p(2)))) == 6


def test_operator_shape_validation():
    with pytest.raises(ValueError):
        OneBodyOperator(((1, 2), (3,)), exact=True)
    with pytest.raises(ValueError):
        OneBodyOperator(((0.0, 1.0), (2.0, 0.0)), exact=False, hermitian=True)
