"""Test the decoherence rates and budget."""

import math
from dataclasses import replace

import numpy as np
import pytest

from src.common import PhysicsDomainError
from src.decoherence import (
    DecoherenceBudget,
    budget,
    decoherence_time,
    max_number_density,
    rate_absorption,
    rate_collisional,
    rate_emission,
    rate_photon_scattering,
    rate_scattering_alternative,
    two_sphere_anisotropy,
)
from src.system_model import Environment, GasSpecies, Nanorod

THETA0 = 7.92e-4


def test_room_temperature_decoherence_time(reference_rod, reference_env):
    tau_d = decoherence_time(reference_rod, reference_env, THETA0)
    assert tau_d == pytest.approx(0.0036, rel=0.10)
    assert tau_d == pytest.approx(3.62e-3, rel=1e-2)


def test_one_kelvin_decoherence_time(reference_rod, reference_env):
    tau_d = decoherence_time(reference_rod, reference_env.with_temperature(1.0), THETA0)
    assert tau_d == pytest.approx(19.0, rel=0.10)


@pytest.mark.parametrize("temperature, expected", [(77.0, 0.0278), (4.0, 2.35), (0.1, 595.0)])
def test_marked_temperatures(reference_rod, reference_env, temperature, expected):
    tau_d = decoherence_time(reference_rod, reference_env.with_temperature(temperature), THETA0)
    assert tau_d == pytest.approx(expected, rel=2e-2)


def test_collisions_dominate_at_room_temperature(reference_rod, reference_env):
    result = budget(reference_rod, reference_env, THETA0)
    assert result.rate_collisional == pytest.approx(276.0, rel=1e-2)
    photons = result.rate_scattering + result.rate_emission + result.rate_absorption
    assert photons < 1e-3
    assert result.rate_emission == result.rate_absorption


def test_total_is_sum_of_channels(reference_rod, reference_env):
    result = budget(reference_rod, reference_env, THETA0)
    assert result.rate_total == pytest.approx(math.fsum(result.channels.values()), rel=1e-15)
    assert result.tau_D == pytest.approx(1 / result.rate_total, rel=1e-15)
    assert result.angle_used == THETA0
    assert result.alternative_scattering_rate not in result.channels.values()


def test_temperature_scaling(reference_rod, reference_env):
    hot, cold = reference_env.with_temperature(300.0), reference_env.with_temperature(150.0)
    assert rate_collisional(reference_rod, hot, THETA0) / rate_collisional(reference_rod, cold, THETA0) == pytest.approx(2 ** 1.5)
    assert rate_photon_scattering(reference_rod, hot, THETA0) / rate_photon_scattering(reference_rod, cold, THETA0) == pytest.approx(2 ** 9)
    assert rate_absorption(reference_rod, hot, THETA0) / rate_absorption(reference_rod, cold, THETA0) == pytest.approx(2 ** 6)


def test_emission_follows_internal_temperature(reference_rod):
    hot_inside = Environment.air(1e9, 1.0, temperature_internal=300.0)
    cold = Environment.air(1e9, 1.0)
    assert rate_emission(reference_rod, hot_inside, THETA0) > rate_emission(reference_rod, cold, THETA0)
    assert rate_absorption(reference_rod, hot_inside, THETA0) == rate_absorption(reference_rod, cold, THETA0)


def test_geometric_factor(reference_rod, reference_env):
    full = rate_collisional(reference_rod, reference_env, math.pi)
    assert rate_collisional(reference_rod, reference_env, math.pi / 2) == pytest.approx(full / 2)
    assert rate_collisional(reference_rod, reference_env, 0.0) == 0.0


def test_decoherence_time_decreases_with_temperature(reference_rod, reference_env):
    times = [decoherence_time(reference_rod, reference_env.with_temperature(t), THETA0)
             for t in (0.1, 1.0, 4.0, 77.0, 300.0)]
    assert times == sorted(times, reverse=True)


def test_collisional_rate_is_linear_in_density(reference_rod, reference_env):
    base = rate_collisional(reference_rod, reference_env, THETA0)
    dense = rate_collisional(reference_rod, replace(reference_env, number_density=3e9), THETA0)
    assert dense == pytest.approx(3 * base, rel=1e-14)


def test_averaged_mode_is_close_to_species_sum(reference_rod, reference_env):
    species = rate_collisional(reference_rod, reference_env, THETA0, mode="species")
    averaged = rate_collisional(reference_rod, reference_env, THETA0, mode="averaged")
    assert averaged >= species
    assert averaged == pytest.approx(species, rel=1e-3)
    with pytest.raises(PhysicsDomainError):
        rate_collisional(reference_rod, reference_env, THETA0, mode="effusive")


def test_nothing_decoheres_without_gas_or_contrast():
    rod = Nanorod(sphere_radius=7.92e-9, half_length=10e-6, mass=1e-20, dielectric=1.0)
    env = Environment.air(0.0, 300.0)
    result = budget(rod, env, THETA0)
    assert result.rate_total == 0.0
    assert result.tau_D_infinite
    record = result.to_dict()
    assert record["tau_D_s"] is None
    assert record["tau_D_infinite"] is True
    assert record["alternative_to_primary_scattering_ratio"] is None


def test_zero_angle_has_infinite_decoherence_time(reference_rod, reference_env):
    assert math.isinf(decoherence_time(reference_rod, reference_env, 0.0))


def test_zero_gas_leaves_photon_channels(reference_rod):
    result = budget(reference_rod, Environment.air(0.0, 300.0), THETA0)
    assert result.rate_collisional == 0.0
    assert result.rate_scattering > 0
    assert math.isfinite(result.tau_D)


@pytest.mark.parametrize("theta", [-0.1, 3.5])
def test_angle_out_of_range(reference_rod, reference_env, theta):
    with pytest.raises(PhysicsDomainError):
        budget(reference_rod, reference_env, theta)


def test_budget_to_dict(reference_rod, reference_env):
    record = budget(reference_rod, reference_env, THETA0).to_dict()
    assert [c["name"] for c in record["channels"]] == ["collisional", "scattering", "emission", "absorption"]
    assert record["temperature_external_K"] == 300.0
    assert record["tau_D_s"] == pytest.approx(3.62e-3, rel=1e-2)
    assert record["alternative_to_primary_scattering_ratio"] > 0


def test_two_sphere_anisotropy(reference_rod):
    alpha_x, alpha_z = two_sphere_anisotropy(reference_rod)
    assert alpha_x > alpha_z > 0


def test_alternative_scattering_geometry(reference_env):
    right = rate_scattering_alternative(2e-30, 1e-30, reference_env, math.pi / 2)
    assert rate_scattering_alternative(2e-30, 1e-30, reference_env, math.pi / 6) == pytest.approx(right / 4)
    assert rate_scattering_alternative(1e-30, 1e-30, reference_env, math.pi / 2) == 0.0


def test_explicit_polarizabilities_are_used(reference_rod, reference_env):
    result = budget(reference_rod, reference_env, THETA0, alpha_x=2e-30, alpha_z=1e-30)
    assert result.alternative_scattering_rate == rate_scattering_alternative(2e-30, 1e-30, reference_env, THETA0)
    assert isinstance(result, DecoherenceBudget)


def test_max_number_density(reference_rod, reference_env):
    density = max_number_density(reference_rod, reference_env, THETA0, target_time=1.0)
    assert density == pytest.approx(1e9 / 276.0, rel=2e-2)
    at_limit = decoherence_time(reference_rod, replace(reference_env, number_density=density), THETA0)
    assert at_limit == pytest.approx(1.0, rel=1e-9)


def test_max_number_density_when_photons_suffice(reference_rod, reference_env):
    assert max_number_density(reference_rod, reference_env, THETA0, target_time=1e6) == 0.0
    assert math.isinf(max_number_density(reference_rod, reference_env, 0.0, target_time=1.0))
    with pytest.raises(PhysicsDomainError):
        max_number_density(reference_rod, reference_env, THETA0, target_time=0.0)


def test_cold_to_room_ratio_follows_collisions(reference_rod, reference_env):
    room = decoherence_time(reference_rod, reference_env, THETA0)
    cold = decoherence_time(reference_rod, reference_env.with_temperature(1.0), THETA0)
    assert cold / room == pytest.approx(300 ** 1.5, rel=0.02)


def test_splitting_a_species_changes_nothing(reference_rod, reference_env):
    n2, o2 = reference_env.species
    half = GasSpecies(n2.name, n2.molecular_mass, n2.fraction / 2)
    split = Environment((half, half, o2), reference_env.number_density, 300.0, 300.0)
    assert rate_collisional(reference_rod, split, THETA0) == pytest.approx(
        rate_collisional(reference_rod, reference_env, THETA0), rel=1e-12
    )


def _random_draws(count=20, seed=20240617):
    rng = np.random.default_rng(seed)
    return [
        {
            "rod": Nanorod(
                sphere_radius=float(rng.uniform(1e-9, 1e-7)),
                half_length=float(rng.uniform(1e-6, 1e-4)),
                mass=float(10 ** rng.uniform(-22, -18)),
                dielectric=complex(rng.uniform(1.5, 10.0), rng.uniform(1e-5, 1e-2)),
            ),
            "density": float(10 ** rng.uniform(6, 12)),
            "temperature": float(10 ** rng.uniform(-1, 2.5)),
            "theta": float(rng.uniform(1e-4, math.pi - 1e-4)),
        }
        for _ in range(count)
    ]


@pytest.mark.parametrize("draw", _random_draws())
def test_temperature_power_laws(draw):
    rod, theta = draw["rod"], draw["theta"]
    cool = Environment.air(draw["density"], draw["temperature"])
    warm = cool.with_temperature(2 * draw["temperature"])
    assert rate_collisional(rod, warm, theta) / rate_collisional(rod, cool, theta) == pytest.approx(2 ** 1.5, rel=1e-12)
    assert rate_photon_scattering(rod, warm, theta) / rate_photon_scattering(rod, cool, theta) == pytest.approx(2 ** 9, rel=1e-12)
    assert rate_emission(rod, warm, theta) / rate_emission(rod, cool, theta) == pytest.approx(2 ** 6, rel=1e-12)
    assert rate_absorption(rod, warm, theta) / rate_absorption(rod, cool, theta) == pytest.approx(2 ** 6, rel=1e-12)
    assert rate_scattering_alternative(2e-30, 1e-30, warm, theta) / rate_scattering_alternative(
        2e-30, 1e-30, cool, theta
    ) == pytest.approx(2 ** 7, rel=1e-12)


@pytest.mark.parametrize("draw", _random_draws(seed=7))
def test_angular_dependence(draw):
    rod, theta = draw["rod"], draw["theta"]
    env = Environment.air(draw["density"], draw["temperature"])
    reference_angle = 1.0
    for rate in (rate_collisional, rate_photon_scattering, rate_emission, rate_absorption):
        assert rate(rod, env, theta) / math.sin(theta / 2) ** 2 == pytest.approx(
            rate(rod, env, reference_angle) / math.sin(reference_angle / 2) ** 2, rel=1e-12
        )
    alternative = rate_scattering_alternative(2e-30, 1e-30, env, theta) / math.sin(theta) ** 2
    assert alternative == pytest.approx(
        rate_scattering_alternative(2e-30, 1e-30, env, reference_angle) / math.sin(reference_angle) ** 2,
        rel=1e-12,
    )


@pytest.mark.parametrize("draw", _random_draws(count=10, seed=11))
def test_total_is_monotone(draw):
    rod, theta = draw["rod"], draw["theta"]
    env = Environment.air(draw["density"], draw["temperature"])
    base = budget(rod, env, theta).rate_total
    assert budget(rod, replace(env, number_density=2 * env.number_density), theta).rate_total >= base
    assert budget(rod, env.with_temperature(2 * draw["temperature"]), theta).rate_total >= base
    assert budget(rod, replace(env, temperature_internal=2 * draw["temperature"]), theta).rate_total >= base
    assert budget(rod, env, min(theta * 1.5, math.pi)).rate_total >= base
