"""Disk configurations: feasibility, the product functional, the random
search, and the pairwise checks."""

import math

import numpy as np
import pytest

from extremal_radii import (
    AngleSystem,
    DiskConfiguration,
    DomainError,
    InfeasibleConfigurationError,
    functional_value,
    i0,
    kuzmina_check,
    lavrentiev_check,
    maximize_over_disks,
    random_configuration,
    symmetric_configuration,
)


def make_symmetric(radius=0.4, p=0.3):
    thetas = (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)
    return DiskConfiguration(p=p, satellites=tuple(
        (t, radius) for t in thetas))


def test_angle_system_partitions_the_circle():
    system = AngleSystem((0.5, 0.5, 1.0))
    thetas = system.thetas()
    assert thetas[0] == 0.0
    assert thetas[1] == pytest.approx(0.5 * math.pi)
    assert thetas[2] == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        AngleSystem((0.5, 0.5))
    with pytest.raises(DomainError):
        AngleSystem((0.5, -0.1, 1.6))


def test_feasible_configuration_constructs():
    config = make_symmetric()
    assert config.p == 0.3
    assert len(config.satellites) == 3


def test_center_overlap_rejected():
    with pytest.raises(InfeasibleConfigurationError) as err:
        make_symmetric(radius=0.8, p=0.3)
    assert 0 in err.value.pair


def test_satellite_overlap_rejected():
    # two satellites 0.1 rad apart, chord about 0.0999
    with pytest.raises(InfeasibleConfigurationError) as err:
        DiskConfiguration(p=0.1, satellites=((0.0, 0.06), (0.1, 0.06),
                                             (math.pi, 0.3)))
    assert err.value.pair == (1, 2)


def test_parameter_validation():
    # bad scalars are domain errors; only overlaps count as infeasibility
    with pytest.raises(DomainError):
        DiskConfiguration(p=0.0, satellites=((0.0, 0.1), (1.0, 0.1)))
    with pytest.raises(DomainError):
        DiskConfiguration(p=0.1, satellites=((0.0, -0.1), (1.0, 0.1)))
    with pytest.raises(DomainError):
        DiskConfiguration(p=0.1, satellites=((7.0, 0.1), (1.0, 0.1)))


def test_round_trip_dict():
    config = make_symmetric()
    again = DiskConfiguration.from_dict(config.to_dict())
    assert again == config


def test_rotation_preserves_value():
    config = make_symmetric()
    for delta in (0.3, 1.0, 5.9):
        rotated = config.rotated(delta)
        assert functional_value(rotated, 1.7) == pytest.approx(
            functional_value(config, 1.7), rel=1e-12)


def test_functional_value_exact_at_gamma_one():
    config = symmetric_configuration(1.0, 3)
    assert functional_value(config, 1.0) == 27.0 / 256.0


def test_symmetric_configuration_shape():
    config = symmetric_configuration(1.7, 3)
    assert config.p == pytest.approx(1.7 / 4.7, rel=1e-15)
    radii = [r for _, r in config.satellites]
    assert radii[0] == radii[1] == radii[2]
    assert config.p + radii[0] <= 1.0


def test_random_configurations_are_feasible():
    rng = np.random.default_rng(42)
    for _ in range(500):
        config = random_configuration(3, rng)
        assert config.p > 0.0
        for theta, r in config.satellites:
            assert 0.0 <= theta < 2.0 * math.pi
            assert config.p + r <= 1.0
        # construction already enforces chord separation; re-run it
        DiskConfiguration(p=config.p, satellites=config.satellites)


def test_random_configuration_respects_fixed_p():
    rng = np.random.default_rng(1)
    config = random_configuration(3, rng, p=0.25)
    assert config.p == 0.25


def test_search_beats_symmetric_seed_and_is_deterministic():
    first = maximize_over_disks(1.7, 3, 4_000, seed=5, restarts=2)
    second = maximize_over_disks(1.7, 3, 4_000, seed=5, restarts=2)
    assert first.value == second.value
    assert first.best == second.best
    sym = functional_value(symmetric_configuration(1.7, 3), 1.7)
    assert first.value >= sym
    assert first.value < i0(3, 1.7)


def test_search_argument_validation():
    with pytest.raises(DomainError):
        maximize_over_disks(1.7, 3, 0, seed=0)
    with pytest.raises(DomainError):
        maximize_over_disks(1.7, 3, 100, seed=-1)
    with pytest.raises(DomainError):
        maximize_over_disks(0.0, 3, 100, seed=0)


def test_lavrentiev_check():
    assert lavrentiev_check(0.5, 0.5, 1.0)
    assert lavrentiev_check(1.0, 1.0, 1.0)
    assert not lavrentiev_check(1.0, 1.0, 0.5)


def test_kuzmina_check_on_symmetric_triple():
    config = symmetric_configuration(1.0, 3)
    check = kuzmina_check(config)
    assert check.holds
    # lhs is p * r1 * r2 * r3 regardless of the functional exponent
    assert check.lhs == functional_value(config, 1.0)
    assert check.rhs == pytest.approx(27.0 * 4.0 ** (-8.0 / 3.0), rel=1e-12)
    assert check.lhs < check.rhs


def test_kuzmina_check_needs_three_satellites():
    config = DiskConfiguration(p=0.2, satellites=((0.0, 0.3), (math.pi, 0.3)))
    with pytest.raises(DomainError):
        kuzmina_check(config)


def test_random_sweep_never_beats_symmetric_value_bound():
    # spot check of the global upper bound on a seeded sample
    rng = np.random.default_rng(2024)
    for gamma in (0.5, 1.0, 1.7):
        cap = i0(3, gamma)
        for _ in range(300):
            config = random_configuration(3, rng)
            assert functional_value(config, gamma) < cap
