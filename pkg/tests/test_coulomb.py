"""Closed-form reference state for the -alpha/r potential."""
from __future__ import annotations

import math

import pytest
from scipy.integrate import quad

from diracomp import (AngularSector, ConfigError, Problem,
                      SupercriticalCouplingError, coulomb_ground,
                      coulomb_ground_for, make_potential)


def test_energy_is_mass_times_gamma():
    for alpha in (0.3, 0.508, 0.579, 0.8):
        for mass in (1.0, 2.0):
            g = coulomb_ground(mass, alpha)
            assert g.gamma == pytest.approx(math.sqrt(1.0 - alpha * alpha),
                                            abs=0.0)
            assert g.energy == pytest.approx(mass * g.gamma, abs=0.0)


def test_reference_gammas():
    assert coulomb_ground(2.0, 0.508).energy \
        == pytest.approx(1.7227141376328226, rel=1e-15)
    assert coulomb_ground(1.0, 0.579).energy \
        == pytest.approx(0.8153275415438878, rel=1e-15)


def test_profile_is_normalized():
    g = coulomb_ground(1.0, 0.579)
    val, _ = quad(lambda r: g.psi1(r) ** 2 + g.psi2(r) ** 2, 0.0, 60.0,
                  limit=200)
    assert val == pytest.approx(1.0, abs=1e-10)


def test_component_ratio_constant():
    g = coulomb_ground(1.0, 0.508)
    expected = -math.sqrt((1.0 - g.gamma) / (1.0 + g.gamma))
    assert g.ratio == pytest.approx(expected, abs=0.0)
    for r in (0.1, 1.0, 5.0, 20.0):
        assert g.psi2(r) / g.psi1(r) == pytest.approx(expected, rel=1e-13)


def test_signs_and_decay():
    g = coulomb_ground(1.5, 0.4)
    assert g.psi1(2.0) > 0.0
    assert g.psi2(2.0) < 0.0
    assert abs(g.psi1(30.0)) < abs(g.psi1(3.0))


def test_supercritical_rejected():
    with pytest.raises(SupercriticalCouplingError):
        coulomb_ground(1.0, 1.0)
    with pytest.raises(ConfigError):
        coulomb_ground(1.0, -0.5)
    with pytest.raises(ConfigError):
        coulomb_ground(0.0, 0.5)


def test_ground_for_problem_guards():
    good = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                   make_potential("coulomb", v=0.579))
    assert coulomb_ground_for(good).energy \
        == pytest.approx(0.8153275415438878, rel=1e-15)
    other_family = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                           make_potential("yukawa", v=0.5, lam=0.2))
    with pytest.raises(ConfigError):
        coulomb_ground_for(other_family)
    higher_sector = Problem(1.0, AngularSector.from_j(5, 0.5, -1),
                            make_potential("coulomb", v=0.579))
    with pytest.raises(ConfigError):
        coulomb_ground_for(higher_sector)
