"""Ground-state shooting solver."""
from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import quad

from diracomp import (AngularSector, NoBoundStateError, OneDim, Problem,
                      ShootingConfig, SolverError, UnsupportedPotentialError,
                      lemma_monotonicity_check, make_potential, solve_ground)
from helpers import reintegrate_norm

# independent eigenvalue references, each from a scipy solve_ivp
# node-count bisection at rtol 1e-11 (structurally different integrator
# and energy search than the package's own)
FIG1_E = 0.4923313563051849        # 1D exponential beta=0.9 b=0.5 m=1
WOODS_SAXON_D8_E = 0.623107420277228   # v=4 R=2 a=1.2, kd=-4.5, m=1
SECH2_E = 0.8831752320121535       # beta=0.3 b=0.2, kd=-1, m=1
HULTHEN_M2_E = 1.586040139704744   # v=0.2 lam=0.3, kd=-1, m=2


def _problem_1d(**params):
    return Problem(1.0, OneDim(), make_potential("exponential", **params))


def test_fig1_energy_against_independent_reference(fig1_solution):
    assert fig1_solution.energy == pytest.approx(FIG1_E, abs=2e-9)


def test_woods_saxon_high_d_energy(fig3_solution):
    assert fig3_solution.energy == pytest.approx(WOODS_SAXON_D8_E, abs=2e-9)


def test_radial_energies_against_independent_references():
    sech = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                   make_potential("sech2", beta=0.3, b=0.2))
    assert solve_ground(sech).energy == pytest.approx(SECH2_E, abs=2e-9)
    hul = Problem(2.0, AngularSector.from_j(3, 0.5, -1),
                  make_potential("hulthen", v=0.2, lam=0.3))
    assert solve_ground(hul).energy == pytest.approx(HULTHEN_M2_E, abs=2e-9)


def test_energy_bracket_tight_and_contains_energy(fig1_solution):
    lo, hi = fig1_solution.energy_bracket
    assert lo <= fig1_solution.energy <= hi
    assert hi - lo <= 2e-9


def test_solution_is_normalized(fig1_solution, fig3_solution):
    assert fig1_solution.norm_value == pytest.approx(1.0, abs=1e-10)
    assert fig3_solution.norm_value == pytest.approx(1.0, abs=1e-10)


def test_norm_reintegrates_to_one(fig1_solution, fig3_solution):
    assert reintegrate_norm(fig3_solution) == pytest.approx(1.0, abs=1e-9)
    assert reintegrate_norm(fig1_solution) == pytest.approx(1.0, abs=1e-9)
    # a generic adaptive integrator agrees at its own reported accuracy
    f1, f2 = fig3_solution.psi_functions()
    val, err = quad(lambda r: f1(r) ** 2 + f2(r) ** 2,
                    fig3_solution.r_min, fig3_solution.r_max, limit=400)
    assert val == pytest.approx(1.0, abs=max(3.0 * err, 1e-10))


def test_nodeless_signs_radial(fig3_solution):
    assert fig3_solution.nodes == (0, 0)
    sup1 = float(np.max(np.abs(fig3_solution.psi1)))
    sup2 = float(np.max(np.abs(fig3_solution.psi2)))
    assert np.all(fig3_solution.psi1 >= -1e-9 * sup1)
    assert np.all(fig3_solution.psi2 <= 1e-9 * sup2)


def test_nodeless_signs_one_dim(fig1_solution):
    # even ground state: psi1 positive; the odd partner crosses only at
    # the origin, which the half-line node count includes
    assert fig1_solution.nodes == (0, 1)
    sup1 = float(np.max(np.abs(fig1_solution.psi1)))
    assert np.all(fig1_solution.psi1 >= -1e-9 * sup1)


def test_origin_exponents_radial(fig3_solution):
    # bounded potential: psi1 ~ r^|kd|, psi2 ~ r^(|kd|+1)
    assert fig3_solution.exponents == pytest.approx((4.5, 5.5), abs=0.0)


def test_origin_exponent_fit(fig3_solution):
    sol = fig3_solution
    mask = sol.r <= 1e-3 * sol.classification.scale
    assert np.count_nonzero(mask) >= 10
    slope = np.polyfit(np.log(sol.r[mask]), np.log(sol.psi1[mask]), 1)[0]
    assert slope == pytest.approx(sol.exponents[0], abs=1e-3)


def test_coulomb_origin_exponent_fit():
    problem = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                      make_potential("coulomb", v=0.8))
    sol = solve_ground(problem)
    gamma = math.sqrt(1.0 - 0.64)
    assert sol.exponents[0] == pytest.approx(gamma, rel=1e-12)
    mask = sol.r <= 1e-3 * sol.classification.scale
    slope = np.polyfit(np.log(sol.r[mask]), np.log(sol.psi1[mask]), 1)[0]
    assert slope == pytest.approx(gamma, abs=1e-3)


def test_deterministic_resolve(fig1_solution):
    again = solve_ground(_problem_1d(beta=0.9, b=0.5))
    assert again.energy == fig1_solution.energy
    np.testing.assert_array_equal(again.psi1, fig1_solution.psi1)


def test_tolerance_refinement_is_stable():
    problem = _problem_1d(beta=0.9, b=0.5)
    loose = solve_ground(problem, ShootingConfig(energy_tol=1e-7))
    tight = solve_ground(problem, ShootingConfig(energy_tol=1e-11,
                                                 ode_rtol=1e-11))
    assert loose.energy == pytest.approx(tight.energy, abs=2e-7)
    assert tight.energy == pytest.approx(FIG1_E, abs=1e-10)


def test_user_r_max_is_honored():
    sol = solve_ground(_problem_1d(beta=0.9, b=0.5),
                       ShootingConfig(r_max=10.0))
    assert sol.r_max <= 10.0 + 1e-12
    assert sol.energy == pytest.approx(FIG1_E, abs=1e-6)


def test_no_bound_state_shallow_radial_well():
    weak = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                   make_potential("exponential", beta=0.05, b=1.0))
    with pytest.raises(NoBoundStateError):
        solve_ground(weak)


def test_free_potential_has_no_bound_state():
    with pytest.raises(NoBoundStateError):
        solve_ground(_problem_1d(beta=0.0, b=0.5))


def test_unsupported_potential_refused():
    slow = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                   make_potential("power_singular", v=0.4, q=0.3))
    with pytest.raises(UnsupportedPotentialError):
        solve_ground(slow)


def test_near_threshold_state_is_recorded_cleanly():
    # binding 5.7e-3: the growing-mode admixture forces a shortened
    # recording range, which must still yield a clean nodeless profile
    problem = Problem(1.0, AngularSector.from_j(3, 0.5, -1),
                      make_potential("osc_cubic", alpha=3.4, a=2.04, u=7.0,
                                     v=0.4, kappa=7.0, s=2.04))
    sol = solve_ground(problem)
    assert sol.nodes == (0, 0)
    assert sol.energy == pytest.approx(0.9942695, abs=5e-6)
    check = lemma_monotonicity_check(sol)
    assert check.violation1 < 1e-6
    assert check.violation2 < 1e-6


def test_lemma_monotonicity_on_references(fig1_solution, fig3_solution):
    for sol in (fig1_solution, fig3_solution):
        check = lemma_monotonicity_check(sol)
        assert check.violation1 < 1e-6
        assert check.violation2 < 1e-6


def test_header_dict_runs_clean(fig1_solution):
    head = fig1_solution.header_dict()
    assert head["energy"] == fig1_solution.energy
    assert head["class"] == "bounded"
    assert head["warnings"] == []


def test_wave_interpolants_match_grid(fig3_solution):
    f1, f2 = fig3_solution.psi_functions()
    mid = fig3_solution.r.size // 2
    r_mid = float(fig3_solution.r[mid])
    assert f1(r_mid) == pytest.approx(float(fig3_solution.psi1[mid]),
                                      rel=1e-10)
    assert f2(r_mid) == pytest.approx(float(fig3_solution.psi2[mid]),
                                      rel=1e-10)
    # beyond the recorded range the interpolants vanish
    assert f1(fig3_solution.r_max * 1.5) == 0.0
