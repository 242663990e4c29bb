"""Scalar building blocks: chord lengths, the shape factor psi, the
symmetric-configuration value i0, and the closed-form bounds around it.

Expected constants were frozen from a 50-digit reference evaluation of the
same formulas; comparisons use rel 1e-12 unless the value is exact in
binary64.
"""

import math

import numpy as np
import pytest

from extremal_radii import (
    DomainError,
    Params,
    SigmaPair,
    case_a_bound,
    chord,
    dlog_i0_printed,
    dlog_i0_termwise,
    dlog_i0_true,
    dlog_i0_upper_bound,
    dlog_i0_upper_bound_terms,
    i0,
    kuzmina_bound,
    lemma1_threshold,
    log_i0,
    log_psi_second_derivative,
    psi,
)
from extremal_radii.scalars import PRODUCT_BOUND_CONSTANT


def test_chord_endpoints_and_peak():
    assert chord(0.0) == 0.0
    assert chord(2.0) == pytest.approx(0.0, abs=1e-15)
    assert chord(1.0) == pytest.approx(2.0, rel=1e-15)
    assert chord(0.5) == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_chord_folds_above_one():
    # arcs alpha and 2 - alpha subtend the same chord
    for alpha in (1.1, 1.5, 1.75, 1.999):
        assert chord(alpha) == chord(2.0 - alpha)


@pytest.mark.parametrize("alpha", [-0.5, -1e-9, 2.0 + 1e-9, 3.0])
def test_chord_domain(alpha):
    with pytest.raises(DomainError):
        chord(alpha)


def test_psi_frozen_values():
    assert psi(0.0) == 0.0
    assert psi(0.2) == pytest.approx(0.12202466322398425, rel=1e-12)
    assert psi(1.0) == pytest.approx(0.9123559809416305, rel=1e-12)
    assert psi(math.sqrt(1.7)) == pytest.approx(0.6093018100958166, rel=1e-12)


def test_psi_at_two_is_one_sixteenth():
    # the log-space product hits 1/16 only to within an ulp
    assert psi(2.0) == pytest.approx(1.0 / 16.0, rel=1e-12)


@pytest.mark.parametrize("sigma", [-0.1, 2.0000001, math.nan])
def test_psi_domain(sigma):
    with pytest.raises(DomainError):
        psi(sigma)


def test_log_psi_second_derivative_value():
    assert log_psi_second_derivative(1.0) == pytest.approx(
        -5.09861228866811, rel=1e-12)


def test_log_psi_second_derivative_matches_finite_difference():
    rng = np.random.default_rng(7)
    for sigma in rng.uniform(0.1, 1.9, size=25):
        h = 1e-5
        fd = (math.log(psi(sigma + h)) - 2.0 * math.log(psi(sigma))
              + math.log(psi(sigma - h))) / (h * h)
        assert log_psi_second_derivative(sigma) == pytest.approx(fd, abs=5e-4)


@pytest.mark.parametrize("sigma", [0.0, 2.0, -1.0])
def test_log_psi_second_derivative_open_interval(sigma):
    with pytest.raises(DomainError):
        log_psi_second_derivative(sigma)


def test_i0_frozen_values():
    assert i0(3, 1.7) == pytest.approx(0.3763528361597791, rel=1e-12)
    assert i0(3, 1.5) == pytest.approx(0.4381015407398572, rel=1e-12)
    assert math.exp(log_i0(3, 1.7)) == pytest.approx(i0(3, 1.7), rel=1e-14)


def test_i0_at_gamma_one_matches_closed_form():
    assert i0(3, 1.0) == pytest.approx(27.0 * 4.0 ** (-8.0 / 3.0), rel=1e-12)
    assert PRODUCT_BOUND_CONSTANT == pytest.approx(9.0 * 4.0 ** (-8.0 / 3.0),
                                                   rel=1e-15)


@pytest.mark.parametrize("n,gamma", [(3, 0.0), (3, 9.0), (3, -1.0), (2, 4.0)])
def test_i0_domain(n, gamma):
    with pytest.raises(DomainError):
        i0(n, gamma)


def test_params_validation():
    p = Params(3, 1.7)
    assert p.n == 3 and p.gamma == 1.7
    with pytest.raises(DomainError):
        Params(1, 0.5)
    with pytest.raises(DomainError):
        Params(3, 0.0)
    with pytest.raises(DomainError):
        Params(3, 3.5)


def test_sigma_pair_enforces_sum():
    root = math.sqrt(1.7)
    pair = SigmaPair(root, root, 1.7)
    assert pair.sigma1 == root
    with pytest.raises(DomainError):
        SigmaPair(0.5, 0.6, 1.7)
    with pytest.raises(DomainError):
        SigmaPair(-0.1, 2.0 * root + 0.1, 1.7)


def test_lemma1_threshold_value_and_roundtrip():
    q = i0(3, 1.7)
    p0 = lemma1_threshold(q, Params(3, 1.7))
    assert p0 == pytest.approx(2.1206316360062605, rel=1e-12)
    assert p0 ** (1.7 - 3.0) == pytest.approx(q, rel=1e-12)
    # tuple form is accepted too
    assert lemma1_threshold(q, (3, 1.7)) == p0


def test_lemma1_threshold_rejects_gamma_equal_n():
    with pytest.raises(DomainError):
        lemma1_threshold(0.5, (3, 3.0))


def test_case_a_bound_values():
    assert case_a_bound(1.7) == pytest.approx(0.29361076157730887, rel=1e-12)
    assert case_a_bound(1.5) == pytest.approx(0.14663555786813962, rel=1e-12)
    assert case_a_bound(1.7) < i0(3, 1.7)


@pytest.mark.parametrize("gamma", [1.0, 3.0, 0.5, 4.0])
def test_case_a_bound_domain(gamma):
    with pytest.raises(DomainError):
        case_a_bound(gamma)


def test_dlog_true_vs_termwise():
    assert dlog_i0_true(1.7) == pytest.approx(-0.7378032559379744, abs=1e-9)
    assert abs(dlog_i0_true(1.7) - dlog_i0_termwise(1.7)) <= 1e-8
    rng = np.random.default_rng(11)
    for gamma in rng.uniform(0.2, 8.5, size=40):
        assert abs(dlog_i0_true(gamma) - dlog_i0_termwise(gamma)) <= 1e-8


def test_dlog_printed_differs_from_true():
    # the printed expansion carries a sign slip and a misplaced factor;
    # it is reproduced verbatim, never repaired
    assert dlog_i0_printed(1.7) == pytest.approx(-1.355621535794418, rel=1e-12)
    assert abs(dlog_i0_printed(1.7) - dlog_i0_true(1.7)) > 0.5


def test_upper_bound_terms_frozen():
    terms = dlog_i0_upper_bound_terms()
    assert len(terms) == 5
    assert terms[0] == pytest.approx(-0.09343398838471946, rel=1e-12)
    assert terms[1] == pytest.approx(-1.0 / 3.0, rel=1e-15)
    assert terms[2] == pytest.approx(0.11863179653639523, rel=1e-12)
    assert terms[3] == pytest.approx(0.4885844748858447, rel=1e-12)
    assert terms[4] == pytest.approx(-0.5632993161855452, rel=1e-12)
    assert dlog_i0_upper_bound() == pytest.approx(math.fsum(terms), rel=1e-14)
    assert dlog_i0_upper_bound() == pytest.approx(-0.382850366481358, rel=1e-12)


def test_upper_bound_dominates_true_derivative_on_window():
    bound = dlog_i0_upper_bound(1.5, 1.7)
    for gamma in np.linspace(1.5, 1.7, 21):
        assert dlog_i0_true(float(gamma)) <= bound


def test_kuzmina_bound_symmetric():
    s = math.sqrt(3.0)
    value = kuzmina_bound((s, s, s), (1.0, 1.0, 1.0))
    assert value == pytest.approx(27.0 * 4.0 ** (-8.0 / 3.0), rel=1e-12)


def test_kuzmina_bound_shrinks_with_chords():
    base = kuzmina_bound((1.5, 1.5, 1.5), (1.0, 1.0, 1.0))
    smaller = kuzmina_bound((1.4, 1.5, 1.5), (1.0, 1.0, 1.0))
    assert smaller < base


def test_kuzmina_bound_argument_checks():
    with pytest.raises(DomainError):
        kuzmina_bound((1.0, 1.0), (1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        kuzmina_bound((1.0, 1.0, -1.0), (1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        kuzmina_bound((1.0, 1.0, 1.0), (1.0, 0.0, 1.0))
