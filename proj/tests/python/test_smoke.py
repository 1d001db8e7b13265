import math

import pytest

import nvpulse


def test_version():
    assert nvpulse.__version__ == "0.1.0"


def test_transition_frequencies():
    w = [x / (2 * math.pi * 1e6) for x in nvpulse.transition_frequencies()]
    assert len(w) == 2
    assert abs(w[0] - abs(3.0 - 4.316 * 0.62)) < 1e-9
    assert abs(w[1] - (0.413 + 10.705 * 0.62)) < 1e-9


def test_x_gate_synthesis():
    r = nvpulse.synthesize("x", qubit=1, angle=math.pi, tau=1e-6, basis_count=3)
    assert len(r["coefficients"]) == 3
    assert 0 <= r["averaged_infidelity"] <= 1e-5
    assert r["gradient_residual"] < 1e-10


def test_qft():
    assert nvpulse.qft_pulse_count(3) == 60
    assert abs(nvpulse.qft_fidelity(3, reference_pulse_count=75) - 0.964) <= 0.01


def test_misalignment_reference_site():
    theta, infid = nvpulse.misalignment(0.412, 0.060)
    assert abs(theta - 0.0085) <= 2e-4
    assert 1e-3 <= infid <= 1e-2


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        nvpulse.synthesize("toffoli")
    with pytest.raises(ValueError):
        nvpulse.qft_fidelity(6)


def test_config_hash_ignores_key_order():
    assert nvpulse.config_hash('{"a": 1, "b": 2}') == nvpulse.config_hash('{"b": 2, "a": 1}')
    assert len(nvpulse.config_hash("{}")) == 16
