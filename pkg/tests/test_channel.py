import math

import numpy as np
import pytest

from sem_ofdm.channel import ChannelConfig, noise_sigma, transmit
from sem_ofdm.ofdm import OfdmConfig


def test_noise_sigma_reference():
    assert noise_sigma(10, 1.0) ** 2 == pytest.approx(0.05)
    assert noise_sigma(10, 1.0) == pytest.approx(0.2236, abs=1e-4)
    assert noise_sigma(math.inf, 1.0) == 0.0


def test_noise_sigma_scales_with_optical_power():
    assert noise_sigma(13, 2.0, p_opt=3.0) == pytest.approx(3 * noise_sigma(13, 2.0))


def test_noise_sigma_rejects_bad_rate():
    with pytest.raises(ValueError):
        noise_sigma(10, 0.0)


def test_bits_per_sample():
    assert OfdmConfig(n=64).bits_per_sample == 1.0
    assert OfdmConfig(n=256).bits_per_sample == 1.0
    assert OfdmConfig(n=64, scheme="DCO", bias_db=7).bits_per_sample == pytest.approx(31 * 4 / 64)
    assert OfdmConfig(n=64, n_cp=16).bits_per_sample == pytest.approx(64 / 80)


def test_channel_config_sigma():
    cfg = ChannelConfig(10.0, bits_per_sample=1.0)
    assert cfg.sigma_w == pytest.approx(math.sqrt(0.05))
    assert cfg.sigma_w > 0


def test_transmit_identity():
    x = np.linspace(0, 2, 50)
    assert np.array_equal(transmit(x, np.zeros(50), 0.0, np.random.default_rng(0)), x)


def test_transmit_noise_variance(rng):
    y = transmit(np.zeros(10**6), np.zeros(10**6), 0.3, rng)
    assert np.var(y) == pytest.approx(0.09, rel=0.005)


def test_transmit_deterministic():
    x, s = np.ones(1000), np.full(1000, 0.1)
    a = transmit(x, s, 0.2, np.random.Generator(np.random.Philox(5)))
    b = transmit(x, s, 0.2, np.random.Generator(np.random.Philox(5)))
    assert np.array_equal(a, b)


def test_transmit_length_mismatch():
    with pytest.raises(ValueError):
        transmit(np.zeros(10), np.zeros(11), 0.1, np.random.default_rng())
