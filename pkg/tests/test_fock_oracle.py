"""Tests for the truncated-basis matrix-exponential oracle."""

import math

import numpy as np
import pytest

from squeezelab.fock_oracle import (TrustRegionError, annihilation,
                                    bogoliubov_residual, build_squeeze,
                                    creation, default_dim, oracle_amplitude,
                                    trusted_dim)
from squeezelab.squeezed_number import SqueezedNumberState, fock_amplitude


def test_ladder_matrix_entries():
    a = annihilation(5)
    assert a[0, 1] == 1.0 and a[1, 2] == pytest.approx(math.sqrt(2))
    assert np.count_nonzero(a) == 4
    assert np.array_equal(creation(5), a.T)


def test_build_squeeze_identity_at_r_zero():
    s = build_squeeze(0.0, 64)
    assert np.allclose(s.entries, np.eye(64), atol=1e-15)


def test_build_squeeze_rejects_tiny_dim():
    with pytest.raises(ValueError):
        build_squeeze(0.5, 1)
    with pytest.raises(TrustRegionError):
        build_squeeze(2.5, 64)  # e^{-2r}/3 leaves no trusted block


def test_vacuum_column_matches_squeezed_vacuum_law():
    # |<n|0,r>|^2 = n!/((n/2)!^2 2^n) tanh^n r / cosh r on trusted rows
    r = 1.0
    s = build_squeeze(r, default_dim(0, r))
    for n in range(0, s.trusted, 2):
        want = (math.factorial(n) / (math.factorial(n // 2) ** 2 * 2 ** n)
                * math.tanh(r) ** n / math.cosh(r))
        assert s.entries[n, 0] ** 2 == pytest.approx(want, abs=1e-9)


def test_unitarity_on_trusted_block():
    s = build_squeeze(1.0, 256)
    gram = s.entries.T @ s.entries
    block = gram[: s.trusted, : s.trusted]
    assert np.abs(block - np.eye(s.trusted)).max() < 1e-10


def test_oracle_amplitude_trivials():
    for nm in (0, 3, 7):
        assert oracle_amplitude(nm, nm, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert abs(oracle_amplitude(1, 0, 0.9)) < 1e-12  # parity


def test_oracle_amplitude_matches_closed_form_spec_point():
    got = oracle_amplitude(11, 7, 1.4, dim=400)
    want = fock_amplitude(11, SqueezedNumberState(7, 1.4))
    assert got == pytest.approx(want, abs=1e-8)


def test_oracle_amplitude_outside_trusted_block_raises():
    with pytest.raises(TrustRegionError):
        oracle_amplitude(380, 0, 1.4, dim=400)


def test_trusted_block_is_dim_stable_under_doubling():
    for r, dim in ((0.8, 200), (1.4, 600)):
        s1 = build_squeeze(r, dim)
        s2 = build_squeeze(r, 2 * dim)
        t = s1.trusted
        assert np.abs(s1.entries[:t, :t] - s2.entries[:t, :t]).max() < 1e-10


def test_trusted_dim_scales_down_with_squeezing():
    assert trusted_dim(600, 1.4) < trusted_dim(600, 0.5) <= math.floor(0.8 * 600)
    # the default dim heuristic always keeps the requested index trusted
    for m in (0, 7, 12, 40):
        for r in (0.0, 0.8, 1.4, 2.0):
            assert trusted_dim(default_dim(m, r), r) > m


def test_bogoliubov_residual_zero_squeeze():
    assert bogoliubov_residual(0.0, 64) < 1e-12


@pytest.mark.parametrize("r,dim", [(0.8, 200), (1.4, 600)])
def test_bogoliubov_residual_on_trusted_interior(r, dim):
    assert bogoliubov_residual(r, dim) < 1e-8


def test_bogoliubov_residual_decays_with_dim():
    # convergence study: fixed block, growing basis
    block = 40
    r1 = bogoliubov_residual(0.8, 200, block=block)
    r2 = bogoliubov_residual(0.8, 400, block=block)
    assert r1 > 1e-2      # block 40 is not converged at dim 200
    assert r2 < 1e-8      # but is at dim 400
    assert r2 < r1


def test_bogoliubov_residual_validation():
    with pytest.raises(ValueError):
        bogoliubov_residual(0.5, 4)
    with pytest.raises(ValueError):
        bogoliubov_residual(0.5, 64, block=100)


def test_number_operator_eigenrelation_in_squeezed_basis():
    # N_b S e_m = m S e_m with N_b = S a^dag a S^dag from the same matrices
    r, dim = 0.9, 300
    s = build_squeeze(r, dim).entries
    num = np.diag(np.arange(float(dim)))
    nb = s @ num @ s.T
    interior = build_squeeze(r, dim).trusted
    for m in range(13):
        resid = nb @ s[:, m] - m * s[:, m]
        assert np.linalg.norm(resid[:interior]) < 1e-7
