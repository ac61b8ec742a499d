"""Smoke tests for the python bindings: one pass over each main operation."""

import json
import math

import numpy as np
import pytest

import sykmagic as sm


def test_sector_enumeration():
    basis = sm.enumerate_sector(4, 2)
    assert len(basis) == 6
    assert basis.states[0] == 0b0011
    assert basis.rank(basis.states[3]) == 3
    assert sm.binomial(14, 7) == 3432


def test_majorana_string_roundtrip():
    s = sm.MajoranaString(0b10011, 3)
    assert s.human_name() == "eta1.chi1.eta3"
    assert sm.MajoranaString.from_hex(s.to_hex(), 3).bits == s.bits
    assert sm.MajoranaString.parity(3).weight == 6


def test_expectation_against_oracle():
    rng = np.random.default_rng(7)
    basis = sm.enumerate_sector(4, 2)
    v = rng.normal(size=6) + 1j * rng.normal(size=6)
    v /= np.linalg.norm(v)
    psi = sm.embed_sector_vector(v, basis)
    for s in sm.even_strings(4):
        fast = sm.expectation(s, psi)
        dense = sm.dense_oracle(s)
        slow = np.vdot(psi.amplitudes, dense @ psi.amplitudes).real
        assert abs(fast - slow) < 1e-12


def test_ground_state_pipeline():
    model = sm.sample_syk4(6, 1.0, 3)
    assert model.prng_id == sm.PRNG_ID
    basis = sm.enumerate_sector(6, 3)
    h = sm.build_sector_matrix(model, basis)
    assert np.allclose(h, h.conj().T)
    dec = sm.eig_hermitian(h)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    psi = sm.ground_state(dec, basis)
    spec = sm.exact_spectrum(psi)
    assert abs(sm.moments_zeta(spec, 1.0) - 1.0) < 1e-10
    r = sm.filtered_sre(spec, 2.0)
    assert r.m_filtered > r.m > 0


def test_stabilizer_state_zero_magic():
    psi = sm.product_state("1010")
    spec = sm.exact_spectrum(psi)
    assert spec.unit_peak == 16
    assert abs(sm.sre(spec, 2.0).m) < 1e-12


def test_sampler_matches_exact():
    model = sm.sample_syk4(6, 1.0, 11)
    basis = sm.enumerate_sector(6, 3)
    psi = sm.ground_state(sm.eig_hermitian(sm.build_sector_matrix(model, basis)), basis)
    exact = sm.filtered_sre(sm.exact_spectrum(psi), 2.0).m_filtered

    cfg = sm.ChainConfig()
    cfg.n_samples = 50000
    cfg.seed = 5
    res = sm.run_chain(psi, cfg)[0]
    assert res.method == sm.SreMethod.Sampled
    assert abs(res.m_filtered - exact) < 4 * max(res.stderr_m_filtered, 1e-6)


def test_quench_series():
    plan = sm.QuenchPlan()
    plan.model = sm.sample_syk2(4, 1.0, 9)
    plan.initial_pattern = sm.cdw_pattern(4)
    plan.times = [0.0, 1.0, 10.0]
    series = sm.quench_series(plan)
    assert series[0].m2 == 0.0
    assert series[1].m2 > 0.0
    assert sm.saturation_mean(series) == pytest.approx(series[2].m2)


def test_fit_families():
    model = sm.sample_syk2(8, 1.0, 2)
    basis = sm.enumerate_sector(8, 4)
    psi = sm.ground_state(sm.eig_hermitian(sm.build_sector_matrix(model, basis)), basis)
    spec = sm.exact_spectrum(psi)
    lap = sm.fit_connected(spec, sm.DistributionFamily.Laplace)
    gau = sm.fit_connected(spec, sm.DistributionFamily.Gaussian)
    assert lap.log_likelihood > gau.log_likelihood
    assert gau.b_constrained == pytest.approx(2.0 / 258.0)


def test_experiment_roundtrip(tmp_path):
    config = {
        "schema_version": 1,
        "command": "gs-sre",
        "model": "syk4",
        "sizes": [4],
        "realizations": 2,
        "alphas": [2.0],
        "master_seed": 1,
        "workers": 1,
    }
    envelope = json.loads(sm.run_experiment(json.dumps(config)))
    tasks = envelope["results"]["tasks"]
    assert len(tasks) == 2 and all(t["ok"] for t in tasks)
    again = json.loads(sm.run_experiment(json.dumps(config)))
    assert again["results"] == envelope["results"]

    files = sm.export_figure_data(json.dumps(envelope), "fig2b", tmp_path)
    assert files and files[0].exists()


def test_evolution_is_unitary():
    model = sm.sample_syk4(6, 1.0, 21)
    basis = sm.enumerate_sector(6, 3)
    dec = sm.eig_hermitian(sm.build_sector_matrix(model, basis))
    rng = np.random.default_rng(1)
    v = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    v /= np.linalg.norm(v)
    out = sm.evolve(dec, v, 7.5)
    assert math.isclose(np.linalg.norm(out), 1.0, abs_tol=1e-12)
