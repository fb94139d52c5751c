"""Smoke tests for the compiled extension: build a packet, evolve it exactly,
check conservation laws, observables, entropies, and the scenario runner."""

import csv
import json
import math
import os

import pytest

import lambdacav as lc


@pytest.fixture(scope="module")
def system():
    a = lc.atom("li6")
    c = lc.coupling(a, 3.0, 3.0)
    p0 = lc.packet(nbar1=1.0, nbar2=1.0, zetas=[1.0, 0.0, 0.0])
    return a, c, p0


def test_atom_and_coupling(system):
    a, c, _ = system
    assert a.label == "li6"
    assert a.omega3 == 1.0
    assert a.omega2 == pytest.approx(1.0 / 3.0)
    assert c.mu13 == pytest.approx(a.gamma_bar * math.sqrt(1.5))
    assert c.equal_detuning()


def test_packet_initial_state(system):
    _, _, p0 = system
    assert p0.norm2() == pytest.approx(1.0, abs=1e-12)
    assert p0.tail_mass < 1e-11
    # Separable coherent x level-1 packet: amplitude on |0,0>|1> is e^{-nbar}.
    amp = p0.fock_amplitude(0, 0, 1)
    assert amp.real == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert amp.imag == 0.0
    assert lc.level_populations(p0)[0] == pytest.approx(1.0, abs=1e-12)


def test_exact_evolution_conserves_invariants(system):
    a, c, p0 = system
    ev = lc.Evolver(p0, c, a)
    before = lc.conserved(p0, c, a)
    pt = ev.evolve(p0, 200.0)
    after = lc.conserved(pt, c, a)
    assert pt.time == pytest.approx(200.0)
    assert pt.norm2() == pytest.approx(1.0, abs=1e-10)
    for key in ("energy", "m1", "m2"):
        assert after[key] == pytest.approx(before[key], abs=1e-10)
    # Population actually moved out of level 1.
    assert lc.level_populations(pt)[0] < 0.999


def test_observables_and_entropies(system):
    a, c, p0 = system
    ev = lc.Evolver(p0, c, a)
    pt = ev.evolve(p0, 150.0)

    rho = lc.atomic_rdm(pt)
    trace = sum(rho[k][k].real for k in range(3))
    assert trace == pytest.approx(1.0, abs=1e-10)

    marg = lc.photon_marginal(pt, 1)
    assert sum(marg) == pytest.approx(1.0, abs=1e-10)
    assert abs(lc.mandel_q(marg)) < 1.0

    # Coherent state at t=0: unit phase-space area, Poissonian statistics.
    assert lc.phase_area(p0, 1) == pytest.approx(1.0, abs=1e-9)
    assert lc.mandel_q(lc.photon_marginal(p0, 1)) == pytest.approx(0.0, abs=1e-9)

    # Pure joint state: atomic and field entropies agree.
    s_atom = lc.atom_entropy(pt)
    assert 0.0 <= s_atom <= math.log(3.0) + 1e-12
    assert 0.0 <= lc.atom_linear_entropy(pt) <= 2.0 / 3.0 + 1e-12
    assert lc.mode_entropy(pt, 1) >= 0.0


def test_oracle_agreement(system):
    a, c, _ = system
    report = lc.oracle_compare(
        1.0, 1.0, [1.0, 0.0, 0.0], [0.0, 0.0, 0.0], c, a, [0.0, 50.0, 100.0]
    )
    assert report["analytic_compared"]
    assert report["max_block_deviation"] < 1e-8
    assert report["max_state_distance"] < 1e-10


def test_scenario_runner(tmp_path):
    config = {
        "atom": "li6",
        "intensity_ratio_1": 3.0,
        "intensity_ratio_2": 3.0,
        "nbar1": 1.0,
        "nbar2": 1.0,
        "zetas": [1.0, 0.0, 0.0],
        "t_end": 20.0,
        "steps": 10,
    }
    out = tmp_path / "run"
    result = lc.run(json.dumps(config), str(out))
    assert result["exit_code"] == 0

    with open(out / "observables.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 11
    assert float(rows[0]["P1"]) == pytest.approx(1.0, abs=1e-12)
    with open(out / "manifest.json") as fh:
        manifest = json.load(fh)
    assert manifest["evolution"] == "analytic"
    assert manifest["columns"] == lc.csv_columns()


def test_preset_names_and_errors():
    names = lc.preset_names()
    assert "li6/state1" in names and "rb87/raman2" in names
    with pytest.raises(lc.ConfigError):
        lc.run("{}", os.devnull)
