"""Spin-chain Hamiltonians, exact diagonalization, and parameter sweeps."""

import math

import numpy as np
import pytest

from magicscope import oracle
from magicscope.pauli import MeasurementSet, format_pauli, parse_pauli
from magicscope.polytope import v_representation
from magicscope.spinchain import (
    GroundStateResult,
    SpinChainSpec,
    _dense_hamiltonian,
    apply_pauli,
    build_hamiltonian,
    ground_state,
    hamiltonian_measurement_set,
    pauli_expectation,
    sweep,
)
from util import pauli_matrix


def term_dict(terms):
    return {format_pauli(p): w for w, p in terms}


class TestSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SpinChainSpec("heisenberg", 4, {})
        with pytest.raises(ValueError):
            SpinChainSpec("tfim", 2, {})
        with pytest.raises(ValueError):
            SpinChainSpec("tfim", 15, {})
        with pytest.raises(ValueError):
            SpinChainSpec("tfim", 4, {}, boundary="twisted")
        with pytest.raises(ValueError):
            SpinChainSpec("tfim", 4, {"g": math.inf})

    def test_tfim_rejects_next_nearest_coupling(self):
        with pytest.raises(ValueError):
            build_hamiltonian(SpinChainSpec("tfim", 4, {"k": 0.5, "g": 1.0}))


class TestBuildHamiltonian:
    def test_tfim_periodic(self):
        terms = term_dict(
            build_hamiltonian(SpinChainSpec("tfim", 3, {"g": 1.0}))
        )
        assert terms == {
            "+ZZI": -1.0, "+IZZ": -1.0, "+ZIZ": -1.0,
            "+XII": -1.0, "+IXI": -1.0, "+IIX": -1.0,
        }

    def test_annni_open_no_field(self):
        terms = term_dict(
            build_hamiltonian(
                SpinChainSpec("annni", 4, {"k": 0.5, "g": 0.0}, boundary="open")
            )
        )
        assert terms == {
            "+ZZII": -1.0, "+IZZI": -1.0, "+IIZZ": -1.0,
            "+ZIZI": 0.5, "+IZIZ": 0.5,
        }

    def test_xxz_open_two_qubits(self):
        terms = term_dict(
            build_hamiltonian(
                SpinChainSpec("xxz", 3, {"delta": 1.0, "h": 0.0}, boundary="open")
            )
        )
        assert terms == {
            "+XXI": 0.25, "+YYI": 0.25, "+ZZI": 0.25,
            "+IXX": 0.25, "+IYY": 0.25, "+IZZ": 0.25,
        }

    def test_zero_weights_dropped(self):
        terms = build_hamiltonian(SpinChainSpec("tfim", 3, {"g": 0.0}))
        assert all(w != 0 for w, _ in terms)
        assert len(terms) == 3  # only the ZZ bonds remain


class TestApplyPauli:
    def test_matches_dense(self):
        rng = np.random.default_rng(12)
        for n in (1, 2, 3):
            state = oracle.random_pure_state(n, rng)
            for _ in range(8):
                x = int(rng.integers(0, 1 << n))
                z = int(rng.integers(0, 1 << n))
                k = ((x & z).bit_count() + 2 * int(rng.integers(0, 2))) % 4
                from magicscope.pauli import PauliString

                p = PauliString(n, k, x, z)
                assert np.allclose(apply_pauli(p, state), pauli_matrix(p) @ state)

    def test_expectation_examples(self):
        zero4 = np.zeros(16, dtype=complex)
        zero4[0] = 1.0
        assert pauli_expectation(zero4, parse_pauli("ZZII")) == pytest.approx(1.0)
        plus4 = np.full(16, 0.25, dtype=complex)
        assert pauli_expectation(plus4, parse_pauli("IIXI")) == pytest.approx(1.0)
        bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        assert pauli_expectation(bell, parse_pauli("YY")) == pytest.approx(-1.0)

    def test_non_hermitian_rejected(self):
        from magicscope.pauli import PauliString

        with pytest.raises(ValueError):
            pauli_expectation(np.array([1.0, 0.0]), PauliString(1, 1, 1, 0))


class TestGroundState:
    def test_classical_ising_limit(self):
        spec = SpinChainSpec("tfim", 4, {"g": 0.0})
        gs = ground_state(build_hamiltonian(spec))
        assert gs.energy == pytest.approx(-4.0)
        assert pauli_expectation(gs.state, parse_pauli("ZZII")) == pytest.approx(1.0)
        assert abs(pauli_expectation(gs.state, parse_pauli("XIII"))) < 1e-9
        assert gs.degenerate_flag  # all-up / all-down degeneracy

    def test_strong_field_limit(self):
        spec = SpinChainSpec("tfim", 4, {"g": 50.0})
        gs = ground_state(build_hamiltonian(spec))
        assert pauli_expectation(gs.state, parse_pauli("XIII")) >= 0.999

    def test_xxz_ferromagnet(self):
        spec = SpinChainSpec("xxz", 4, {"delta": -1.5, "h": 0.0})
        gs = ground_state(build_hamiltonian(spec))
        assert pauli_expectation(gs.state, parse_pauli("ZZII")) == pytest.approx(1.0)

    def test_eigenpair_residual_and_norm(self):
        spec = SpinChainSpec("tfim", 5, {"g": 0.7})
        terms = build_hamiltonian(spec)
        gs = ground_state(terms)
        h = _dense_hamiltonian(terms, 5)
        assert np.linalg.norm(h @ gs.state - gs.energy * gs.state) < 1e-8
        assert abs(np.linalg.norm(gs.state) - 1.0) < 1e-12
        assert gs.gap_estimate >= 0.0

    def test_krylov_path_matches_dense(self, monkeypatch):
        import magicscope.spinchain as sc

        spec = SpinChainSpec("annni", 6, {"k": 0.4, "g": 0.9})
        terms = build_hamiltonian(spec)
        dense = ground_state(terms)
        monkeypatch.setattr(sc, "DENSE_CUTOFF", 3)
        krylov = ground_state(terms)
        assert krylov.energy == pytest.approx(dense.energy, abs=1e-8)
        assert krylov.gap_estimate == pytest.approx(dense.gap_estimate, abs=1e-6)
        for p in ("ZZIIII", "XIIIII"):
            assert pauli_expectation(krylov.state, parse_pauli(p)) == pytest.approx(
                pauli_expectation(dense.state, parse_pauli(p)), abs=1e-6
            )

    def test_empty_terms_rejected(self):
        with pytest.raises(ValueError):
            ground_state([])


class TestPhysicalInvariants:
    def test_energy_consistency(self):
        for model, params in (
            ("annni", {"k": 0.3, "g": 0.7}),
            ("xxz", {"delta": -0.5, "h": 0.4}),
        ):
            spec = SpinChainSpec(model, 6, params)
            terms = build_hamiltonian(spec)
            gs = ground_state(terms)
            total = sum(w * pauli_expectation(gs.state, p) for w, p in terms)
            assert abs(total - gs.energy) < 1e-8

    def test_variational_bound(self):
        rng = np.random.default_rng(13)
        spec = SpinChainSpec("tfim", 5, {"g": 1.0})
        terms = build_hamiltonian(spec)
        gs = ground_state(terms)
        h = _dense_hamiltonian(terms, 5)
        for _ in range(10):
            # random product state
            phi = np.ones(1, dtype=complex)
            for _ in range(5):
                single = rng.normal(size=2) + 1j * rng.normal(size=2)
                phi = np.kron(single / np.linalg.norm(single), phi)
            assert gs.energy <= np.vdot(phi, h @ phi).real + 1e-10

    def test_translation_covariance(self):
        spec = SpinChainSpec("tfim", 6, {"g": 1.3})
        gs = ground_state(build_hamiltonian(spec))
        assert not gs.degenerate_flag
        a = pauli_expectation(gs.state, parse_pauli("ZZIIII"))
        b = pauli_expectation(gs.state, parse_pauli("IZZIII"))
        assert abs(a - b) < 1e-6

    def test_expectations_in_range(self):
        spec = SpinChainSpec("xxz", 5, {"delta": 0.8, "h": 0.6})
        gs = ground_state(build_hamiltonian(spec))
        for p in hamiltonian_measurement_set(spec, "all-terms"):
            v = pauli_expectation(gs.state, p)
            assert -1.0 <= v <= 1.0


class TestMeasurementSets:
    def test_tfim_first_cell(self):
        ms = hamiltonian_measurement_set(SpinChainSpec("tfim", 4, {"g": 1.0}), "first-cell")
        assert [format_pauli(p) for p in ms] == ["+ZZII", "+XIII"]

    def test_annni_first_cell(self):
        ms = hamiltonian_measurement_set(
            SpinChainSpec("annni", 4, {"k": 0.5, "g": 1.0}), "first-cell"
        )
        assert [format_pauli(p) for p in ms] == ["+ZZII", "+ZIZI", "+XIII"]

    def test_annni_all_terms(self):
        ms = hamiltonian_measurement_set(
            SpinChainSpec("annni", 4, {"k": 0.5, "g": 1.0}), "all-terms"
        )
        assert sorted(format_pauli(p) for p in ms) == sorted([
            "+ZZII", "+IZZI", "+IIZZ", "+ZIIZ", "+ZIZI", "+IZIZ",
            "+XIII", "+IXII", "+IIXI", "+IIIX",
        ])

    def test_xxz_all_terms_open(self):
        ms = hamiltonian_measurement_set(
            SpinChainSpec("xxz", 3, {"delta": 1.0, "h": 0.5}, boundary="open"),
            "all-terms",
        )
        assert sorted(format_pauli(p) for p in ms) == sorted([
            "+XXI", "+YYI", "+ZZI", "+IXX", "+IYY", "+IZZ",
            "+XII", "+IXI", "+IIX",
        ])

    def test_signs_stripped_even_at_zero_weight(self):
        # structural terms keep zero-weight entries for the measurement set
        ms = hamiltonian_measurement_set(
            SpinChainSpec("annni", 4, {"k": 0.0, "g": 0.0}), "all-terms"
        )
        assert any(p.xbits for p in ms)  # X terms present despite g=0

    def test_unknown_scope(self):
        with pytest.raises(ValueError):
            hamiltonian_measurement_set(SpinChainSpec("tfim", 4, {}), "everything")


class TestSweep:
    def test_tfim_sweep_shape_and_values(self):
        spec = SpinChainSpec("tfim", 6, {})
        ms = hamiltonian_measurement_set(spec, "first-cell")
        vset = v_representation(ms)
        grid = [{"g": 0.0}, {"g": 1.0}, {"g": 10.0}]
        records = sweep(spec, grid, ms, vset)
        assert [r.params for r in records] == grid
        assert all(r.solver_status == "optimal" for r in records)
        assert records[0].rom == pytest.approx(1.0, abs=1e-6)
        assert records[1].rom > 1.0 + 1e-3
        assert records[2].rom < records[1].rom

    def test_failures_recorded_not_raised(self):
        spec = SpinChainSpec("tfim", 6, {})
        ms = hamiltonian_measurement_set(spec, "first-cell")
        vset = v_representation(ms)
        grid = [{"g": 1.0, "k": 0.5}]  # tfim rejects k at build time
        records = sweep(spec, grid, ms, vset)
        assert records[0].solver_status.startswith("error")
        assert records[0].rom is None

    def test_threaded_matches_serial(self):
        spec = SpinChainSpec("xxz", 5, {})
        ms = hamiltonian_measurement_set(spec, "first-cell")
        vset = v_representation(ms)
        grid = [{"delta": d, "h": 0.3} for d in (-1.5, 0.0, 1.5)]
        serial = sweep(spec, grid, ms, vset, threads=1)
        threaded = sweep(spec, grid, ms, vset, threads=3)
        assert [r.params for r in serial] == [r.params for r in threaded]
        for a, b in zip(serial, threaded):
            assert a.rom == pytest.approx(b.rom, abs=1e-9)
