"""Multiplet prediction from diagonal states."""
import numpy as np
import pytest

from coolspin import (
    DenseState,
    PopulationState,
    SpinSystem,
    apply_permutation,
    boost_circuit,
    circuit_permutation,
    example_system,
    line_frequencies,
    mean_enhancement,
    polarization,
    readout,
    thermal_state,
)


@pytest.fixture()
def system():
    return example_system()


def boosted():
    return apply_permutation(thermal_state(3), circuit_permutation(boost_circuit(), 3))


def test_line_frequencies_are_half_sums_of_couplings(system):
    assert line_frequencies(system, "a") == pytest.approx(
        [-98.55, -23.55, 23.55, 98.55], abs=1e-12
    )
    # Spin b couples at -122.1 (to a) and 53.8 (to c).
    want = sorted(
        [(-122.1 * sa + 53.8 * sc) / 2 for sa in (1, -1) for sc in (1, -1)]
    )
    assert line_frequencies(system, 1) == pytest.approx(want, abs=1e-12)


def test_readout_lists_lines_highest_frequency_first(system):
    spec = readout(thermal_state(3), system, "a")
    assert spec.spin == 0
    freqs = spec.frequencies
    assert np.array_equal(freqs, sorted(freqs, reverse=True))
    assert sorted(freqs.tolist()) == line_frequencies(system, "a")


def test_thermal_state_reads_unit_amplitude_everywhere(system):
    for spin in range(3):
        spec = readout(thermal_state(3), system, spin)
        assert spec.amplitudes.tolist() == [1.0, 1.0, 1.0, 1.0]
        assert spec.mean_amplitude() == 1.0


def test_boosted_state_amplitude_patterns(system):
    post = boosted()
    assert readout(post, system, "a").amplitudes.tolist() == [1.0, 2.0, 1.0, 2.0]
    assert readout(post, system, "b").amplitudes.tolist() == [0.0, 1.0, 0.0, 1.0]
    assert readout(post, system, "c").amplitudes.tolist() == [-1.0, 0.0, 0.0, 1.0]


def test_mean_amplitude_equals_polarization(system):
    rng = np.random.default_rng(31)
    pops = rng.normal(size=8)
    pops -= pops.mean()
    state = PopulationState(n=3, pops=pops)
    for spin in range(3):
        spec = readout(state, system, spin)
        assert spec.mean_amplitude() == pytest.approx(polarization(state, spin), abs=1e-12)


def test_amplitude_is_population_difference_across_the_transition():
    two = SpinSystem(
        labels=["s", "t"],
        j_hz=[[0.0, 10.0], [10.0, 0.0]],
        shift_ppm=[0.0, 1.0],
        epsilon0=1e-4,
    )
    # Pops over |00>, |01>, |10>, |11>.
    state = PopulationState(n=2, pops=np.array([3.0, 1.0, -1.0, -3.0]))
    spec = readout(state, two, "s")
    # Line at +5 Hz has spin t up: 3 - (-1); line at -5 Hz has t down: 1 - (-3).
    assert spec.frequencies.tolist() == [5.0, -5.0]
    assert spec.amplitudes.tolist() == [4.0, 4.0]
    spec_t = readout(state, two, "t")
    assert spec_t.amplitudes.tolist() == [2.0, 2.0]


def test_spectator_field_tracks_line_identity(system):
    spec = readout(boosted(), system, "c")
    by_spectator = {line.spectator: line for line in spec.lines}
    # Spectator bits follow spin order (a, b), most significant first.
    assert by_spectator[0].freq_hz == pytest.approx((75.0 + 53.8) / 2)
    assert by_spectator[3].freq_hz == pytest.approx(-(75.0 + 53.8) / 2)


def test_readout_accepts_diagonal_dense_states_only(system):
    dense = DenseState.from_populations(thermal_state(3))
    assert readout(dense, system, 0).amplitudes.tolist() == [1.0] * 4
    mat = dense.mat.copy()
    mat[0, 1] = mat[1, 0] = 1e-6
    with pytest.raises(ValueError, match="coherence"):
        readout(DenseState(n=3, mat=mat), system, 0)


def test_readout_rejects_mismatched_sizes(system):
    with pytest.raises(ValueError, match="spins"):
        readout(thermal_state(2), system, 0)


def test_csv_export(system):
    text = readout(thermal_state(3), system, "a").to_csv()
    lines = text.strip().splitlines()
    assert lines[0] == "freq_hz,amplitude"
    assert len(lines) == 5
    freq, amp = lines[1].split(",")
    assert float(freq) == 98.55
    assert float(amp) == 1.0


def test_mean_enhancement_checks_compatibility(system):
    before = readout(thermal_state(3), system, "a")
    after = readout(boosted(), system, "a")
    assert mean_enhancement(after, before) == 1.5
    with pytest.raises(ValueError, match="different spins"):
        mean_enhancement(readout(boosted(), system, "b"), before)
    zero = PopulationState(n=3, pops=np.zeros(8))
    with pytest.raises(ValueError, match="zero mean"):
        mean_enhancement(after, readout(zero, system, "a"))
