"""Idealized absorption-mode readout spectra from diagonal states.

A readout pulse on spin j splits its resonance into one line per
configuration of the other spins. In the weak-coupling first-order
picture the line for spectator configuration s sits at the offset
sum_{k != j} J_jk * m_k(s) from the spin's own frequency, with m_k = +1/2
when spin k points up (bit 0) and -1/2 when it points down, and its
amplitude is the population difference across the j transition in that
configuration.

States in thermal deviation units make every thermal line come out at
exactly 1, so all amplitudes here read directly as multiples of the
thermal signal. Lines are listed from highest to lowest frequency offset;
under that convention the boosted three-spin state reads 1:2:1:2 on the
first spin, 0:1:0:1 on the second, and -1:0:0:1 on the third.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .states import DenseState, PopulationState, bit_position
from .system import SpinSystem

COHERENCE_TOL = 1e-10


@dataclass(frozen=True)
class SpectralLine:
    freq_hz: float
    amplitude: float
    spectator: int
    """Bits of the other spins, most significant first in spin-index order."""


@dataclass
class Spectrum:
    """Multiplet of one spin: 2**(n-1) lines, highest frequency first."""

    spin: int
    lines: list[SpectralLine]

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([line.freq_hz for line in self.lines])

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([line.amplitude for line in self.lines])

    def mean_amplitude(self) -> float:
        """Equals the spin's polarization for deviation-unit states."""
        return float(self.amplitudes.mean())

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("freq_hz,amplitude\n")
        for line in self.lines:
            out.write(f"{line.freq_hz!r},{line.amplitude!r}\n")
        return out.getvalue()


def _spectator_indices(n: int, spin: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis indices with spin j forced to 0 and to 1, per spectator config."""
    pos = bit_position(n, spin)
    spectators = np.arange(1 << (n - 1))
    high = spectators >> pos
    low = spectators & ((1 << pos) - 1)
    idx0 = (high << (pos + 1)) | low
    return idx0, idx0 | (1 << pos)


def line_frequencies(system: SpinSystem, spin: int | str) -> list[float]:
    """The 2**(n-1) multiplet offsets of one spin, sorted ascending."""
    j = system.spin_index(spin)
    n = system.n
    idx0, _ = _spectator_indices(n, j)
    freq = np.zeros(idx0.shape[0])
    for k in range(n):
        if k == j:
            continue
        bits = (idx0 >> bit_position(n, k)) & 1
        freq += system.coupling(j, k) * (0.5 - bits)
    return [float(f) for f in np.sort(freq, kind="stable")]


def readout(
    state: PopulationState | DenseState, system: SpinSystem, spin: int | str
) -> Spectrum:
    """Predicted multiplet of one spin after an ideal readout pulse.

    The state must be diagonal: a dense input whose off-diagonal norm
    exceeds the coherence tolerance is rejected rather than silently
    truncated.
    """
    j = system.spin_index(spin)
    if state.n != system.n:
        raise ValueError(f"state has {state.n} spins, system has {system.n}")
    if isinstance(state, DenseState):
        stray = state.coherence_norm()
        if stray > COHERENCE_TOL:
            raise ValueError(
                f"state carries coherences (off-diagonal norm {stray:.3e});"
                " readout expects a diagonal state"
            )
        pops = state.diagonal()
    else:
        pops = state.pops
    n = system.n
    idx0, idx1 = _spectator_indices(n, j)
    amplitude = pops[idx0] - pops[idx1]
    freq = np.zeros(idx0.shape[0])
    for k in range(n):
        if k == j:
            continue
        bits = (idx0 >> bit_position(n, k)) & 1
        freq += system.coupling(j, k) * (0.5 - bits)
    order = np.argsort(-freq, kind="stable")
    lines = [
        SpectralLine(freq_hz=float(freq[i]), amplitude=float(amplitude[i]), spectator=int(i))
        for i in order
    ]
    return Spectrum(spin=j, lines=lines)


def mean_enhancement(spec_after: Spectrum, spec_before: Spectrum) -> float:
    """Ratio of mean line amplitudes, the averaged signal gain."""
    if spec_after.spin != spec_before.spin:
        raise ValueError(
            f"spectra describe different spins ({spec_after.spin} vs {spec_before.spin})"
        )
    if len(spec_after.lines) != len(spec_before.lines):
        raise ValueError("spectra have different line counts")
    reference = spec_before.mean_amplitude()
    if reference == 0.0:
        raise ValueError("reference spectrum has zero mean signal")
    return spec_after.mean_amplitude() / reference
