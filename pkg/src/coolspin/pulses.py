"""Pulse-sequence events and the idealized duration model.

A sequence is a flat list of three event kinds acting on named spins:

* ``SelectivePulse(spin, phase_deg, angle_deg, duration_s)``: a
  transmitter-selective radio-frequency rotation about the in-plane axis
  at ``phase_deg`` (0 is +x, 90 is +y) through ``angle_deg``. The duration
  is wall-clock bookkeeping only; dynamically the pulse is instantaneous.
* ``Delay(duration_s)``: free evolution under the scalar couplings alone;
  chemical-shift evolution is assumed refocused during every delay.
* ``FrameShift(spin, angle_deg)``: a zero-duration reference-frame
  rotation about z, the bookkeeping form of a z rotation.

Angles are stored in degrees throughout and only converted to radians
inside the numeric propagator.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .system import SpinSystem


@dataclass(frozen=True)
class SelectivePulse:
    spin: str
    phase_deg: float
    angle_deg: float
    duration_s: float

    def __post_init__(self):
        if self.duration_s < 0.0:
            raise ValueError(f"pulse duration cannot be negative, got {self.duration_s}")

    def to_dict(self) -> dict:
        return {
            "event": "pulse",
            "spin": self.spin,
            "phase_deg": self.phase_deg,
            "angle_deg": self.angle_deg,
            "duration_s": self.duration_s,
        }


@dataclass(frozen=True)
class Delay:
    duration_s: float

    def __post_init__(self):
        if self.duration_s < 0.0:
            raise ValueError(f"delays cannot run backwards, got {self.duration_s}")

    def to_dict(self) -> dict:
        return {"event": "delay", "duration_s": self.duration_s}


@dataclass(frozen=True)
class FrameShift:
    spin: str
    angle_deg: float

    duration_s = 0.0

    def to_dict(self) -> dict:
        return {"event": "frame_shift", "spin": self.spin, "angle_deg": self.angle_deg}


Event = SelectivePulse | Delay | FrameShift


def event_from_dict(data: dict) -> Event:
    kind = data.get("event")
    if kind == "pulse":
        return SelectivePulse(
            spin=str(data["spin"]),
            phase_deg=float(data["phase_deg"]),
            angle_deg=float(data["angle_deg"]),
            duration_s=float(data["duration_s"]),
        )
    if kind == "delay":
        return Delay(duration_s=float(data["duration_s"]))
    if kind == "frame_shift":
        return FrameShift(spin=str(data["spin"]), angle_deg=float(data["angle_deg"]))
    raise ValueError(f"unknown event kind {kind!r}")


@dataclass(frozen=True)
class DurationModel:
    """Wall-clock cost assignment for idealized sequences.

    Every selective pulse is charged pro rata against the 90-degree pulse
    time, delays are charged at face value, and frame shifts are free.
    """

    pulse90_s: float = 2e-3

    def __post_init__(self):
        if self.pulse90_s <= 0.0:
            raise ValueError(f"pulse90_s must be positive, got {self.pulse90_s}")

    def pulse_s(self, angle_deg: float) -> float:
        return abs(angle_deg) / 90.0 * self.pulse90_s


def coupled_delay_s(j_hz: float, turns: float) -> float:
    """Free-evolution time for `turns` full cycles of a J coupling."""
    if j_hz == 0.0:
        raise ValueError("cannot evolve under a zero coupling")
    if turns < 0.0:
        raise ValueError(f"turns must be nonnegative, got {turns}")
    return turns / abs(j_hz)


def standard_toffoli_s(j_hz: float) -> float:
    """Coupling time of the textbook doubly controlled NOT, 7/(4|J|)."""
    if j_hz == 0.0:
        raise ValueError("cannot evolve under a zero coupling")
    return 7.0 / (4.0 * abs(j_hz))


@dataclass
class PulseSequence:
    """An ordered event list bound to the spin system it addresses."""

    system: SpinSystem
    events: list[Event]

    def __post_init__(self):
        known = set(self.system.labels)
        for event in self.events:
            spin = getattr(event, "spin", None)
            if spin is not None and spin not in known:
                raise ValueError(f"event addresses unknown spin {spin!r}")

    @property
    def total_duration_s(self) -> float:
        return sum(e.duration_s for e in self.events)

    def coupling_duration_s(self) -> float:
        """Total delay time, the pulse-length-independent part of the cost."""
        return sum(e.duration_s for e in self.events if isinstance(e, Delay))

    def pulse_count(self) -> int:
        return sum(isinstance(e, SelectivePulse) for e in self.events)

    def frame_out(self) -> dict[str, float]:
        """Net accumulated frame shift per spin, in degrees."""
        net = {lab: 0.0 for lab in self.system.labels}
        for event in self.events:
            if isinstance(event, FrameShift):
                net[event.spin] += event.angle_deg
        return net

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "system": self.system.to_dict(),
            "events": [e.to_dict() for e in self.events],
            "total_duration_s": self.total_duration_s,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PulseSequence":
        payload = json.loads(text)
        system = SpinSystem.from_dict(payload["system"])
        events = [event_from_dict(e) for e in payload["events"]]
        return cls(system=system, events=events)
