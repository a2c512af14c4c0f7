"""Named spectra ``e_n = a n^2 + b n`` for standard exactly solvable systems."""

from __future__ import annotations

from dataclasses import dataclass

from .spectrum import SpectrumParams

PRESETS = ("poschl-teller", "square-well", "anharmonic", "harmonic")

NOTES = {
    "poschl-teller": "a = 1, b = k + k'",
    "square-well": "a = 1, b = 2",
    "anharmonic": "a = 3 eps / 2, b = a + 1 (taken literally as 3 eps / 2 + 1)",
    "harmonic": "a = 0, b = 1",
}


@dataclass(frozen=True)
class Preset:
    name: str
    k: float | None = None
    kp: float | None = None
    eps: float | None = None

    def __post_init__(self):
        if self.name not in PRESETS:
            raise ValueError(f"unknown preset {self.name!r}; choose from {', '.join(PRESETS)}")
        if self.name == "poschl-teller":
            if self.k is None or self.kp is None:
                raise ValueError("poschl-teller needs k and k'")
            if not (self.k > 1 and self.kp > 1):
                raise ValueError(f"poschl-teller needs k > 1 and k' > 1, got k={self.k}, k'={self.kp}")
        if self.name == "anharmonic":
            if self.eps is None or not self.eps > 0:
                raise ValueError("anharmonic needs eps > 0")


def resolve_preset(preset):
    if preset.name == "poschl-teller":
        return SpectrumParams(1.0, preset.k + preset.kp)
    if preset.name == "square-well":
        return SpectrumParams(1.0, 2.0)
    if preset.name == "anharmonic":
        a = 1.5 * preset.eps
        return SpectrumParams(a, a + 1.0)
    return SpectrumParams(0.0, 1.0)
