"""Test-signal generators on centered grids."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import transform
from .grid import OctField

KINDS = ("gaussian", "chirped_gaussian", "parity_probe", "random_smooth")

# monomial per probe name: powers of (x1, x2, x3)
PROBES = {
    "1": (0, 0, 0), "x1": (1, 0, 0), "x2": (0, 1, 0), "x3": (0, 0, 1),
    "x1x2": (1, 1, 0), "x1x3": (1, 0, 1), "x2x3": (0, 1, 1), "x1x2x3": (1, 1, 1),
}


@dataclass(frozen=True)
class SignalSpec:
    kind: str = "gaussian"
    sigma: float = 1.0
    components: tuple = (0,)
    seed: int = 0
    beta: float = 0.5
    probe: str = "x1"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}; choose from {KINDS}")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        comps = tuple(int(c) for c in self.components)
        if not comps:
            raise ValueError("at least one component must be populated")
        if any(not 0 <= c < 8 for c in comps):
            raise ValueError(f"components must be in 0..7, got {comps}")
        object.__setattr__(self, "components", comps)
        if self.probe not in PROBES:
            raise ValueError(f"unknown probe {self.probe!r}; choose from {sorted(PROBES)}")


def _gauss(grid, sigma, center=(0.0, 0.0, 0.0)):
    out = np.ones(grid.shape)
    for k, x in enumerate(grid.axes()):
        shape = [1] * grid.ndim
        shape[k] = grid.n[k]
        out = out * np.exp(-((x - center[k]) ** 2) / (2 * sigma * sigma)).reshape(shape)
    return out


def gaussian(grid, sigma=1.0, components=(0,)):
    """``prod_k exp(-x_k^2 / 2 sigma^2)`` on each listed component."""
    comp = np.zeros((8,) + grid.shape)
    g = _gauss(grid, sigma)
    for c in components:
        comp[c] = g
    return OctField(grid, comp)


def chirped_gaussian(grid, sigma=1.0, beta=0.5, components=(0,)):
    """Gaussian right-multiplied by ``exp(e4 beta x1^2)``."""
    base = gaussian(grid, sigma, components)
    x1 = grid.axis(0)
    return OctField(grid, transform.chirp(base.comp, 0, 4, beta * x1 * x1))


def parity_probe(grid, sigma=1.0, probe="x1", components=(0,)):
    """``monomial(x) * Gaussian``, a field of pure parity (e.g. ``x1`` -> odd, even, even)."""
    powers = PROBES[probe]
    mono = np.ones(grid.shape)
    for k, (x, pw) in enumerate(zip(grid.axes(), powers)):
        if pw:
            shape = [1] * grid.ndim
            shape[k] = grid.n[k]
            mono = mono * (x / sigma).reshape(shape) ** pw
    vol = mono * _gauss(grid, sigma)
    comp = np.zeros((8,) + grid.shape)
    for c in components:
        comp[c] = vol
    return OctField(grid, comp)


def random_smooth(grid, sigma=1.0, seed=0, components=tuple(range(8)), n_blobs=6):
    """Seeded sum of Gaussian blobs with random centers, widths and octonion amplitudes."""
    rng = np.random.default_rng(seed)
    comp = np.zeros((8,) + grid.shape)
    reach = [h / 4 for h in grid.halfwidth]
    for _ in range(n_blobs):
        center = [rng.uniform(-r, r) for r in reach]
        width = sigma * rng.uniform(0.7, 1.3)
        amp = rng.standard_normal(8)
        blob = _gauss(grid, width, center)
        for c in components:
            comp[c] += amp[c] * blob
    return OctField(grid, comp)


def generate(spec, grid):
    if spec.kind == "gaussian":
        return gaussian(grid, spec.sigma, spec.components)
    if spec.kind == "chirped_gaussian":
        return chirped_gaussian(grid, spec.sigma, spec.beta, spec.components)
    if spec.kind == "parity_probe":
        return parity_probe(grid, spec.sigma, spec.probe, spec.components)
    return random_smooth(grid, spec.sigma, spec.seed, spec.components)
