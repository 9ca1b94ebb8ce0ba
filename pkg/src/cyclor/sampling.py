"""Deterministic random sampling of ring elements, fields, forms and module vectors.

Every draw comes from a numpy ``Generator`` seeded by ``(seed, *stream)``,
so a sample depends only on the config and its stream index, never on what
was drawn before it.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .calculus import OneForm, VectorField
from .rings import Ring, RingElement, monomials

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    trials: int = 100
    max_degree: int = 3
    max_terms: int = 4
    coeff_bound: int = 9

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.max_terms < 1 or self.coeff_bound < 1:
            raise ValueError("max_terms and coeff_bound must be positive")

    def rng(self, *stream) -> np.random.Generator:
        """Generator for the given stream; string components are hashed with crc32."""
        key = tuple(zlib.crc32(s.encode()) if isinstance(s, str) else int(s) & _MASK64 for s in stream)
        return np.random.default_rng(np.random.SeedSequence(self.seed & _MASK64, spawn_key=key))

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_degree": self.max_degree,
            "max_terms": self.max_terms,
            "coeff_bound": self.coeff_bound,
        }


def _coefficient(rng: np.random.Generator, bound: int, nonzero: bool = True) -> int:
    while True:
        c = int(rng.integers(-bound, bound + 1))
        if c or not nonzero:
            return c


def _poly(cfg: SamplerConfig, ring: Ring, rng: np.random.Generator):
    monos = monomials(ring.nvars, cfg.max_degree)
    k = int(rng.integers(1, min(cfg.max_terms, len(monos)) + 1))
    picks = rng.choice(len(monos), size=k, replace=False)
    return ring.base.from_terms({monos[int(i)]: _coefficient(rng, cfg.coeff_bound) for i in sorted(picks)})


def draw_element(cfg: SamplerConfig, ring: Ring, rng: np.random.Generator) -> RingElement:
    """Draw one element from an already-seeded generator."""
    if ring.kind == "poly":
        return _poly(cfg, ring, rng)
    if ring.kind == "ratfunc":
        num = _poly(cfg, ring, rng)
        den = _poly(cfg, ring, rng)
        if den.is_zero():
            den = ring.base.one()
        return ring.coerce(num) / ring.coerce(den)
    coeffs = [_coefficient(rng, cfg.coeff_bound, nonzero=False) for _ in range(ring.truncation)]
    return ring.series_from(coeffs)


def sample_element(cfg: SamplerConfig, ring: Ring, stream=0) -> RingElement:
    """Random element for stream index ``stream`` (an int or a tuple of ints/strings).

    Polynomials have at most ``max_terms`` distinct monomials of total degree
    at most ``max_degree`` with nonzero integer coefficients in
    [-coeff_bound, coeff_bound].  Rational functions are quotients of two such
    polynomials; series get random integer coefficients at full truncation.
    """
    stream = stream if isinstance(stream, tuple) else (stream,)
    return draw_element(cfg, ring, cfg.rng(*stream))


def draw_vector(cfg, ring: Ring, rng, length: int) -> tuple[RingElement, ...]:
    return tuple(draw_element(cfg, ring, rng) for _ in range(length))


def draw_field(cfg, ring: Ring, rng) -> VectorField:
    return VectorField(ring, draw_vector(cfg, ring, rng, ring.nvars))


def draw_form(cfg, ring: Ring, rng) -> OneForm:
    return OneForm(ring, draw_vector(cfg, ring, rng, ring.nvars))
