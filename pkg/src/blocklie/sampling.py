"""Seeded random scalars, elements and derivations for randomized checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import Element, Window
from .derivations import InnerOuterDerivation
from .scalar import Scalar


def make_rng(seed: int = 0) -> random.Random:
    return random.Random(seed)


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    num = rng.randint(-bound, bound)
    den = rng.choice((1, 1, 1, 2, 3))
    return Fraction(num, den)


def random_scalar(rng: random.Random, complex_prob: float = 0.2, nonzero: bool = False) -> Scalar:
    while True:
        re = random_rational(rng)
        im = random_rational(rng) if rng.random() < complex_prob else 0
        c = Scalar(re, im)
        if c or not nonzero:
            return c


def random_element(rng: random.Random, window: Window, max_terms: int = 4) -> Element:
    indices = list(window)
    k = rng.randint(0, min(max_terms, len(indices)))
    return Element({b: random_scalar(rng, nonzero=True) for b in rng.sample(indices, k)})


def random_dense_element(rng: random.Random, window: Window, density: float = 0.5) -> Element:
    """Random coefficients on about ``density`` of the window (at least one term)."""
    indices = list(window)
    picked = [b for b in indices if rng.random() < density] or [rng.choice(indices)]
    return Element({b: random_scalar(rng, nonzero=True) for b in picked})


def random_derivation(rng: random.Random, window: Window, max_terms: int = 4) -> InnerOuterDerivation:
    return InnerOuterDerivation(random_element(rng, window, max_terms), random_scalar(rng))
