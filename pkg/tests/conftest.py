"""Shared helpers for the test suite."""

import math

import numpy as np

from mirrorsteer.xstate_steering import XState


def random_x_state(rng: np.random.Generator, physical: bool | None = None) -> XState:
    """Draw a random X-state.

    Diagonals are Dirichlet distributed. With ``physical=True`` the
    coherences respect |c14| <= sqrt(d11 d44) and |c23| <= sqrt(d22 d33);
    with ``physical=False`` their moduli are free up to 0.5, which covers
    the leading-order harvested states that sit outside the positivity
    cone. ``None`` mixes both cases evenly.
    """
    d11, d22, d33, d44 = rng.dirichlet(np.ones(4))
    if physical is None:
        physical = bool(rng.integers(2))
    if physical:
        r14 = rng.uniform() * math.sqrt(d11 * d44)
        r23 = rng.uniform() * math.sqrt(d22 * d33)
    else:
        r14 = rng.uniform(0.0, 0.5)
        r23 = rng.uniform(0.0, 0.5)
    ph14, ph23 = rng.uniform(0.0, 2.0 * math.pi, size=2)
    return XState(
        d11=float(d11),
        d22=float(d22),
        d33=float(d33),
        d44=float(d44),
        c14=r14 * complex(math.cos(ph14), math.sin(ph14)),
        c23=r23 * complex(math.cos(ph23), math.sin(ph23)),
    )
