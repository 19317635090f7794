"""Entropy functionals on probability spaces and morphisms.

These are the only floating-point quantities in the package. Terms with a
zero factor are filtered out before any logarithm is taken, which is how
``0 log 0 = 0`` is honoured.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .core import Morphism, ProbSpace, ShapeMismatch, compose

DEFAULT_BASE = 2


def _log(v: Fraction, base: float) -> float:
    # numerator/denominator split keeps huge denominators from underflowing
    return (math.log(v.numerator) - math.log(v.denominator)) / math.log(base)


def _entropy(probs: Iterable[Fraction], base: float) -> float:
    return -math.fsum(float(v) * _log(v, base) for v in probs if v != 0)


def shannon_entropy(p: ProbSpace, base: float = DEFAULT_BASE) -> float:
    """Shannon entropy of ``p`` in units of ``log_base``."""
    if base <= 1:
        raise ValueError("logarithm base must exceed 1")
    return _entropy(p.probs, base)


def conditional_entropy(m: Morphism, base: float = DEFAULT_BASE) -> float:
    """H(f|p): the p-weighted average entropy of the columns of f."""
    if base <= 1:
        raise ValueError("logarithm base must exceed 1")
    f, p = m.map, m.src_dist
    return math.fsum(float(p.probs[i]) * _entropy(f.column(i), base) for i in p.support())


def conditional_information_loss(m: Morphism, base: float = DEFAULT_BASE) -> float:
    """K(f) = H(p) - H(q) + H(f|p)."""
    return (shannon_entropy(m.src_dist, base) - shannon_entropy(m.tgt_dist, base)
            + conditional_entropy(m, base))


def closs_closed_form(m: Morphism, base: float = DEFAULT_BASE) -> float:
    """K(f) as one sum of joint-mass terms ``-t log(t / q_y)``, ``t = f_{yx} p_x``.

    Used as an independent evaluation route of the conditional
    information loss.
    """
    f, p, q = m.map, m.src_dist, m.tgt_dist
    terms = []
    for i in p.support():
        px = p.probs[i]
        for j, fyx in enumerate(f.column(i)):
            if fyx == 0:
                continue
            t = fyx * px
            terms.append(float(t) * _log(t / q.probs[j], base))
    return -math.fsum(terms)


def functoriality_deviation(f: Morphism, g: Morphism, base: float = DEFAULT_BASE) -> float:
    """How far H(-|p) is from additive on the composable pair (f, g).

    Evaluates the triple sum over supported (x, y, z) of
    ``-p_x g_zy f_yx log(g_zy f_yx / (g∘f)_zx)``. It is zero exactly when the
    pair admits a mediator, and otherwise equals
    ``H(g|q) + H(f|p) - H(g∘f|p)``.
    """
    if f.tgt_dist != g.src_dist:
        raise ShapeMismatch("morphisms are not composable")
    fm, gm, p = f.map, g.map, f.src_dist
    terms = []
    for i in p.support():
        px = p.probs[i]
        fcol = fm.column(i)
        for z, grow in enumerate(gm.matrix):
            gf = sum((gzy * fcol[y] for y, gzy in enumerate(grow)), Fraction(0))
            for y, fyx in enumerate(fcol):
                t = grow[y] * fyx
                if t == 0:
                    continue
                terms.append(float(px * t) * _log(t / gf, base))
    return -math.fsum(terms)


def composite_entropy(f: Morphism, g: Morphism, base: float = DEFAULT_BASE) -> float:
    """H(g∘f|p), computed from the composite matrix."""
    if f.tgt_dist != g.src_dist:
        raise ShapeMismatch("morphisms are not composable")
    return conditional_entropy(
        Morphism(compose(g.map, f.map), f.src_dist, g.tgt_dist), base)
