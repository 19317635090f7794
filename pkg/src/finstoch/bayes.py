"""Bayesian inversion of measure-preserving stochastic maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Morphism, ShapeMismatch, ae_equal, map_from_columns


@dataclass(frozen=True)
class BayesPair:
    forward: Morphism
    inverse: Morphism

    @property
    def filled(self) -> tuple[str, ...]:
        """Output labels whose inverse column was set by the uniform fill."""
        q = self.forward.tgt_dist
        return tuple(lab for lab, v in q.items() if v == 0)


def bayesian_inverse(m: Morphism) -> BayesPair:
    """Canonical Bayesian inverse (Y, q) ~> (X, p).

    On outputs with q_y > 0 the column is ``p_x f_yx / q_y``; on q-null
    outputs it is uniform over X. Any other choice on null outputs is an
    equally valid inverse, so compare inverses with :func:`ae_equal`.
    """
    f, p, q = m.map, m.src_dist, m.tgt_dist
    n = len(f.src)
    columns = []
    for j, qy in enumerate(q.probs):
        if qy == 0:
            columns.append([Fraction(1, n)] * n)
        else:
            columns.append([p.probs[i] * f.matrix[j][i] / qy for i in range(n)])
    inv = map_from_columns(f.tgt, f.src, columns)
    return BayesPair(m, Morphism(inv, q, p))


def inverse(m: Morphism) -> Morphism:
    """Shorthand for ``bayesian_inverse(m).inverse``."""
    return bayesian_inverse(m).inverse


def verify_bayes_rule(pair: BayesPair) -> bool:
    """Exact check of ``fbar_xy q_y == f_yx p_x`` for every x and y."""
    f, g = pair.forward, pair.inverse
    if g.map.src != f.map.tgt or g.map.tgt != f.map.src:
        raise ShapeMismatch("inverse must run between the forward map's target and source")
    if g.src_dist != f.tgt_dist or g.tgt_dist != f.src_dist:
        raise ShapeMismatch("inverse must run between the same probability spaces")
    p, q = f.src_dist.probs, f.tgt_dist.probs
    for i in range(len(p)):
        for j in range(len(q)):
            if g.map.matrix[i][j] * q[j] != f.map.matrix[j][i] * p[i]:
                return False
    return True


def double_inverse_check(m: Morphism) -> bool:
    """Whether inverting twice returns ``m`` up to p-a.e. equality."""
    twice = inverse(inverse(m))
    return ae_equal(twice.map, m.map, m.src_dist)
