from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finstoch import core
from strategies import composable_pairs, maps, morphisms, spaces


def test_space_basics():
    p = core.make_space(("a", "b", "c"), ("1/2", "1/2", 0))
    assert p["a"] == Fraction(1, 2)
    assert p.support() == (0, 1)
    assert core.nullspace(p) == {"c"}


@pytest.mark.parametrize("labels, probs, err", [
    (("a", "a"), ("1/2", "1/2"), core.DuplicateLabel),
    (("a", "b"), ("1/2", "1/3"), core.NotNormalized),
    (("a", "b"), ("3/2", "-1/2"), core.OutOfRange),
    ((), (), core.EmptySpace),
    (("a",), ("1/2", "1/2"), core.ShapeMismatch),
])
def test_space_rejects(labels, probs, err):
    with pytest.raises(err):
        core.make_space(labels, probs)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        core.make_space(("a", "b"), (0.5, 0.5))


def test_column_must_sum_to_one():
    with pytest.raises(core.ColumnNotNormalized):
        core.map_from_columns(("x",), ("a", "b"), [("1/2", "1/3")])


def test_measure_preservation_is_enforced(running):
    bad_q = core.make_space(("y0", "y1"), ("1/2", "1/2"))
    with pytest.raises(core.NotMeasurePreserving):
        core.Morphism(running.map, running.src_dist, bad_q)


def test_running_pushforward(running):
    assert running.tgt_dist.probs == (Fraction(3, 4), Fraction(1, 4))
    theta = core.joint_distribution(running)
    assert theta.labels == ("(x0,y0)", "(x0,y1)", "(x1,y0)", "(x1,y1)")
    assert theta.probs == (Fraction(1, 2), 0, Fraction(1, 4), Fraction(1, 4))


def test_deterministic_and_ae(running):
    assert not core.is_deterministic(running.map)
    p = core.make_space(("x0", "x1"), (1, 0))
    assert core.is_ae_deterministic(running.map, p)
    g = core.map_from_columns(("x0", "x1"), ("y0", "y1"), [(1, 0), (0, 1)])
    assert core.ae_equal(running.map, g, p)
    assert not core.ae_equal(running.map, g, running.src_dist)


def test_iso_inverse():
    f = core.deterministic_map(("a", "b"), ("u", "v"), {"a": "v", "b": "u"})
    assert core.is_isomorphism(f)
    assert core.compose(core.inverse_iso(f), f) == core.identity(("a", "b"))
    with pytest.raises(core.FinStochError):
        core.inverse_iso(core.discard(("a", "b")))


def test_point_space_objects():
    p = core.make_space(("a", "b"), ("1/3", "2/3"))
    assert core.bloom_of(p).tgt_dist == p
    assert core.shriek_of(p).tgt_dist == core.point_space()


@given(composable_pairs())
def test_composition_preserves_measure(pair):
    f, g = pair
    gf = core.compose_morphisms(g, f)
    assert gf.tgt_dist == g.tgt_dist


@given(st.data())
def test_composition_is_associative(data):
    p = data.draw(spaces())
    f = data.draw(maps(p.labels))
    g = data.draw(maps(f.tgt, prefix="z"))
    h = data.draw(maps(g.tgt, prefix="w"))
    assert core.compose(h, core.compose(g, f)) == core.compose(core.compose(h, g), f)


@given(morphisms())
def test_identity_laws(m):
    f = m.map
    assert core.compose(f, core.identity(f.src)) == f
    assert core.compose(core.identity(f.tgt), f) == f


@given(spaces(), spaces(prefix="w"))
def test_product_space_marginals(p, q):
    pq = core.product_space(p, q)
    assert core.pushforward(core.projection(p.labels, q.labels, 0), pq) == p
    assert core.pushforward(core.projection(p.labels, q.labels, 1), pq) == q


@given(st.data())
def test_convex_sum_is_measure_preserving(data):
    p = data.draw(spaces(prefix="i"))
    parts = [data.draw(morphisms()) for _ in p.labels]
    s = core.convex_sum_morphisms(p, parts)
    assert s.src_dist == core.convex_sum_objects(p, [m.src_dist for m in parts])
    assert sum(s.tgt_dist.probs) == 1
