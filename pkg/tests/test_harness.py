from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from finstoch import core, harness, measures, structure
from finstoch.document import Document, document_to_json

SMALL = harness.GenConfig(trials=25)


def test_registry_is_complete():
    assert len(harness.SUITES) == 21
    with pytest.raises(harness.UnknownSuite):
        harness.get_suite("no-such-suite")
    with pytest.raises(harness.UnknownSuite):
        harness.run_suite("no-such-suite", SMALL)


def test_size_one_space_is_a_point():
    rng = harness.trial_rng(0, "t", 0)
    p = harness.gen_space(SMALL, 1, rng)
    assert p.probs == (Fraction(1),)


def test_generators_are_seeded():
    a = harness.gen_random_morphism(SMALL, harness.trial_rng(4, "s", 2))
    b = harness.gen_random_morphism(SMALL, harness.trial_rng(4, "s", 2))
    c = harness.gen_random_morphism(SMALL, harness.trial_rng(5, "s", 2))
    assert a == b
    assert a != c


def test_generated_probabilities_sit_on_the_grid():
    for t in range(50):
        m = harness.gen_random_morphism(SMALL, harness.trial_rng(0, "grid", t))
        for v in m.src_dist.probs:
            assert v.denominator <= SMALL.denom_bound


def test_coalescable_generator():
    for t in range(30):
        f, g = harness.gen_coalescable_pair(SMALL, harness.trial_rng(0, "c", t))
        assert structure.is_coalescable(f, g)


@pytest.mark.parametrize("name", ["positivity", "bayes-rule-exact", "coalescable-duality"])
def test_report_ignores_timing(name):
    a = harness.run_suite(name, SMALL).to_json(timing=False)
    b = harness.run_suite(name, SMALL).to_json(timing=False)
    assert a == b and a["passed"] and "elapsed" not in a


def test_serial_matches_parallel():
    serial = harness.run_suite("reduction", SMALL)
    parallel = harness.run_suite("reduction", SMALL, workers=2)
    assert serial.to_json(timing=False) == parallel.to_json(timing=False)


def test_failing_check_is_recorded_and_replayed(monkeypatch):
    broken = dataclasses.replace(
        harness.SUITES["positivity"],
        check=lambda inst: harness.Check(measures.shannon_entropy(inst["f"].tgt_dist) < 1,
                                         0.0, {}, "target entropy below one bit"))
    monkeypatch.setitem(harness.SUITES, "positivity", broken)
    report = harness.run_suite("positivity", SMALL)
    assert report.failures
    first = report.failures[0]
    assert not harness.replay("positivity", first.witness).ok
    assert report.to_json()["failures"][0]["witness"] == first.witness


def test_check_exceptions_become_failures():
    suite = harness.Suite("boom", lambda rng, cfg: {}, lambda inst: 1 / 0)
    res = harness.run_check(suite, {})
    assert not res.ok and "ZeroDivisionError" in res.observed["error"]


def test_replay_of_passing_witness(running):
    witness = document_to_json(Document.from_objects({"f": running}))
    assert harness.replay("bayes-rule-exact", witness).ok


def test_continuity_report(running):
    rep = harness.check_continuity(running, 64, SMALL)
    assert rep.passed and len(rep.series) == 64
    assert rep.series[-1] < 1e-6
    with pytest.raises(ValueError):
        harness.check_continuity(running, 1, SMALL)


def test_continuity_flags_a_stalled_sequence(running):
    # a direction that moves nothing produces an all-zero series, which passes
    rep = harness.check_continuity(running, 8, SMALL, direction=running)
    assert rep.passed and max(rep.series) == 0
    assert harness._continuity_verdict([1.0, 0.5, 0.25, 0.5])[0] is False
    assert harness._continuity_verdict([1.0, 1e-3, 1e-5, 1e-2])[0] is False


def test_noncoalescable_generator():
    for t in range(10):
        f, g = harness.gen_noncoalescable_pair(SMALL, harness.trial_rng(0, "nc", t))
        assert not structure.is_coalescable(f, g)
        assert measures.functoriality_deviation(f, g) > 1e-9


def test_iso_generator(running):
    g = harness.gen_iso(SMALL, running.tgt_dist, harness.trial_rng(0, "iso", 0), "z")
    assert core.is_isomorphism(g.map)
