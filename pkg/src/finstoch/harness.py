"""Seeded instance generators and property suites.

Every trial draws from its own ``random.Random`` seeded by
``(seed, suite, trial)``, so serial and parallel runs produce the same
report. Generated probabilities are rationals on a ``k/d`` grid with
``d <= denom_bound``, and zeros are injected on purpose so that the
measure-zero cases (null columns, uniform fill, a.e. equality) get
exercised.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bayes, core, measures, structure
from .core import POINT, FinStochError, Morphism, ProbSpace, StochMap
from .document import Document, document_from_json, document_to_json

TOL = 1e-9
SIGN_SLACK = 1e-12
CONTINUITY_TARGET = 1e-6
CONTINUITY_POWER = 6
MONOTONE_SLACK = 1e-13


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_size: int = 4
    denom_bound: int = 12
    null_prob: Fraction = Fraction(1, 6)
    trials: int = 500


@dataclass(frozen=True)
class Check:
    ok: bool
    residual: float = 0.0
    observed: dict = field(default_factory=dict)
    expected: str = ""


@dataclass(frozen=True)
class Failure:
    trial: int
    witness: dict
    observed: dict
    expected: str


@dataclass(frozen=True)
class PropReport:
    suite: str
    seed: int
    trials: int
    failures: tuple[Failure, ...]
    max_residual: float
    elapsed: float = 0.0
    series: tuple[float, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "failures": [
                {"trial": f.trial, "witness": f.witness,
                 "observed": f.observed, "expected": f.expected}
                for f in self.failures
            ],
        }
        if self.series:
            out["series"] = list(self.series)
        if timing:
            out["elapsed"] = self.elapsed
        return out


def trial_rng(seed: int, suite: str, trial: int) -> random.Random:
    return random.Random(f"{seed}/{suite}/{trial}")


# -- generators --------------------------------------------------------------


def _labels(prefix: str, size: int) -> tuple[str, ...]:
    if size == 1:
        return (POINT,)
    return tuple(f"{prefix}{i}" for i in range(size))


def _chance(rng: random.Random, prob: Fraction) -> bool:
    return rng.randrange(prob.denominator) < prob.numerator


def _gen_probs(cfg: GenConfig, size: int, rng: random.Random) -> list[Fraction]:
    live = [not _chance(rng, cfg.null_prob) for _ in range(size)]
    if not any(live):
        live[rng.randrange(size)] = True
    k = sum(live)
    d = rng.randint(k, max(k, cfg.denom_bound))
    cuts = sorted(rng.sample(range(1, d), k - 1)) if k > 1 else []
    parts = [b - a for a, b in zip([0] + cuts, cuts + [d])]
    it = iter(parts)
    return [Fraction(next(it), d) if alive else Fraction(0) for alive in live]


def gen_size(cfg: GenConfig, rng: random.Random) -> int:
    return rng.randint(1, cfg.max_size)


def gen_space(cfg: GenConfig, size: int, rng: random.Random | None = None,
              prefix: str = "x") -> ProbSpace:
    """Random distribution on ``size`` labels (``(•, 1)`` when size is 1)."""
    if size < 1:
        raise ValueError("size must be at least 1")
    rng = rng or random.Random(cfg.seed)
    return core.make_space(_labels(prefix, size), _gen_probs(cfg, size, rng))


def gen_column(cfg: GenConfig, size: int, rng: random.Random,
               deterministic: bool = False) -> list[Fraction]:
    if deterministic:
        hit = rng.randrange(size)
        return [Fraction(int(j == hit)) for j in range(size)]
    return _gen_probs(cfg, size, rng)


def gen_map(cfg: GenConfig, src, tgt, rng: random.Random | None = None,
            deterministic: bool = False) -> StochMap:
    rng = rng or random.Random(cfg.seed)
    cols = [gen_column(cfg, len(tgt), rng, deterministic) for _ in src]
    return core.map_from_columns(src, tgt, cols)


def gen_morphism(cfg: GenConfig, src_space: ProbSpace, tgt_size: int,
                 rng: random.Random | None = None, deterministic: bool = False,
                 prefix: str = "y") -> Morphism:
    f = gen_map(cfg, src_space.labels, _labels(prefix, tgt_size), rng, deterministic)
    return core.morphism(f, src_space)


def gen_random_morphism(cfg: GenConfig, rng: random.Random,
                        deterministic: bool = False) -> Morphism:
    p = gen_space(cfg, gen_size(cfg, rng), rng, "x")
    return gen_morphism(cfg, p, gen_size(cfg, rng), rng, deterministic, "y")


def gen_iso(cfg: GenConfig, src_space: ProbSpace, rng: random.Random,
            prefix: str) -> Morphism:
    """Random relabelling bijection out of ``src_space``."""
    tgt = _labels(prefix, len(src_space))
    perm = list(tgt)
    rng.shuffle(perm)
    f = core.deterministic_map(src_space.labels, tgt, dict(zip(src_space.labels, perm)))
    return core.morphism(f, src_space)


def gen_coalescable_pair(cfg: GenConfig, rng: random.Random | None = None):
    """A composable pair that admits a mediator by construction.

    Strategies: (a) a p-a.e. deterministic first leg, (b) an isomorphism
    as second leg, (c) the two factors of a bloom-shriek factorization.
    """
    rng = rng or random.Random(cfg.seed)
    strategy = rng.choice("abc")
    if strategy == "a":
        p = gen_space(cfg, gen_size(cfg, rng), rng, "x")
        ny = gen_size(cfg, rng)
        cols = [gen_column(cfg, ny, rng, deterministic=(pv != 0 or rng.random() < 0.5))
                for pv in p.probs]
        f = core.morphism(core.map_from_columns(p.labels, _labels("y", ny), cols), p)
        g = gen_morphism(cfg, f.tgt_dist, gen_size(cfg, rng), rng, prefix="z")
    elif strategy == "b":
        f = gen_random_morphism(cfg, rng)
        g = gen_iso(cfg, f.tgt_dist, rng, "z")
    else:
        f, g = structure.bloom_shriek_factorize(gen_random_morphism(cfg, rng))
    return f, g


def gen_pair(cfg: GenConfig, rng: random.Random):
    f = gen_random_morphism(cfg, rng)
    g = gen_morphism(cfg, f.tgt_dist, gen_size(cfg, rng), rng, prefix="z")
    return f, g


def gen_noncoalescable_pair(cfg: GenConfig, rng: random.Random, attempts: int = 1000):
    """Rejection-sample a composable pair with no mediator."""
    for _ in range(attempts):
        f, g = gen_pair(cfg, rng)
        if not structure.is_coalescable(f, g):
            return f, g
    # bloom of p followed by a map that merges two supported inputs
    p = core.make_space(("x0", "x1"), (Fraction(1, 2), Fraction(1, 2)))
    f = core.map_from_columns(p.labels, ("y0", "y1"),
                              [(1, 0), (Fraction(1, 2), Fraction(1, 2))])
    return core.bloom_of(p), core.morphism(f, p)


def _mix(a, b, w: Fraction):
    return [(1 - w) * u + w * v for u, v in zip(a, b)]


def perturbed(m: Morphism, direction: Morphism, w: Fraction) -> Morphism:
    """Mix ``m`` with ``direction`` at weight ``w``: both the map and the prior move."""
    p = core.make_space(m.map.src, _mix(m.src_dist.probs, direction.src_dist.probs, w))
    cols = [_mix(a, b, w) for a, b in zip(m.map.columns(), direction.map.columns())]
    return core.morphism(core.map_from_columns(m.map.src, m.map.tgt, cols), p)


def continuity_residuals(m: Morphism, direction: Morphism, steps: int) -> list[float]:
    """``|K(f_n) - K(f)|`` for n = 1..steps, where f_n mixes in ``direction`` at weight n^-6."""
    base = measures.conditional_information_loss(m)
    return [abs(measures.conditional_information_loss(
                perturbed(m, direction, Fraction(1, n ** CONTINUITY_POWER))) - base)
            for n in range(1, steps + 1)]


def _continuity_verdict(series: list[float]) -> tuple[bool, str]:
    tail = series[len(series) // 2:]
    if series[-1] >= CONTINUITY_TARGET:
        return False, f"final residual {series[-1]:.3e} >= {CONTINUITY_TARGET}"
    for a, b in zip(tail, tail[1:]):
        if b > a + MONOTONE_SLACK:
            return False, "residuals increase over the second half of the sequence"
    return True, ""


def check_continuity(m: Morphism, steps: int, cfg: GenConfig,
                     direction: Morphism | None = None) -> PropReport:
    """Perturb ``m`` toward a random morphism and watch K converge.

    The sequence f_n mixes both the map and the prior with the perturbation
    at weight n^-6. The report fails unless the last residual is below 1e-6
    and the residuals never increase over the second half of the sequence.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    start = time.perf_counter()
    if direction is None:
        rng = trial_rng(cfg.seed, "continuity-direction", 0)
        u = gen_space(cfg, len(m.map.src), rng)
        u = core.make_space(m.map.src, u.probs)
        direction = core.morphism(gen_map(cfg, m.map.src, m.map.tgt, rng), u)
    series = continuity_residuals(m, direction, steps)
    ok, why = _continuity_verdict(series)
    failures = () if ok else (Failure(
        0, document_to_json(Document.from_objects({"f": m, "r": direction})),
        {"final": series[-1]}, why),)
    return PropReport("continuity", cfg.seed, steps, failures, series[-1],
                      time.perf_counter() - start, tuple(series))


# -- suites ------------------------------------------------------------------


def _close(a: float, b: float) -> float:
    return abs(a - b)


K = measures.conditional_information_loss
H = measures.conditional_entropy


def _gen_morph(rng, cfg):
    return {"f": gen_random_morphism(cfg, rng)}


def _gen_det(rng, cfg):
    return {"f": gen_random_morphism(cfg, rng, deterministic=True)}


def _gen_space(rng, cfg):
    return {"p": gen_space(cfg, gen_size(cfg, rng), rng)}


def _gen_coal(rng, cfg):
    f, g = gen_coalescable_pair(cfg, rng)
    return {"f": f, "g": g}


def _gen_mixed_pair(rng, cfg):
    f, g = gen_coalescable_pair(cfg, rng) if rng.random() < 0.5 else gen_pair(cfg, rng)
    return {"f": f, "g": g}


def check_positivity(inst):
    m = inst["f"]
    k, kc = K(m), measures.closs_closed_form(m)
    res = max(0.0, -k, _close(k, kc))
    return Check(k >= -SIGN_SLACK and _close(k, kc) < TOL, res,
                 {"K": k, "K_closed_form": kc}, "K >= 0 and both evaluations agree")


def check_restriction(inst):
    m = inst["f"]
    k = K(m)
    diff = measures.shannon_entropy(m.src_dist) - measures.shannon_entropy(m.tgt_dist)
    h = H(m)
    ok = core.is_deterministic(m.map) and abs(h) < TOL and _close(k, diff) < TOL
    return Check(ok, max(abs(h), _close(k, diff)), {"K": k, "H(p)-H(q)": diff, "H(f|p)": h},
                 "deterministic f has K = H(p) - H(q) and H(f|p) = 0")


def _gen_convex(rng, cfg):
    p = gen_space(cfg, gen_size(cfg, rng), rng, "i")
    inst = {"p": p}
    for k in range(len(p)):
        inst[f"Q{k}"] = gen_random_morphism(cfg, rng)
    return inst


def check_convex_linearity(inst):
    p = inst["p"]
    parts = [inst[f"Q{k}"] for k in range(len(p))]
    total = core.convex_sum_morphisms(p, parts)
    weights = [float(v) for v in p.probs]
    res = 0.0
    obs = {}
    for name, F in (("K", K), ("H", H)):
        lhs = F(total)
        rhs = sum(w * F(q) for w, q in zip(weights, parts))
        obs[name] = [lhs, rhs]
        res = max(res, _close(lhs, rhs))
    return Check(res < TOL, res, obs, "F(⊕ p_x Q^x) = Σ p_x F(Q^x) for F in {K, H}")


def _gen_continuity(rng, cfg):
    m = gen_random_morphism(cfg, rng)
    u = core.make_space(m.map.src, gen_space(cfg, len(m.map.src), rng).probs)
    r = core.morphism(gen_map(cfg, m.map.src, m.map.tgt, rng), u)
    return {"f": m, "r": r}


def check_continuity_instance(inst, steps: int = 64):
    series = continuity_residuals(inst["f"], inst["r"], steps)
    ok, why = _continuity_verdict(series)
    return Check(ok, 0.0, {"final": series[-1], "midpoint": series[len(series) // 2]},
                 why or "K(f_n) -> K(f)")


def check_reduction(inst):
    m = inst["f"]
    _, proj = structure.bloom_shriek_factorize(m)
    k, kr = K(m), K(proj)
    hj = measures.shannon_entropy(core.joint_distribution(m))
    chain = H(m) + measures.shannon_entropy(m.src_dist)
    res = max(_close(k, kr), _close(hj, chain))
    return Check(res < TOL, res, {"K": k, "K(pi_Y)": kr, "H(joint)": hj, "H(f|p)+H(p)": chain},
                 "K(f) = K(pi_Y) and H(joint) = H(f|p) + H(p)")


def check_blooming(inst):
    k = K(core.bloom_of(inst["p"]))
    return Check(abs(k) < TOL, abs(k), {"K(bloom_p)": k}, "K(bloom_p) = 0")


def check_shrieking(inst):
    h = H(core.shriek_of(inst["p"]))
    return Check(abs(h) < TOL, abs(h), {"H(shriek_p)": h}, "H(shriek_p) = 0")


def _semi(F, label):
    def check(inst):
        f, g = inst["f"], inst["g"]
        h = structure.find_mediator(f, g)
        if h is None or not structure.verify_mediator(h, f, g):
            return Check(False, 0.0, {"mediator": None}, "generated pair admits a mediator")
        gf = core.compose_morphisms(g, f)
        lhs, rhs = F(gf), F(f) + F(g)
        return Check(_close(lhs, rhs) < TOL, _close(lhs, rhs),
                     {f"{label}(g∘f)": lhs, f"{label}(f)+{label}(g)": rhs},
                     f"{label} is additive on coalescable pairs")
    return check


def check_entropic_bayes(inst):
    m = inst["f"]
    inv = bayes.inverse(m)
    lhs = H(m) + H(core.bloom_of(m.src_dist))
    rhs = H(inv) + H(core.bloom_of(m.tgt_dist))
    return Check(_close(lhs, rhs) < TOL, _close(lhs, rhs), {"lhs": lhs, "rhs": rhs},
                 "H(f) + H(bloom_p) = H(fbar) + H(bloom_q)")


def check_bayes_duality(inst):
    m = inst["f"]
    inv = bayes.inverse(m)
    a, b = H(m), K(inv)
    c, d = K(m), H(inv)
    res = max(_close(a, b), _close(c, d))
    return Check(res < TOL, res, {"H(f)": a, "K(fbar)": b, "K(f)": c, "H(fbar)": d},
                 "H = K∘B and K = H∘B")


def check_bayes_rule(inst):
    m = inst["f"]
    pair = bayes.bayesian_inverse(m)
    ok = bayes.verify_bayes_rule(pair)
    sym = bayes.verify_bayes_rule(bayes.BayesPair(pair.inverse, m))
    return Check(ok and sym, 0.0, {"bayes_rule": ok, "symmetric": sym},
                 "fbar_xy q_y = f_yx p_x exactly, in both directions")


def check_double_inverse(inst):
    m = inst["f"]
    ok = bayes.double_inverse_check(m)
    exact = True
    if not core.nullspace(m.src_dist) and not core.nullspace(m.tgt_dist):
        exact = bayes.inverse(bayes.inverse(m)) == m
    return Check(ok and exact, 0.0, {"ae_equal": ok, "exact_when_full_support": exact},
                 "B(B(f)) =_p f")


def check_joint_symmetry(inst):
    m = inst["f"]
    inv = bayes.inverse(m)
    lhs = core.joint_distribution(m)
    rhs = core.pushforward(core.swap(m.map.tgt, m.map.src), core.joint_distribution(inv))
    return Check(lhs == rhs, 0.0, {"equal": lhs == rhs}, "joint(f) = swap∘joint(fbar)")


def check_coalescable_duality(inst):
    f, g = inst["f"], inst["g"]
    bf, bg = bayes.inverse(f), bayes.inverse(g)
    fwd = structure.find_mediator(f, g)
    back = structure.find_mediator(bg, bf)
    transported = fwd is None or structure.verify_mediator(fwd.transpose(), bg, bf)
    ok = (fwd is None) == (back is None) and transported
    return Check(ok, 0.0, {"forward": fwd is not None, "backward": back is not None,
                           "transported_mediator_valid": transported},
                 "(f, g) coalescable iff (B(g), B(f)) coalescable")


def check_mediator_deviation(inst):
    f, g = inst["f"], inst["g"]
    dev = measures.functoriality_deviation(f, g)
    has = structure.find_mediator(f, g) is not None
    via_h = H(g) + H(f) - measures.composite_entropy(f, g)
    y = f.map.tgt
    memory = core.compose(core.product(g.map, core.identity(y)),
                          core.compose(core.copy(y), f.map))
    h_mem = H(core.morphism(memory, f.src_dist))
    res = max(_close(dev, via_h), _close(h_mem, H(g) + H(f)))
    ok = dev >= -SIGN_SLACK and has == (dev <= TOL) and res < TOL
    return Check(ok, res, {"deviation": dev, "via_entropies": via_h, "mediator": has},
                 "deviation >= 0, zero iff a mediator exists, equal to H(g|q)+H(f|p)-H(g∘f|p)")


def _gen_vanishing(rng, cfg):
    if rng.random() < 0.5:
        return _gen_morph(rng, cfg)
    # columns with pairwise disjoint supports on supported inputs: K = 0
    p = gen_space(cfg, gen_size(cfg, rng), rng, "x")
    ny = rng.randint(len(p.support()), max(len(p.support()), cfg.max_size))
    ys = _labels("y", ny)
    owner = list(p.support()) + [rng.choice(p.support()) for _ in range(ny - len(p.support()))]
    rng.shuffle(owner)
    cols = []
    for i in range(len(p)):
        if p.probs[i] == 0:
            cols.append(gen_column(cfg, ny, rng))
            continue
        mine = [j for j in range(ny) if owner[j] == i]
        sub = _gen_probs(GenConfig(null_prob=Fraction(0), denom_bound=cfg.denom_bound),
                         len(mine), rng)
        col = [Fraction(0)] * ny
        for j, v in zip(mine, sub):
            col[j] = v
        cols.append(col)
    return {"f": core.morphism(core.map_from_columns(p.labels, ys, cols), p)}


def check_vanishing_k(inst):
    m = inst["f"]
    inv = bayes.inverse(m)
    exact = core.is_ae_deterministic(inv.map, m.tgt_dist)
    found = structure.find_disintegration(inv) is not None
    direct = core.ae_equal(core.compose(inv.map, m.map), core.identity(m.map.src), m.src_dist)
    code = structure.code_from_morphism(m)
    greedy = structure.is_correctable(code) is not None
    brute = (structure.brute_force_recovery(code) is not None
             if len(code.A) <= 3 and len(code.Y) <= 3 else greedy)
    k = K(m)
    ok = exact == found == direct == greedy == brute == (k <= TOL)
    return Check(ok, 0.0, {"fbar_ae_deterministic": exact, "disintegration": found,
                           "section_check": direct, "correctable": greedy,
                           "brute_force": brute, "K": k},
                 "K(f) = 0 iff fbar a.e. deterministic iff disintegration iff correctable")


def _gen_ae(rng, cfg):
    n = rng.randint(2, max(2, cfg.max_size))
    probs = _gen_probs(cfg, n, rng)
    if all(probs):
        k = rng.randrange(n)
        j = (k + 1) % n
        probs[j] += probs[k]
        probs[k] = Fraction(0)
    p = core.make_space(_labels("x", n), probs)
    f = gen_morphism(cfg, p, gen_size(cfg, rng), rng)
    cols = [f.map.column(i) if p.probs[i] else gen_column(cfg, len(f.map.tgt), rng)
            for i in range(n)]
    g = core.morphism(core.map_from_columns(p.labels, f.map.tgt, cols), p)
    return {"f": f, "g": g}


def check_ae_invariance(inst):
    f, g = inst["f"], inst["g"]
    same = core.ae_equal(f.map, g.map, f.src_dist) and f.tgt_dist == g.tgt_dist
    res = max(_close(K(f), K(g)), _close(H(f), H(g)))
    inv_same = core.ae_equal(bayes.inverse(f).map, bayes.inverse(g).map, f.tgt_dist)
    return Check(same and inv_same and res < TOL, res,
                 {"K": [K(f), K(g)], "H": [H(f), H(g)], "inverses_ae_equal": inv_same},
                 "f =_p g implies equal K, equal H and B(f) =_q B(g)")


def _gen_iso(rng, cfg):
    f = gen_random_morphism(cfg, rng)
    # e: (W, s) -> (X, p) is the inverse of a random relabelling of X
    e = gen_iso(cfg, f.src_dist, rng, "w")
    e = Morphism(core.inverse_iso(e.map), e.tgt_dist, e.src_dist)
    g = gen_iso(cfg, f.tgt_dist, rng, "z")
    return {"e": e, "f": f, "g": g}


def check_iso_invariance(inst):
    e, f, g = inst["e"], inst["f"], inst["g"]
    gfe = core.compose_morphisms(g, core.compose_morphisms(f, e))
    res = max(_close(K(gfe), K(f)), _close(H(gfe), H(f)))
    return Check(res < TOL, res, {"K": [K(gfe), K(f)], "H": [H(gfe), H(f)]},
                 "F(g∘f∘e) = F(f) for isomorphisms e, g")


def check_bloom_decomposition(inst):
    m = inst["f"]
    f, p, q = m.map, m.src_dist, m.tgt_dist
    inv = bayes.inverse(m)
    bl, _ = structure.bloom_shriek_factorize(m)
    shriek_inv = Morphism(core.projection(f.tgt, f.src, 0), core.joint_distribution(inv), q)
    shriek_f = Morphism(structure.shriek(f), core.joint_distribution(m), p)
    fibres = [core.make_space(f.tgt, f.column(i)) for i in range(len(f.src))]
    weights = [float(v) for v in p.probs]
    res, obs = 0.0, {}
    for name, F in (("K", K), ("H", H)):
        a = _close(F(m), F(shriek_inv) + F(bl))
        b = _close(F(bl), sum(w * F(core.bloom_of(s)) for w, s in zip(weights, fibres)))
        c = _close(F(shriek_f), sum(w * F(core.shriek_of(s)) for w, s in zip(weights, fibres)))
        obs[name] = [a, b, c]
        res = max(res, a, b, c)
    return Check(res < TOL, res, obs, "F(f) = F(!_fbar) + F(bloom_f) and both convex splittings")


def _assoc(xs, ys, zs) -> StochMap:
    table = {core.pair_label(core.pair_label(x, y), z): core.pair_label(x, core.pair_label(y, z))
             for x in xs for y in ys for z in zs}
    src = core.product_labels(core.product_labels(xs, ys), zs)
    tgt = core.product_labels(xs, core.product_labels(ys, zs))
    return core.deterministic_map(src, tgt, table)


def _gen_markov(rng, cfg):
    f = gen_random_morphism(cfg, rng)
    g = gen_morphism(cfg, f.tgt_dist, gen_size(cfg, rng), rng, prefix="z")
    h = gen_morphism(cfg, g.tgt_dist, gen_size(cfg, rng), rng, prefix="w")
    f2 = gen_morphism(cfg, gen_space(cfg, gen_size(cfg, rng), rng, "a"),
                      gen_size(cfg, rng), rng, prefix="b")
    g2 = gen_morphism(cfg, f2.tgt_dist, gen_size(cfg, rng), rng, prefix="c")
    return {"f": f, "g": g, "h": h, "f2": f2, "g2": g2}


def check_markov_axioms(inst):
    f, g, h = inst["f"].map, inst["g"].map, inst["h"].map
    f2, g2 = inst["f2"].map, inst["g2"].map
    p = inst["f"].src_dist
    X, Y = f.src, f.tgt
    c = core.compose
    laws = {
        "associativity": c(h, c(g, f)) == c(c(h, g), f),
        "identity": c(core.identity(Y), f) == f == c(f, core.identity(X)),
        "pushforward": core.pushforward(c(g, f), p) == core.pushforward(g, core.pushforward(f, p)),
        "marginals": (core.pushforward(core.projection(X, Y, 0), core.joint_distribution(inst["f"])) == p
                      and core.pushforward(core.projection(X, Y, 1),
                                           core.joint_distribution(inst["f"])) == inst["f"].tgt_dist),
        "interchange": c(core.product(g, g2), core.product(f, f2)) == core.product(c(g, f), c(g2, f2)),
        "counit": (c(core.projection((POINT,), X, 1),
                     c(core.product(core.discard(X), core.identity(X)), core.copy(X))) == core.identity(X)
                   and c(core.projection(X, (POINT,), 0),
                         c(core.product(core.identity(X), core.discard(X)), core.copy(X))) == core.identity(X)),
        "coassociativity": (c(_assoc(X, X, X), c(core.product(core.copy(X), core.identity(X)), core.copy(X)))
                            == c(core.product(core.identity(X), core.copy(X)), core.copy(X))),
        "commutativity": c(core.swap(X, X), core.copy(X)) == core.copy(X),
        "discard_naturality": c(core.discard(Y), f) == core.discard(X),
        "bloom_section": c(structure.shriek(f), structure.bloom(f)) == core.identity(X),
        "bloom_definition": structure.bloom(f) == c(core.product(core.identity(X), f), core.copy(X)),
        "bloom_factorization": c(core.projection(X, Y, 1), structure.bloom(f)) == f,
    }
    return Check(all(laws.values()), 0.0, {k: v for k, v in laws.items() if not v},
                 "Markov category laws hold exactly")


@dataclass(frozen=True)
class Suite:
    name: str
    gen: Callable
    check: Callable


SUITES: dict[str, Suite] = {s.name: s for s in (
    Suite("positivity", _gen_morph, check_positivity),
    Suite("restriction-to-deterministic", _gen_det, check_restriction),
    Suite("convex-linearity", _gen_convex, check_convex_linearity),
    Suite("continuity", _gen_continuity, check_continuity_instance),
    Suite("reduction", _gen_morph, check_reduction),
    Suite("blooming", _gen_space, check_blooming),
    Suite("shrieking", _gen_space, check_shrieking),
    Suite("semi-functoriality-K", _gen_coal, _semi(K, "K")),
    Suite("semi-functoriality-H", _gen_coal, _semi(H, "H")),
    Suite("entropic-bayes", _gen_morph, check_entropic_bayes),
    Suite("bayes-duality", _gen_morph, check_bayes_duality),
    Suite("bayes-rule-exact", _gen_morph, check_bayes_rule),
    Suite("double-inverse", _gen_morph, check_double_inverse),
    Suite("joint-symmetry", _gen_morph, check_joint_symmetry),
    Suite("coalescable-duality", _gen_mixed_pair, check_coalescable_duality),
    Suite("mediator-deviation-equivalence", _gen_mixed_pair, check_mediator_deviation),
    Suite("vanishing-K-correctable", _gen_vanishing, check_vanishing_k),
    Suite("ae-invariance", _gen_ae, check_ae_invariance),
    Suite("iso-invariance", _gen_iso, check_iso_invariance),
    Suite("bloom-decomposition", _gen_morph, check_bloom_decomposition),
    Suite("markov-axioms", _gen_markov, check_markov_axioms),
)}


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(name) from None


def run_check(suite: Suite, inst: dict) -> Check:
    try:
        return suite.check(inst)
    except (FinStochError, AssertionError, ZeroDivisionError) as e:
        return Check(False, 0.0, {"error": f"{type(e).__name__}: {e}"}, "check runs without error")


def _run_trials(name: str, cfg: GenConfig, trials: range):
    suite = get_suite(name)
    out = []
    for t in trials:
        inst = suite.gen(trial_rng(cfg.seed, name, t), cfg)
        res = run_check(suite, inst)
        witness = None if res.ok else document_to_json(Document.from_objects(inst))
        out.append((t, res, witness))
    return out


def run_suite(name: str, cfg: GenConfig = GenConfig(), workers: int = 1) -> PropReport:
    """Run ``cfg.trials`` seeded trials of a registered suite.

    With ``workers > 1`` trials are spread over processes; the report is
    identical to the serial one apart from ``elapsed``.
    """
    get_suite(name)
    start = time.perf_counter()
    if workers > 1:
        chunks = [range(k, cfg.trials, workers) for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_run_trials, [name] * workers, [cfg] * workers, chunks)
            results = sorted((r for part in parts for r in part), key=lambda r: r[0])
    else:
        results = _run_trials(name, cfg, range(cfg.trials))
    failures = tuple(Failure(t, w, res.observed, res.expected)
                     for t, res, w in results if not res.ok)
    max_res = max((res.residual for _, res, _ in results), default=0.0)
    return PropReport(name, cfg.seed, cfg.trials, failures, max_res,
                      time.perf_counter() - start)


def replay(name: str, witness: dict) -> Check:
    """Re-run one suite check on a serialized failure witness."""
    return run_check(get_suite(name), document_from_json(witness).objects())
