"""Finite probability spaces and stochastic maps with exact rational entries.

A :class:`StochMap` stores its matrix row-major by target label, so
``f.matrix[j][i]`` is the probability of ``f.tgt[j]`` given ``f.src[i]``.
Every value is immutable once built; constructors validate eagerly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

POINT = "•"

Label = str


class FinStochError(ValueError):
    """Base class for invalid spaces, maps and morphisms."""


class DuplicateLabel(FinStochError):
    pass


class NotNormalized(FinStochError):
    pass


class ColumnNotNormalized(FinStochError):
    pass


class OutOfRange(FinStochError):
    pass


class ShapeMismatch(FinStochError):
    pass


class EmptySpace(FinStochError):
    pass


class NotMeasurePreserving(FinStochError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into the
    exact zero tests everything else relies on.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact probability {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def pair_label(x: Label, y: Label) -> Label:
    return f"({x},{y})"


def sum_label(x: Label, z: Label) -> Label:
    return f"{x}:{z}"


def _check_labels(labels: Sequence[Label]) -> tuple[Label, ...]:
    labels = tuple(labels)
    if not labels:
        raise EmptySpace("a finite set carrying a probability needs at least one label")
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise FinStochError(f"labels must be nonempty strings, got {lab!r}")
        if lab in seen:
            raise DuplicateLabel(f"label {lab!r} appears twice")
        seen.add(lab)
    return labels


@dataclass(frozen=True)
class ProbSpace:
    """A finite labelled set with an exact probability distribution."""

    labels: tuple[Label, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        labels = _check_labels(self.labels)
        probs = tuple(as_rational(v) for v in self.probs)
        if len(probs) != len(labels):
            raise ShapeMismatch(f"{len(labels)} labels but {len(probs)} probabilities")
        for lab, v in zip(labels, probs):
            if not 0 <= v <= 1:
                raise OutOfRange(f"p[{lab}] = {v} is outside [0, 1]")
        total = sum(probs)
        if total != 1:
            raise NotNormalized(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, label: Label) -> Fraction:
        return self.probs[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.probs)

    def support(self) -> tuple[int, ...]:
        """Indices of labels carrying nonzero mass."""
        return tuple(i for i, v in enumerate(self.probs) if v != 0)


@dataclass(frozen=True)
class StochMap:
    """Column-stochastic matrix between two labelled finite sets."""

    src: tuple[Label, ...]
    tgt: tuple[Label, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        src = _check_labels(self.src)
        tgt = _check_labels(self.tgt)
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.matrix)
        if len(rows) != len(tgt) or any(len(row) != len(src) for row in rows):
            raise ShapeMismatch(
                f"matrix must be {len(tgt)}x{len(src)} (|tgt| x |src|)"
            )
        for j, row in enumerate(rows):
            for i, v in enumerate(row):
                if not 0 <= v <= 1:
                    raise OutOfRange(f"entry ({tgt[j]}|{src[i]}) = {v} is outside [0, 1]")
        for i, x in enumerate(src):
            total = sum(row[i] for row in rows)
            if total != 1:
                raise ColumnNotNormalized(f"column {x!r} sums to {total}, not 1")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "tgt", tgt)
        object.__setattr__(self, "matrix", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.tgt), len(self.src)

    def column(self, i: int) -> tuple[Fraction, ...]:
        return tuple(row[i] for row in self.matrix)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(i) for i in range(len(self.src))]

    def entry(self, y: Label, x: Label) -> Fraction:
        return self.matrix[self.tgt.index(y)][self.src.index(x)]

    def image(self, i: int) -> int | None:
        """Target index of a point-mass column, else None."""
        col = self.column(i)
        hits = [j for j, v in enumerate(col) if v != 0]
        if len(hits) == 1 and col[hits[0]] == 1:
            return hits[0]
        return None


@dataclass(frozen=True)
class Morphism:
    """A measure-preserving stochastic map (X, p) ~> (Y, q)."""

    map: StochMap
    src_dist: ProbSpace
    tgt_dist: ProbSpace

    def __post_init__(self):
        if self.src_dist.labels != self.map.src:
            raise ShapeMismatch("source distribution is not over the map's source labels")
        if self.tgt_dist.labels != self.map.tgt:
            raise ShapeMismatch("target distribution is not over the map's target labels")
        pushed = _push(self.map, self.src_dist.probs)
        if pushed != self.tgt_dist.probs:
            raise NotMeasurePreserving(
                f"pushforward of the source is {[str(v) for v in pushed]}, "
                f"target declares {[str(v) for v in self.tgt_dist.probs]}"
            )

    @property
    def p(self) -> ProbSpace:
        return self.src_dist

    @property
    def q(self) -> ProbSpace:
        return self.tgt_dist


# -- constructors -----------------------------------------------------------


def make_space(labels: Sequence[Label], probs: Sequence) -> ProbSpace:
    return ProbSpace(tuple(labels), tuple(probs))


def make_map(src: Sequence[Label], tgt: Sequence[Label], matrix) -> StochMap:
    return StochMap(tuple(src), tuple(tgt), tuple(tuple(row) for row in matrix))


def map_from_columns(src, tgt, columns) -> StochMap:
    """Build a map from one distribution per source label."""
    columns = [tuple(c) for c in columns]
    if len(columns) != len(src):
        raise ShapeMismatch(f"{len(columns)} columns for {len(src)} source labels")
    rows = [[col[j] for col in columns] for j in range(len(tgt))]
    return make_map(src, tgt, rows)


def deterministic_map(src: Sequence[Label], tgt: Sequence[Label],
                      fn: Callable[[Label], Label] | dict) -> StochMap:
    """The 0/1 map sending each source label to ``fn(label)``."""
    lookup = fn.__getitem__ if isinstance(fn, dict) else fn
    tgt = tuple(tgt)
    rows = [[Fraction(0)] * len(src) for _ in tgt]
    for i, x in enumerate(src):
        y = lookup(x)
        if y not in tgt:
            raise ShapeMismatch(f"{x!r} is sent to {y!r}, which is not a target label")
        rows[tgt.index(y)][i] = Fraction(1)
    return make_map(src, tgt, rows)


def morphism(f: StochMap, p: ProbSpace) -> Morphism:
    """The morphism (X, p) ~> (Y, f_* p)."""
    return Morphism(f, p, pushforward(f, p))


def point_space() -> ProbSpace:
    return ProbSpace((POINT,), (Fraction(1),))


def uniform_space(labels: Sequence[Label]) -> ProbSpace:
    n = len(labels)
    return make_space(labels, [Fraction(1, n)] * n)


def point_mass(labels: Sequence[Label], at: Label) -> ProbSpace:
    return make_space(labels, [Fraction(int(lab == at)) for lab in labels])


# -- categorical structure -------------------------------------------------


def identity(labels: Sequence[Label]) -> StochMap:
    return deterministic_map(labels, labels, lambda x: x)


def compose(g: StochMap, f: StochMap) -> StochMap:
    """Chapman-Kolmogorov composite ``g ∘ f``."""
    if f.tgt != g.src:
        raise ShapeMismatch(f"cannot compose: f lands in {f.tgt}, g starts from {g.src}")
    nx = len(f.src)
    rows = []
    for grow in g.matrix:
        rows.append([
            sum((gzy * f.matrix[j][i] for j, gzy in enumerate(grow) if gzy), Fraction(0))
            for i in range(nx)
        ])
    return make_map(f.src, g.tgt, rows)


def product_labels(xs: Iterable[Label], ys: Iterable[Label]) -> tuple[Label, ...]:
    ys = tuple(ys)
    return tuple(pair_label(x, y) for x in xs for y in ys)


def product(f: StochMap, g: StochMap) -> StochMap:
    """Tensor product with entries f_{x'x} g_{y'y} on pair labels."""
    src = product_labels(f.src, g.src)
    tgt = product_labels(f.tgt, g.tgt)
    rows = []
    for frow in f.matrix:
        for grow in g.matrix:
            rows.append([a * b for a in frow for b in grow])
    return make_map(src, tgt, rows)


def product_space(p: ProbSpace, q: ProbSpace) -> ProbSpace:
    return make_space(product_labels(p.labels, q.labels),
                      [a * b for a in p.probs for b in q.probs])


def copy(labels: Sequence[Label]) -> StochMap:
    return deterministic_map(labels, product_labels(labels, labels),
                             lambda x: pair_label(x, x))


def discard(labels: Sequence[Label]) -> StochMap:
    return deterministic_map(labels, (POINT,), lambda x: POINT)


def swap(xs: Sequence[Label], ys: Sequence[Label]) -> StochMap:
    table = {pair_label(x, y): pair_label(y, x) for x in xs for y in ys}
    return deterministic_map(product_labels(xs, ys), product_labels(ys, xs), table)


def projection(xs: Sequence[Label], ys: Sequence[Label], keep: int) -> StochMap:
    """Projection of X×Y onto its first (``keep=0``) or second factor."""
    if keep not in (0, 1):
        raise ValueError("keep must be 0 or 1")
    table = {pair_label(x, y): (x, y)[keep] for x in xs for y in ys}
    return deterministic_map(product_labels(xs, ys), (xs, ys)[keep], table)


def _push(f: StochMap, probs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(
        sum((v * pv for v, pv in zip(row, probs) if pv), Fraction(0))
        for row in f.matrix
    )


def pushforward(f: StochMap, p: ProbSpace) -> ProbSpace:
    if p.labels != f.src:
        raise ShapeMismatch("distribution is not over the map's source labels")
    return ProbSpace(f.tgt, _push(f, p.probs))


def joint_distribution(m: Morphism) -> ProbSpace:
    """Joint mass f_{yx} p_x on X×Y, x-major."""
    f, p = m.map, m.src_dist
    probs = [f.matrix[j][i] * p.probs[i]
             for i in range(len(f.src)) for j in range(len(f.tgt))]
    return make_space(product_labels(f.src, f.tgt), probs)


def nullspace(p: ProbSpace) -> frozenset[Label]:
    return frozenset(lab for lab, v in p.items() if v == 0)


def is_deterministic(f: StochMap) -> bool:
    return all(f.image(i) is not None for i in range(len(f.src)))


def is_ae_deterministic(f: StochMap, p: ProbSpace) -> bool:
    if p.labels != f.src:
        raise ShapeMismatch("distribution is not over the map's source labels")
    return all(f.image(i) is not None for i in p.support())


def ae_equal(f: StochMap, g: StochMap, p: ProbSpace) -> bool:
    """Columnwise equality on the support of ``p``."""
    if f.src != g.src or f.tgt != g.tgt or p.labels != f.src:
        raise ShapeMismatch("a.e. equality needs matching sources, targets and distribution")
    return all(f.column(i) == g.column(i) for i in p.support())


def is_isomorphism(f: StochMap) -> bool:
    """True for deterministic bijections."""
    if len(f.src) != len(f.tgt) or not is_deterministic(f):
        return False
    return len({f.image(i) for i in range(len(f.src))}) == len(f.tgt)


def inverse_iso(f: StochMap) -> StochMap:
    if not is_isomorphism(f):
        raise FinStochError("only deterministic bijections have inverses")
    table = {f.tgt[f.image(i)]: x for i, x in enumerate(f.src)}
    return deterministic_map(f.tgt, f.src, table)


def compose_morphisms(g: Morphism, f: Morphism) -> Morphism:
    if f.tgt_dist != g.src_dist:
        raise ShapeMismatch("morphisms are not composable: intermediate spaces differ")
    return Morphism(compose(g.map, f.map), f.src_dist, g.tgt_dist)


def bloom_of(p: ProbSpace) -> Morphism:
    """The unique morphism (•, 1) ~> (X, p)."""
    f = map_from_columns((POINT,), p.labels, [p.probs])
    return Morphism(f, point_space(), p)


def shriek_of(p: ProbSpace) -> Morphism:
    """The unique morphism (X, p) -> (•, 1)."""
    return Morphism(discard(p.labels), p, point_space())


def convex_sum_objects(p: ProbSpace, spaces: Sequence[ProbSpace]) -> ProbSpace:
    if len(spaces) != len(p):
        raise ShapeMismatch(f"need {len(p)} summands, got {len(spaces)}")
    labels, probs = [], []
    for (x, px), space in zip(p.items(), spaces):
        for z, qz in space.items():
            labels.append(sum_label(x, z))
            probs.append(px * qz)
    return make_space(labels, probs)


def convex_sum_maps(index: Sequence[Label], maps: Sequence[StochMap]) -> StochMap:
    """Block-diagonal sum of maps over the disjoint unions of their sets."""
    if len(maps) != len(index):
        raise ShapeMismatch(f"need {len(index)} summands, got {len(maps)}")
    src = [sum_label(x, z) for x, f in zip(index, maps) for z in f.src]
    tgt = [sum_label(x, z) for x, f in zip(index, maps) for z in f.tgt]
    rows = []
    col_offset = [0]
    for f in maps:
        col_offset.append(col_offset[-1] + len(f.src))
    for k, f in enumerate(maps):
        for row in f.matrix:
            full = [Fraction(0)] * len(src)
            full[col_offset[k]:col_offset[k + 1]] = row
            rows.append(full)
    return make_map(src, tgt, rows)


def convex_sum_morphisms(p: ProbSpace, morphs: Sequence[Morphism]) -> Morphism:
    if len(morphs) != len(p):
        raise ShapeMismatch(f"need {len(p)} summands, got {len(morphs)}")
    f = convex_sum_maps(p.labels, [m.map for m in morphs])
    return Morphism(
        f,
        convex_sum_objects(p, [m.src_dist for m in morphs]),
        convex_sum_objects(p, [m.tgt_dist for m in morphs]),
    )
