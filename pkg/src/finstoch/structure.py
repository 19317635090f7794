"""Bloom-shriek factorization, mediators, disintegrations and classical codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bayes import bayesian_inverse
from .core import (
    Label,
    Morphism,
    ShapeMismatch,
    StochMap,
    ae_equal,
    compose,
    deterministic_map,
    identity,
    is_ae_deterministic,
    joint_distribution,
    make_map,
    pair_label,
    product_labels,
    projection,
)

# -- bloom and shriek --------------------------------------------------------


def bloom(f: StochMap) -> StochMap:
    """X ~> X×Y sending x to δ_x ⊗ f_x, i.e. ``(id × f) ∘ copy``."""
    src, tgt = f.src, product_labels(f.src, f.tgt)
    rows = []
    for i2 in range(len(f.src)):
        for row in f.matrix:
            rows.append([row[i] if i == i2 else Fraction(0) for i in range(len(f.src))])
    return make_map(src, tgt, rows)


def shriek(f: StochMap) -> StochMap:
    """Projection X×Y -> X."""
    return projection(f.src, f.tgt, 0)


def bloom_shriek_factorize(m: Morphism) -> tuple[Morphism, Morphism]:
    """Factor ``m`` through its joint distribution on X×Y.

    Returns the bloom (X, p) ~> (X×Y, ϑ) and the projection
    (X×Y, ϑ) -> (Y, q); their composite is ``m`` exactly.
    """
    f = m.map
    theta = joint_distribution(m)
    first = Morphism(bloom(f), m.src_dist, theta)
    second = Morphism(projection(f.src, f.tgt, 1), theta, m.tgt_dist)
    return first, second


# -- mediators ---------------------------------------------------------------


@dataclass(frozen=True)
class Mediator:
    """A function Z×X -> Y stored as ``table[z_index][x_index] -> y label``."""

    Z: tuple[Label, ...]
    X: tuple[Label, ...]
    Y: tuple[Label, ...]
    table: tuple[tuple[Label, ...], ...]

    def __post_init__(self):
        if len(self.table) != len(self.Z) or any(len(r) != len(self.X) for r in self.table):
            raise ShapeMismatch("mediator table must be |Z| x |X|")
        for r in self.table:
            for y in r:
                if y not in self.Y:
                    raise ShapeMismatch(f"mediator value {y!r} is not in Y")

    def __call__(self, z: Label, x: Label) -> Label:
        return self.table[self.Z.index(z)][self.X.index(x)]

    def as_map(self) -> StochMap:
        """The deterministic map Z×X -> Y."""
        lookup = {pair_label(z, x): self.table[a][b]
                  for a, z in enumerate(self.Z) for b, x in enumerate(self.X)}
        return deterministic_map(product_labels(self.Z, self.X), self.Y, lookup)

    def transpose(self) -> Mediator:
        """``h ∘ swap``: the same function read on X×Z."""
        table = tuple(tuple(self.table[a][b] for a in range(len(self.Z)))
                      for b in range(len(self.X)))
        return Mediator(self.X, self.Z, self.Y, table)


def _check_composable(f: StochMap, g: StochMap):
    if f.tgt != g.src:
        raise ShapeMismatch(f"pair is not composable: {f.tgt} vs {g.src}")


def _middle_candidates(f: StochMap, g: StochMap, z: int, x: int) -> list[int]:
    return [y for y in range(len(f.tgt)) if g.matrix[z][y] != 0 and f.matrix[y][x] != 0]


def _scan(f: StochMap, g: StochMap, columns: Sequence[int]):
    """Build a mediator table over ``columns``; return (table, violation)."""
    table = [[f.tgt[0]] * len(f.src) for _ in g.tgt]
    for x in columns:
        for z in range(len(g.tgt)):
            ys = _middle_candidates(f, g, z, x)
            if len(ys) > 1:
                return None, (g.tgt[z], f.src[x], tuple(f.tgt[y] for y in ys))
            if ys:
                table[z][x] = f.tgt[ys[0]]
    return tuple(tuple(r) for r in table), None


def find_mediator(f: Morphism, g: Morphism) -> Mediator | None:
    """A mediator for the pair, or None when none exists.

    A mediator exists iff for every supported x and every z at most one y
    has ``g_zy f_yx != 0``. Undetermined slots get the first label of Y.
    """
    _check_composable(f.map, g.map)
    table, _ = _scan(f.map, g.map, f.src_dist.support())
    if table is None:
        return None
    return Mediator(g.map.tgt, f.map.src, f.map.tgt, table)


def coalescability_witness(f: Morphism, g: Morphism):
    """``(z, x, ys)`` with two or more middle labels ys, or None if coalescable."""
    _check_composable(f.map, g.map)
    return _scan(f.map, g.map, f.src_dist.support())[1]


def find_strong_mediator(f: StochMap, g: StochMap) -> Mediator | None:
    _check_composable(f, g)
    table, _ = _scan(f, g, range(len(f.src)))
    if table is None:
        return None
    return Mediator(g.tgt, f.src, f.tgt, table)


def verify_mediator(h: Mediator, f: Morphism, g: Morphism) -> bool:
    """Exact check of ``[h(z,x) = y] (g∘f)_zx p_x == g_zy f_yx p_x`` for all z, y, x.

    This is the mediator identity with g indexed (output, input), the same
    way as every other matrix in the package.
    """
    fm, gm, p = f.map, g.map, f.src_dist
    _check_composable(fm, gm)
    if h.Z != gm.tgt or h.X != fm.src or h.Y != fm.tgt:
        raise ShapeMismatch("mediator must be a function Z×X -> Y for this pair")
    gf = compose(gm, fm)
    for z in range(len(gm.tgt)):
        for x, px in enumerate(p.probs):
            hy = h.table[z][x]
            for y, ylab in enumerate(fm.tgt):
                lhs = gf.matrix[z][x] * px if ylab == hy else Fraction(0)
                if lhs != gm.matrix[z][y] * fm.matrix[y][x] * px:
                    return False
    return True


def is_coalescable(f: Morphism, g: Morphism) -> bool:
    return find_mediator(f, g) is not None


def is_strongly_coalescable(f: StochMap, g: StochMap) -> bool:
    return find_strong_mediator(f, g) is not None


def all_mediator_tables(f: Morphism, g: Morphism):
    """Every function Z×X -> Y, as Mediator objects (|Y|^(|Z||X|) of them)."""
    Z, X, Y = g.map.tgt, f.map.src, f.map.tgt
    for flat in itertools.product(Y, repeat=len(Z) * len(X)):
        table = tuple(tuple(flat[a * len(X):(a + 1) * len(X)]) for a in range(len(Z)))
        yield Mediator(Z, X, Y, table)


def brute_force_mediator(f: Morphism, g: Morphism) -> Mediator | None:
    """Exhaustive search over all candidate tables."""
    for h in all_mediator_tables(f, g):
        if verify_mediator(h, f, g):
            return h
    return None


# -- disintegrations ---------------------------------------------------------


def find_disintegration(g: Morphism) -> Morphism | None:
    """A section f of g: (Y, q) ~> (X, p) with ``g ∘ f = id`` p-almost everywhere.

    Exists iff g is q-a.e. deterministic, in which case the Bayesian
    inverse of g is returned.
    """
    if not is_ae_deterministic(g.map, g.src_dist):
        return None
    f = bayesian_inverse(g).inverse
    if not ae_equal(compose(g.map, f.map), identity(g.map.tgt), g.tgt_dist):
        raise AssertionError("Bayesian inverse of an a.e. deterministic map is not a section")
    return f


# -- possibilistic maps and codes --------------------------------------------


@dataclass(frozen=True)
class PossMap:
    """A full relation: a nonempty set of target labels for each source label."""

    src: tuple[Label, ...]
    tgt: tuple[Label, ...]
    images: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(self.src))
        object.__setattr__(self, "tgt", tuple(self.tgt))
        images = tuple(frozenset(s) for s in self.images)
        if len(images) != len(self.src):
            raise ShapeMismatch("one image set per source label is required")
        for x, s in zip(self.src, images):
            if not s:
                raise ShapeMismatch(f"image of {x!r} is empty")
            if not s <= set(self.tgt):
                raise ShapeMismatch(f"image of {x!r} leaves the target set")
        object.__setattr__(self, "images", images)

    def __getitem__(self, x: Label) -> frozenset:
        return self.images[self.src.index(x)]

    def as_dict(self) -> dict[Label, list[Label]]:
        return {x: [y for y in self.tgt if y in s] for x, s in zip(self.src, self.images)}


def poss_identity(labels: Sequence[Label]) -> PossMap:
    return PossMap(tuple(labels), tuple(labels), tuple(frozenset([x]) for x in labels))


def poss_compose(d: PossMap, n: PossMap) -> PossMap:
    """Relational composite: ``(d ∘ n)_x`` is the union of ``d_y`` over y in ``n_x``."""
    if n.tgt != d.src:
        raise ShapeMismatch("possibilistic maps are not composable")
    return PossMap(n.src, d.tgt, tuple(frozenset().union(*(d[y] for y in s)) for s in n.images))


def ceiling(f: StochMap) -> PossMap:
    """Support relation x -> {y : f_yx > 0}."""
    return PossMap(f.src, f.tgt,
                   tuple(frozenset(y for y, v in zip(f.tgt, f.column(i)) if v > 0)
                         for i in range(len(f.src))))


@dataclass(frozen=True)
class Code:
    """A classical code (A, X, Y, E, N) with E an inclusion A -> X."""

    A: tuple[Label, ...]
    X: tuple[Label, ...]
    Y: tuple[Label, ...]
    N: PossMap

    def __post_init__(self):
        if not set(self.A) <= set(self.X):
            raise ShapeMismatch("A must be a subset of X")
        if len(set(self.A)) != len(self.A):
            raise ShapeMismatch("encoding must be injective")
        if self.N.src != tuple(self.X) or self.N.tgt != tuple(self.Y):
            raise ShapeMismatch("noise must be a possibilistic map X ~> Y")

    @property
    def E(self) -> PossMap:
        return PossMap(self.A, self.X, tuple(frozenset([a]) for a in self.A))

    def recovers(self, d: PossMap) -> bool:
        return poss_compose(d, poss_compose(self.N, self.E)) == poss_identity(self.A)


def code_from_morphism(m: Morphism) -> Code:
    """(supp p, X, Y, inclusion, ⌈f⌉)."""
    p = m.src_dist
    return Code(tuple(p.labels[i] for i in p.support()), m.map.src, m.map.tgt, ceiling(m.map))


def overlap_witness(c: Code):
    """``(y, a, a')`` with y reachable from two codewords, or None."""
    owner = {}
    for a in c.A:
        for y in c.Y:
            if y in c.N[a]:
                if y in owner:
                    return y, owner[y], a
                owner[y] = a
    return None


def is_correctable(c: Code) -> PossMap | None:
    """A recovery map D with ``D ∘ N ∘ E = id_A``, or None.

    Each output is decoded to the codewords that can produce it; outputs no
    codeword reaches go to the first codeword. The candidate is then
    checked, so overlapping supports are rejected by verification.
    """
    images = []
    for y in c.Y:
        owners = frozenset(a for a in c.A if y in c.N[a])
        images.append(owners or frozenset([c.A[0]]))
    d = PossMap(c.Y, c.A, tuple(images))
    return d if c.recovers(d) else None


def brute_force_recovery(c: Code) -> PossMap | None:
    """Exhaustive search over every possibilistic map Y ~> A."""
    subsets = [frozenset(s) for r in range(1, len(c.A) + 1)
               for s in itertools.combinations(c.A, r)]
    for choice in itertools.product(subsets, repeat=len(c.Y)):
        d = PossMap(c.Y, c.A, choice)
        if c.recovers(d):
            return d
    return None
