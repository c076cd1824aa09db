"""Finite test shapes: subcomplexes of a standard simplex, tuple-encoded.

A shape is determined by its generating faces (strictly increasing vertex
tuples inside [N]).  A k-simplex of the shape is any nondecreasing
(k+1)-tuple whose support lies in some generator; faces delete an entry,
degeneracies repeat one.  This covers Delta^n, its boundary, the horns
Lambda^n_i, the generalized horns Lambda^n_J, and their joins (ordinal sum
concatenates tuples).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError
from .sset import SimplicialMap, TruncatedSSet, make_sset


@dataclass(frozen=True)
class Shape:
    """A subcomplex of Delta^ambient given by generating faces."""

    ambient: int
    generators: tuple[tuple[int, ...], ...]  # strictly increasing supports

    def __post_init__(self):
        for g in self.generators:
            if any(not (0 <= v <= self.ambient) for v in g) or list(g) != sorted(set(g)):
                raise InputError(f"bad generator {g} for ambient {self.ambient}")

    @property
    def dim(self) -> int:
        return max(len(g) for g in self.generators) - 1

    def contains(self, t: tuple[int, ...]) -> bool:
        s = set(t)
        return any(s.issubset(g) for g in self.generators)

    def simplices(self, k: int) -> list[tuple[int, ...]]:
        """All k-simplices (nondecreasing tuples), degenerate ones included."""
        out = []
        for t in itertools.combinations_with_replacement(range(self.ambient + 1), k + 1):
            if self.contains(t):
                out.append(t)
        return out

    def nondeg_simplices(self, k: int) -> list[tuple[int, ...]]:
        return [t for t in itertools.combinations(range(self.ambient + 1), k + 1) if self.contains(t)]

    def is_subshape_of(self, other: "Shape") -> bool:
        return self.ambient == other.ambient and all(other.contains(g) for g in self.generators)

    def union(self, other: "Shape") -> "Shape":
        if self.ambient != other.ambient:
            raise InputError("union: ambient mismatch")
        gens = set(self.generators)
        for g in other.generators:
            gens.add(g)
        # drop generators dominated by others
        maximal = [g for g in gens if not any(set(g) < set(h) for h in gens)]
        return Shape(self.ambient, tuple(sorted(maximal)))


def standard_simplex(n: int) -> Shape:
    return Shape(n, (tuple(range(n + 1)),))


def boundary(n: int) -> Shape:
    if n == 0:
        raise InputError("boundary of Delta^0 is empty")
    full = tuple(range(n + 1))
    return Shape(n, tuple(full[:i] + full[i + 1:] for i in range(n + 1)))


def horn(n: int, i: int) -> Shape:
    """Lambda^n_i = Lambda^n_J with J = [n] minus {i}."""
    return generalized_horn(n, tuple(j for j in range(n + 1) if j != i))


def generalized_horn(n: int, J: tuple[int, ...]) -> Shape:
    """Lambda^n_J = union over j in J of the j-th face of Delta^n."""
    J = tuple(sorted(set(J)))
    if not J or len(J) > n or any(not (0 <= j <= n) for j in J):
        raise InputError("J must be a proper nonempty subset of [n]")
    full = tuple(range(n + 1))
    return Shape(n, tuple(full[:j] + full[j + 1:] for j in J))


def vertex_in(n: int, v: int = 0) -> Shape:
    return Shape(n, ((v,),))


def join_shapes(s: Shape, t: Shape) -> Shape:
    """Ordinal-sum join, a subcomplex of Delta^{a+b+1}."""
    a = s.ambient
    gens = tuple(sorted(gs + tuple(v + a + 1 for v in gt) for gs in s.generators for gt in t.generators))
    return Shape(a + t.ambient + 1, gens)


def materialize(shape: Shape, D: int | None = None):
    """Realize the shape as a TruncatedSSet up to degree D (default: its dim).

    Returns (sset, levels) where levels[k] is the ordered list of tuples and
    ids are positions in it.
    """
    if D is None:
        D = shape.dim
    levels = [shape.simplices(k) for k in range(D + 1)]
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]
    faces = [[]]
    for k in range(1, D + 1):
        faces.append([[index[k - 1][t[:i] + t[i + 1:]] for t in levels[k]] for i in range(k + 1)])
    degs = []
    for k in range(D):
        degs.append([[index[k + 1][t[: i + 1] + t[i:]] for t in levels[k]] for i in range(k + 1)])
    degs.append([])
    return make_sset(sizes, faces, degs), levels


def inclusion_map(small: Shape, big: Shape, D: int | None = None) -> SimplicialMap:
    if not small.is_subshape_of(big):
        raise InputError("not a subshape")
    if D is None:
        D = big.dim
    src, src_levels = materialize(small, D)
    tgt, tgt_levels = materialize(big, D)
    tgt_index = [{t: i for i, t in enumerate(lv)} for lv in tgt_levels]
    comps = [[tgt_index[k][t] for t in src_levels[k]] for k in range(D + 1)]
    return SimplicialMap(src, tgt, tuple(tuple(c) for c in comps))


def shape_map(src: Shape, tgt: Shape, vertex_images: tuple[int, ...], D: int):
    """Simplicial map induced by an order-preserving vertex assignment.

    vertex_images[v] is the image in [tgt.ambient] of vertex v; tuples map
    entrywise and must land in tgt.
    """
    src_s, src_levels = materialize(src, D)
    tgt_s, tgt_levels = materialize(tgt, D)
    tgt_index = [{t: i for i, t in enumerate(lv)} for lv in tgt_levels]
    comps = []
    for k in range(D + 1):
        row = []
        for t in src_levels[k]:
            image = tuple(vertex_images[v] for v in t)
            if image not in tgt_index[k]:
                raise InputError(f"vertex assignment maps {t} outside the target shape")
            row.append(tgt_index[k][image])
        comps.append(tuple(row))
    return SimplicialMap(src_s, tgt_s, tuple(comps))
