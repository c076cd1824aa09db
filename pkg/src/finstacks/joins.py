"""Joins, the cotensor X^{S*}, decalage, and expansion certificates.

The join of two simplicial sets is built on the ordinal sum: an n-simplex is
a pure simplex of either factor or a pair (sigma, tau) split by an ordinal
decomposition [n] = [p] + [q].  The cotensor X^{S*} has hom(S * Delta^l, X)
in level l, with structure maps induced by 1 * d_i and 1 * s_i; cotensoring
by Delta^{n-1} is the shift Dec_n.  Expansion certificates witness an
inclusion of shapes as a chain of horn pushouts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DEFAULT_BUDGET, InputError, InvariantViolation, check_budget
from .kan import HomSet, hom_set
from .sset import (
    SimplicialMap,
    TruncatedSSet,
    extend_degeneracies,
    make_sset,
    truncate,
)
from .shapes import Shape, join_shapes, materialize, standard_simplex


@dataclass(frozen=True)
class AugmentedSSet:
    """A simplicial set with a map to a finite set coequalizing d_0, d_1."""

    space: TruncatedSSet
    base_size: int
    eps: tuple[int, ...]

    def as_map(self) -> SimplicialMap:
        from .sset import constant_map_from

        return constant_map_from(self.space, self.base_size, self.eps)


def validate_augmented(a: AugmentedSSet) -> list[str]:
    report = []
    if len(a.eps) != a.space.sizes[0] or any(not (0 <= v < a.base_size) for v in a.eps):
        return ["augmentation table out of range"]
    for e in a.space.level(1):
        if a.eps[a.space.face(1, 0, e)] != a.eps[a.space.face(1, 1, e)]:
            report.append(f"augmentation does not coequalize at edge {e}")
    return report


# ---------------------------------------------------------------------------
# generic join

def join(S: TruncatedSSet, T: TruncatedSSet, D: int | None = None, budget=DEFAULT_BUDGET) -> TruncatedSSet:
    """Join on pair encoding; inputs are degeneracy-extended as needed."""
    if all(s == 0 for s in S.sizes):
        return T if D is None else extend_degeneracies(T, D, budget)
    if all(s == 0 for s in T.sizes):
        return S if D is None else extend_degeneracies(S, D, budget)
    dim_join = S.dimension_of_content() + T.dimension_of_content() + 1
    if D is None:
        D = dim_join
    S = extend_degeneracies(S, D, budget)
    T = extend_degeneracies(T, D, budget)

    levels = []
    for n in range(D + 1):
        lv = [("m", p, s, t) for p in range(n) for s in S.level(p) for t in T.level(n - 1 - p)]
        lv += [("s", s) for s in S.level(n)]
        lv += [("t", t) for t in T.level(n)]
        lv.sort()
        check_budget("join level", len(lv), budget)
        levels.append(lv)
    index = [{key: i for i, key in enumerate(lv)} for lv in levels]

    def face(n, i, key):
        if key[0] == "s":
            return ("s", S.face(n, i, key[1]))
        if key[0] == "t":
            return ("t", T.face(n, i, key[1]))
        _, p, s, t = key
        q = n - 1 - p
        if i <= p:
            if p == 0:
                return ("t", t)
            return ("m", p - 1, S.face(p, i, s), t)
        j = i - p - 1
        if q == 0:
            return ("s", s)
        return ("m", p, s, T.face(q, j, t))

    def deg(n, i, key):
        if key[0] == "s":
            return ("s", S.deg(n, i, key[1]))
        if key[0] == "t":
            return ("t", T.deg(n, i, key[1]))
        _, p, s, t = key
        if i <= p:
            return ("m", p + 1, S.deg(p, i, s), t)
        return ("m", p, s, T.deg(n - 1 - p, i - p - 1, t))

    sizes = [len(lv) for lv in levels]
    faces: list = [[]]
    for n in range(1, D + 1):
        faces.append([[index[n - 1][face(n, i, key)] for key in levels[n]] for i in range(n + 1)])
    degs = []
    for n in range(D):
        degs.append([[index[n + 1][deg(n, i, key)] for key in levels[n]] for i in range(n + 1)])
    degs.append([])
    return make_sset(sizes, faces, degs)


# ---------------------------------------------------------------------------
# cotensor by the join with a shape

@dataclass
class Cotensor:
    """X^{S*}: level l is hom(S * Delta^l, X)."""

    X: TruncatedSSet
    shape: Shape
    sset: TruncatedSSet
    hom_levels: list[HomSet]
    join_levels: list  # per l: (Shape, materialized levels table)

    def element_row(self, l: int, idx: int):
        return self.hom_levels[l].elements[idx]


def _image_of_tuple(X, element, tgt_index, t):
    """Image under a hom element of a tuple possibly above the stored rows.

    Nondegenerate tuples are looked up directly; degenerate ones factor
    through their strictly increasing support, with the degeneracy word
    applied in X.
    """
    tb = tuple(sorted(set(t)))
    base = element[len(tb) - 1][tgt_index[len(tb) - 1][tb]]
    if len(tb) == len(t):
        return base
    ranks = {v: r for r, v in enumerate(tb)}
    word = [ranks[v] for v in t]
    s_idx = []
    r = 0
    while r < len(word) - 1:
        if word[r] == word[r + 1]:
            s_idx.append(r)
            del word[r + 1]
        else:
            r += 1
    lvl = len(tb) - 1
    for r in reversed(s_idx):
        base = X.deg(lvl, r, base)
        lvl += 1
    return base


def _precompose(X, element, src_levels, tgt_levels, vertex_map, out_dim):
    """Row of images of src simplices under element∘(tuple map)."""
    tgt_index = [{t: i for i, t in enumerate(lv)} for lv in tgt_levels]
    rows = []
    for k in range(out_dim + 1):
        rows.append(tuple(
            _image_of_tuple(X, element, tgt_index, tuple(vertex_map[v] for v in t))
            for t in src_levels[k]
        ))
    return tuple(rows)


def cotensor_join(X: TruncatedSSet, S: Shape, D: int, budget=DEFAULT_BUDGET) -> Cotensor:
    """The simplicial object with level l = hom(S * Delta^l, X).

    Faces and degeneracies precompose with 1 * delta_i and 1 * sigma_i; X
    must store dim(S) + D + 1 levels.
    """
    a = S.ambient
    join_data = []
    homs = []
    for l in range(D + 1):
        sh = join_shapes(S, standard_simplex(l))
        mat, lv = materialize(sh, sh.dim)
        if X.dim < sh.dim and X.coskeletal_above is None:
            raise InputError("cotensor_join: insufficient truncation of the target")
        homs.append(hom_set(mat, X, budget))
        join_data.append((sh, lv))
    indexes = [h.index() for h in homs]
    sizes = [len(h) for h in homs]
    faces: list = [[]]
    for l in range(1, D + 1):
        sh_small, lv_small = join_data[l - 1]
        _, lv_big = join_data[l]
        rows = []
        for i in range(l + 1):
            vmap = list(range(a + 1)) + [a + 1 + (v if v < i else v + 1) for v in range(l)]
            row = []
            for el in homs[l].elements:
                row.append(indexes[l - 1][_precompose(X, el, lv_small, lv_big, vmap, sh_small.dim)])
            rows.append(row)
        faces.append(rows)
    degs = []
    for l in range(D):
        sh_big, lv_big = join_data[l + 1]
        _, lv_small = join_data[l]
        rows = []
        for i in range(l + 1):
            vmap = list(range(a + 1)) + [a + 1 + (v if v <= i else v - 1) for v in range(l + 2)]
            row = []
            for el in homs[l].elements:
                row.append(indexes[l + 1][_precompose(X, el, lv_big, lv_small, vmap, sh_big.dim)])
            rows.append(row)
        degs.append(rows)
    degs.append([])
    sset = make_sset(sizes, faces, degs)
    return Cotensor(X, S, sset, homs, join_data)


def cotensor_restriction(big: Cotensor, small: Cotensor) -> SimplicialMap:
    """Restriction X^{S*} -> X^{S'*} along a subshape S' of S."""
    if not small.shape.is_subshape_of(big.shape):
        raise InputError("cotensor_restriction: not a subshape")
    comps = []
    for l in range(min(big.sset.dim, small.sset.dim) + 1):
        _, lv_small = small.join_levels[l]
        _, lv_big = big.join_levels[l]
        idx = small.hom_levels[l].index()
        vmap = list(range(big.shape.ambient + 1 + l + 1))
        row = [idx[_precompose(big.X, el, lv_small, lv_big, vmap, small.join_levels[l][0].dim)]
               for el in big.hom_levels[l].elements]
        comps.append(tuple(row))
    return SimplicialMap(big.sset, small.sset, tuple(comps))


def cotensor_postcompose(ct: Cotensor, f: SimplicialMap, target_ct: Cotensor) -> SimplicialMap:
    """f_*: X^{S*} -> Y^{S*} for f: X -> Y."""
    comps = []
    for l in range(min(ct.sset.dim, target_ct.sset.dim) + 1):
        idx = target_ct.hom_levels[l].index()
        row = []
        for el in ct.hom_levels[l].elements:
            image = tuple(tuple(f.components[k][v] for v in el[k]) for k in range(len(el)))
            row.append(idx[image])
        comps.append(tuple(row))
    return SimplicialMap(ct.sset, target_ct.sset, tuple(comps))


def dec(X: TruncatedSSet, n: int, D: int) -> TruncatedSSet:
    """Illusie's Dec_n: level l is X_{n+l} with the first faces/degeneracies.

    Equals cotensor_join(X, Delta^{n-1}, D) up to canonical identification
    (tested); realized here by reindexing tables.
    """
    if n < 1:
        raise InputError("dec needs n >= 1")
    if X.dim < n + D:
        raise InputError("dec: not enough stored levels")
    sizes = [X.sizes[n + l] for l in range(D + 1)]
    faces: list = [[]]
    for l in range(1, D + 1):
        faces.append([list(X.faces[n + l][n + i]) for i in range(l + 1)])
    degs = []
    for l in range(D):
        degs.append([list(X.degeneracies[n + l][n + i]) for i in range(l + 1)])
    degs.append([])
    return make_sset(sizes, faces, degs)


# ---------------------------------------------------------------------------
# expansions and collapsibility

@dataclass(frozen=True)
class ExpansionStep:
    n: int
    i: int
    attach: tuple[int, ...]  # vertex tuple of the filled simplex in the ambient


@dataclass(frozen=True)
class ExpansionCertificate:
    ambient: int
    start: tuple[tuple[int, ...], ...]
    steps: tuple[ExpansionStep, ...]

    def to_json(self):
        return [{"n": s.n, "i": s.i, "attach": list(s.attach)} for s in self.steps]


def _nondeg_closure(shape: Shape) -> frozenset:
    out = set()
    for k in range(shape.dim + 1):
        out.update(shape.nondeg_simplices(k))
    return frozenset(out)


def replay_certificate(cert: ExpansionCertificate) -> frozenset:
    """Re-run the pushouts; each step must be a genuine horn attachment."""
    state = set(cert.start)
    for st in cert.steps:
        t = st.attach
        if len(t) - 1 != st.n:
            raise InputError("certificate step dimension mismatch")
        missing = t[: st.i] + t[st.i + 1:]
        if t in state or missing in state:
            raise InvariantViolation("certificate step attaches an existing simplex")
        for j in range(st.n + 1):
            if j != st.i and t[:j] + t[j + 1:] not in state:
                raise InvariantViolation("certificate step horn is not present")
        state.add(t)
        state.add(missing)
    return frozenset(state)


def find_expansion(S: Shape, T: Shape, budget=DEFAULT_BUDGET):
    """Search for an expansion S -> T as a chain of horn pushouts.

    Exact backtracking with memoized failed states; returns None if no
    expansion exists.
    """
    if not S.is_subshape_of(T):
        raise InputError("find_expansion: S must be a subshape of T")
    start = _nondeg_closure(S)
    goal = _nondeg_closure(T)
    if not start <= goal:
        raise InputError("find_expansion: S must be a subshape of T")
    dead: set[frozenset] = set()
    steps: list[ExpansionStep] = []

    def moves(state: frozenset):
        out = []
        for t in goal - state:
            n = len(t) - 1
            if n == 0:
                continue
            present = [t[:j] + t[j + 1:] in state for j in range(n + 1)]
            for i in range(n + 1):
                if not present[i] and all(present[j] for j in range(n + 1) if j != i):
                    out.append((n, i, t))
        out.sort()
        return out

    def dfs(state: frozenset) -> bool:
        if state == goal:
            return True
        if state in dead:
            return False
        for n, i, t in moves(state):
            missing = t[:i] + t[i + 1:]
            nxt = state | {t, missing}
            if not nxt <= goal:
                continue
            steps.append(ExpansionStep(n, i, t))
            if dfs(nxt):
                return True
            steps.pop()
        dead.add(state)
        check_budget("expansion search states", len(dead), budget)
        return False

    if dfs(start):
        cert = ExpansionCertificate(T.ambient, tuple(sorted(start)), tuple(steps))
        if replay_certificate(cert) != goal:
            raise InvariantViolation("expansion certificate does not replay to the target")
        return cert
    return None


def is_collapsible(S: Shape, budget=DEFAULT_BUDGET):
    """Certificate that some (hence any) vertex expands to S."""
    v = min(min(g) for g in S.generators)
    return find_expansion(Shape(S.ambient, ((v,),)), S, budget)
