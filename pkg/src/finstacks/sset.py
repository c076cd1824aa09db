"""Finite truncated simplicial sets and simplicial maps.

A simplicial set truncated at degree D is stored as tables: level k is the
index set {0..sizes[k]-1}, every face map d_i : level_k -> level_{k-1} and
degeneracy s_i : level_k -> level_{k+1} is a tuple of targets.  Degenerate
simplices are stored explicitly, so horn and matching constructions can be
table-driven.  All values are immutable after construction.

The ambient category is finite sets with surjections as covers; every limit
used here exists, so the constructions below are total apart from the
configured cardinality budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .errors import DEFAULT_BUDGET, InputError, check_budget


@dataclass(frozen=True)
class TruncatedSSet:
    """Levels 0..D of a simplicial set, with explicit face/degeneracy tables.

    faces[k][i] is the table of d_i on level k (defined for 1 <= k <= D,
    0 <= i <= k); degeneracies[k][i] is s_i on level k (0 <= k < D,
    0 <= i <= k).  ``coskeletal_above = d`` asserts that every level above D
    is determined by the d-truncation via coskeleton; validate() checks the
    stored part of that claim.
    """

    sizes: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    degeneracies: tuple[tuple[tuple[int, ...], ...], ...]
    coskeletal_above: int | None = None

    @property
    def dim(self) -> int:
        return len(self.sizes) - 1

    def size(self, k: int) -> int:
        return self.sizes[k]

    def level(self, k: int) -> range:
        return range(self.sizes[k])

    def face(self, k: int, i: int, x: int) -> int:
        return self.faces[k][i][x]

    def deg(self, k: int, i: int, x: int) -> int:
        return self.degeneracies[k][i][x]

    def boundary(self, k: int, x: int) -> tuple[int, ...]:
        fk = self.faces[k]
        return tuple(fk[i][x] for i in range(k + 1))

    def is_degenerate(self, k: int, x: int) -> bool:
        if k == 0:
            return False
        for i in range(k):
            row = self.degeneracies[k - 1][i]
            for y in range(self.sizes[k - 1]):
                if row[y] == x:
                    return True
        return False

    def nondegenerate(self, k: int) -> list[int]:
        if k == 0:
            return list(self.level(0))
        hit = [False] * self.sizes[k]
        for i in range(k):
            for y in self.degeneracies[k - 1][i]:
                hit[y] = True
        return [x for x in self.level(k) if not hit[x]]

    def dimension_of_content(self) -> int:
        """Largest level carrying a nondegenerate simplex."""
        for k in range(self.dim, 0, -1):
            if self.nondegenerate(k):
                return k
        return 0

    def with_flag(self, d: int | None) -> "TruncatedSSet":
        return replace(self, coskeletal_above=d)

    # Eilenberg-Zilber canonical form: every simplex is s_{w_0}...s_{w_m}(b)
    # for a unique nondegenerate b and strictly decreasing word w.
    def canonical_forms(self) -> list[dict[int, tuple[int, int, tuple[int, ...]]]]:
        canon: list[dict[int, tuple[int, int, tuple[int, ...]]]] = []
        for k in range(self.dim + 1):
            level_canon: dict[int, tuple[int, int, tuple[int, ...]]] = {}
            if k == 0:
                for x in self.level(0):
                    level_canon[x] = (0, x, ())
            else:
                witness: dict[int, tuple[int, int]] = {}
                for i in range(k):
                    row = self.degeneracies[k - 1][i]
                    for y in range(self.sizes[k - 1]):
                        witness.setdefault(row[y], (i, y))
                for x in self.level(k):
                    if x in witness:
                        i, y = witness[x]
                        m, b, w = canon[k - 1][y]
                        level_canon[x] = (m, b, nf_insert(i, w))
                    else:
                        level_canon[x] = (k, x, ())
            canon.append(level_canon)
        return canon


def nf_insert(i: int, word: tuple[int, ...]) -> tuple[int, ...]:
    """Normal form of s_i composed before the strictly decreasing word.

    Uses s_i s_j = s_{j+1} s_i for i <= j; the result is again strictly
    decreasing.
    """
    if not word or i > word[0]:
        return (i,) + word
    return (word[0] + 1,) + nf_insert(i, word[1:])


def make_sset(sizes, faces, degeneracies, coskeletal_above=None) -> TruncatedSSet:
    """Freeze list-based tables into a TruncatedSSet."""
    return TruncatedSSet(
        sizes=tuple(sizes),
        faces=tuple(tuple(tuple(row) for row in faces[k]) for k in range(len(sizes))),
        degeneracies=tuple(
            tuple(tuple(row) for row in degeneracies[k]) for k in range(len(sizes))
        ),
        coskeletal_above=coskeletal_above,
    )


def validate(x: TruncatedSSet) -> list[str]:
    """Exhaustively check table shapes and the simplicial identities.

    Returns a report of violated identity instances; empty means valid.
    """
    report: list[str] = []
    D = x.dim
    for k in range(D + 1):
        expect = k + 1 if k >= 1 else 0
        if len(x.faces[k]) != expect:
            report.append(f"level {k}: expected {expect} face maps, got {len(x.faces[k])}")
            return report
        expect = k + 1 if k < D else 0
        if len(x.degeneracies[k]) != expect:
            report.append(
                f"level {k}: expected {expect} degeneracy maps, got {len(x.degeneracies[k])}"
            )
            return report
    for k in range(1, D + 1):
        for i in range(k + 1):
            row = x.faces[k][i]
            if len(row) != x.sizes[k] or any(not (0 <= v < x.sizes[k - 1]) for v in row):
                report.append(f"face table d_{i} at level {k} out of range")
    for k in range(D):
        for i in range(k + 1):
            row = x.degeneracies[k][i]
            if len(row) != x.sizes[k] or any(not (0 <= v < x.sizes[k + 1]) for v in row):
                report.append(f"degeneracy table s_{i} at level {k} out of range")
    if report:
        return report

    # d_i d_j = d_{j-1} d_i for i < j
    for k in range(2, D + 1):
        for j in range(1, k + 1):
            for i in range(j):
                for z in x.level(k):
                    if x.face(k - 1, i, x.face(k, j, z)) != x.face(k - 1, j - 1, x.face(k, i, z)):
                        report.append(f"d_{i} d_{j} != d_{j-1} d_{i} at level {k}, simplex {z}")
    # s_i s_j = s_{j+1} s_i for i <= j
    for k in range(D - 1):
        for j in range(k + 1):
            for i in range(j + 1):
                for z in x.level(k):
                    if x.deg(k + 1, i, x.deg(k, j, z)) != x.deg(k + 1, j + 1, x.deg(k, i, z)):
                        report.append(f"s_{i} s_{j} != s_{j+1} s_{i} at level {k}, simplex {z}")
    # mixed identities d_i s_j
    for k in range(D):
        for j in range(k + 1):
            for i in range(k + 2):
                for z in x.level(k):
                    got = x.face(k + 1, i, x.deg(k, j, z))
                    if i < j:
                        want = x.deg(k - 1, j - 1, x.face(k, i, z))
                    elif i in (j, j + 1):
                        want = z
                    else:
                        want = x.deg(k - 1, j, x.face(k, i - 1, z))
                    if got != want:
                        report.append(f"d_{i} s_{j} identity fails at level {k}, simplex {z}")
    if x.coskeletal_above is not None:
        d = x.coskeletal_above
        if not (0 <= d <= D):
            report.append(f"coskeletal_above {d} out of range")
        else:
            for k in range(d + 1, D + 1):
                tuples = compatible_boundary_tuples(x, k)
                seen = {}
                for z in x.level(k):
                    b = x.boundary(k, z)
                    if b in seen:
                        report.append(f"coskeletal flag {d}: level {k} boundary not injective")
                        break
                    seen[b] = z
                else:
                    if set(seen) != set(tuples):
                        report.append(
                            f"coskeletal flag {d}: level {k} has {len(seen)} simplices "
                            f"but {len(tuples)} compatible boundary tuples"
                        )
    return report


def compatible_boundary_tuples(x: TruncatedSSet, k: int, budget=DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All (t_0..t_k) in level_{k-1}^{k+1} with d_j t_m = d_{m-1} t_j for j < m."""
    n = x.sizes[k - 1]
    if k == 1:
        return [(a, b) for a in range(n) for b in range(n)]
    # index by the faces pinned by earlier components
    prefix_index: list[dict] = []
    for m in range(k + 1):
        idx: dict = {}
        fk = x.faces[k - 1]
        for z in range(n):
            key = tuple(fk[j][z] for j in range(m))
            idx.setdefault(key, []).append(z)
        prefix_index.append(idx)

    out: list[tuple[int, ...]] = []
    fk = x.faces[k - 1]

    def extend(chosen: list[int]) -> None:
        m = len(chosen)
        if m == k + 1:
            out.append(tuple(chosen))
            check_budget(f"coskeleton level {k}", len(out), budget)
            return
        key = tuple(fk[m - 1][chosen[j]] for j in range(m))
        for z in prefix_index[m].get(key, ()):
            chosen.append(z)
            extend(chosen)
            chosen.pop()

    for z in range(n):
        extend([z])
    return out


def evaluate_at(X: TruncatedSSet, level: int, x: int, t: tuple[int, ...]) -> int:
    """Apply the simplicial operator with vertex word t to x.

    t is a nondecreasing tuple with entries in [level]; the result is the
    len(t)-1 simplex X(theta)(x) for the order map theta sending r to t[r].
    Missing vertices become face maps (deleted in descending order), repeats
    become degeneracies.
    """
    support = set(t)
    cur, lvl = x, level
    for v in range(level, -1, -1):
        if v not in support:
            cur = X.face(lvl, v, cur)
            lvl -= 1
    ranks = {v: r for r, v in enumerate(sorted(support))}
    word = [ranks[v] for v in t]
    # peel theta = s-word from surjective nondecreasing word: deleting the
    # first duplicate at position r factors off sigma_r
    s_indices = []
    r = 0
    while r < len(word) - 1:
        if word[r] == word[r + 1]:
            s_indices.append(r)
            del word[r + 1]
        else:
            r += 1
    for r in reversed(s_indices):
        cur = X.deg(lvl, r, cur)
        lvl += 1
    return cur


# ---------------------------------------------------------------------------
# basic constructors

def constant(n_points: int, D: int) -> TruncatedSSet:
    # a one-point object is 0-coskeletal; a bigger constant object is only
    # 1-coskeletal (csk_0 would be the codiscrete object on its points)
    ident = tuple(range(n_points))
    faces = [()] + [tuple(ident for _ in range(k + 1)) for k in range(1, D + 1)]
    degs = [tuple(ident for _ in range(k + 1)) for k in range(D)] + [()]
    if n_points == 1:
        flag = 0
    else:
        flag = 1 if D >= 1 else None
    return TruncatedSSet(tuple([n_points] * (D + 1)), tuple(faces), tuple(degs), flag)


def terminal(D: int) -> TruncatedSSet:
    return constant(1, D)


def truncate(x: TruncatedSSet, n: int) -> TruncatedSSet:
    if n > x.dim:
        raise InputError(f"cannot truncate at {n}: only {x.dim} levels stored")
    if n == x.dim:
        return x
    return TruncatedSSet(
        x.sizes[: n + 1],
        x.faces[: n + 1],
        tuple(x.degeneracies[k] if k < n else () for k in range(n + 1)),
        x.coskeletal_above if (x.coskeletal_above is not None and x.coskeletal_above <= n) else None,
    )


@dataclass(frozen=True)
class SimplicialMap:
    """Levelwise function commuting with all stored faces and degeneracies."""

    source: TruncatedSSet
    target: TruncatedSSet
    components: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.components) - 1

    def __call__(self, k: int, x: int) -> int:
        return self.components[k][x]

    def is_levelwise_bijective(self) -> bool:
        return all(
            len(set(c)) == len(c) == self.target.sizes[k]
            for k, c in enumerate(self.components)
        )


def make_map(source, target, components) -> SimplicialMap:
    return SimplicialMap(source, target, tuple(tuple(c) for c in components))


def identity_map(x: TruncatedSSet) -> SimplicialMap:
    return SimplicialMap(x, x, tuple(tuple(range(n)) for n in x.sizes))


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f."""
    if f.target.sizes != g.source.sizes:
        raise InputError("compose: shape mismatch")
    d = min(f.dim, g.dim)
    comps = tuple(tuple(g.components[k][v] for v in f.components[k]) for k in range(d + 1))
    return SimplicialMap(f.source, g.target, comps)


def validate_map(f: SimplicialMap) -> list[str]:
    report = []
    X, Y = f.source, f.target
    if f.dim != X.dim:
        report.append(f"map has {f.dim + 1} components for source of dimension {X.dim}")
        return report
    if Y.dim < X.dim:
        report.append("target truncated below source")
        return report
    for k in range(X.dim + 1):
        comp = f.components[k]
        if len(comp) != X.sizes[k] or any(not (0 <= v < Y.sizes[k]) for v in comp):
            report.append(f"component at level {k} out of range")
            return report
    for k in range(1, X.dim + 1):
        for i in range(k + 1):
            for x in X.level(k):
                if f.components[k - 1][X.face(k, i, x)] != Y.face(k, i, f.components[k][x]):
                    report.append(f"does not commute with d_{i} at level {k}, simplex {x}")
    for k in range(X.dim):
        for i in range(k + 1):
            for x in X.level(k):
                if f.components[k + 1][X.deg(k, i, x)] != Y.deg(k, i, f.components[k][x]):
                    report.append(f"does not commute with s_{i} at level {k}, simplex {x}")
    return report


def to_terminal(x: TruncatedSSet) -> SimplicialMap:
    pt = terminal(x.dim)
    return SimplicialMap(x, pt, tuple(tuple([0] * n) for n in x.sizes))


def constant_map_from(x: TruncatedSSet, n_points: int, values: tuple[int, ...], base_dim=None) -> SimplicialMap:
    """Augmentation of x by a finite set: values gives the image of level 0.

    The constant target is truncated at x.dim; values must coequalize the
    two vertex maps of every edge.
    """
    tgt = constant(n_points, x.dim if base_dim is None else base_dim)
    comps = [tuple(values)]
    for k in range(1, x.dim + 1):
        prev = comps[-1]
        comps.append(tuple(prev[x.face(k, 0, z)] for z in x.level(k)))
    f = SimplicialMap(x, tgt, tuple(comps))
    if x.dim >= 1:
        for e in x.level(1):
            if values[x.face(1, 0, e)] != values[x.face(1, 1, e)]:
                raise InputError("augmentation does not coequalize d_0, d_1")
    return f


# ---------------------------------------------------------------------------
# products and pullbacks

def product(x: TruncatedSSet, y: TruncatedSSet):
    """Levelwise product with componentwise structure maps.

    Returns (P, pr_x, pr_y); element id at level k is a*y.sizes[k] + b.
    """
    if x.dim != y.dim:
        raise InputError("product: mismatched truncation degrees")
    D = x.dim
    sizes = [x.sizes[k] * y.sizes[k] for k in range(D + 1)]
    faces = [()]
    for k in range(1, D + 1):
        ny, nym = y.sizes[k], y.sizes[k - 1]
        rows = []
        for i in range(k + 1):
            fx, fy = x.faces[k][i], y.faces[k][i]
            rows.append(tuple(fx[z // ny] * nym + fy[z % ny] for z in range(sizes[k])))
        faces.append(tuple(rows))
    degs = []
    for k in range(D):
        ny, nyp = y.sizes[k], y.sizes[k + 1]
        rows = []
        for i in range(k + 1):
            sx, sy = x.degeneracies[k][i], y.degeneracies[k][i]
            rows.append(tuple(sx[z // ny] * nyp + sy[z % ny] for z in range(sizes[k])))
        degs.append(tuple(rows))
    degs.append(())
    flag = None
    if x.coskeletal_above is not None and y.coskeletal_above is not None:
        flag = max(x.coskeletal_above, y.coskeletal_above)
    P = TruncatedSSet(tuple(sizes), tuple(faces), tuple(degs), flag)
    pr_x = SimplicialMap(P, x, tuple(tuple(z // y.sizes[k] for z in range(sizes[k])) for k in range(D + 1)))
    pr_y = SimplicialMap(P, y, tuple(tuple(z % y.sizes[k] for z in range(sizes[k])) for k in range(D + 1)))
    return P, pr_x, pr_y


def pullback(f: SimplicialMap, g: SimplicialMap):
    """Fibered product of f: X -> Z and g: Y -> Z, with projections."""
    X, Y = f.source, g.source
    if f.target.sizes != g.target.sizes:
        raise InputError("pullback: targets differ")
    if X.dim != Y.dim:
        raise InputError("pullback: mismatched truncation degrees")
    D = X.dim
    pairs = []
    index = []
    for k in range(D + 1):
        lv = [(a, b) for a in X.level(k) for b in Y.level(k) if f.components[k][a] == g.components[k][b]]
        pairs.append(lv)
        index.append({p: i for i, p in enumerate(lv)})
    sizes = [len(lv) for lv in pairs]
    faces = [()]
    for k in range(1, D + 1):
        rows = []
        for i in range(k + 1):
            rows.append(tuple(index[k - 1][(X.face(k, i, a), Y.face(k, i, b))] for a, b in pairs[k]))
        faces.append(tuple(rows))
    degs = []
    for k in range(D):
        rows = []
        for i in range(k + 1):
            rows.append(tuple(index[k + 1][(X.deg(k, i, a), Y.deg(k, i, b))] for a, b in pairs[k]))
        degs.append(tuple(rows))
    degs.append(())
    flag = None
    flags = [X.coskeletal_above, Y.coskeletal_above, f.target.coskeletal_above]
    if all(v is not None for v in flags):
        flag = max(flags)
    P = TruncatedSSet(tuple(sizes), tuple(faces), tuple(degs), flag)
    pr_x = SimplicialMap(P, X, tuple(tuple(a for a, _ in pairs[k]) for k in range(D + 1)))
    pr_y = SimplicialMap(P, Y, tuple(tuple(b for _, b in pairs[k]) for k in range(D + 1)))
    return P, pr_x, pr_y


# ---------------------------------------------------------------------------
# pi0 via union-find

class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Pi0:
    """Coequalizer of d_0, d_1 : level_1 => level_0 in finite sets."""

    count: int
    quotient: tuple[int, ...]  # level_0 -> class id (surjective)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for x, c in enumerate(self.quotient):
            out[c].append(x)
        return out


def pi0(x: TruncatedSSet) -> Pi0:
    if x.dim < 1:
        raise InputError("pi0 needs truncation degree >= 1")
    uf = UnionFind(x.sizes[0])
    for e in x.level(1):
        uf.union(x.face(1, 0, e), x.face(1, 1, e))
    roots: dict[int, int] = {}
    quot = []
    for v in x.level(0):
        r = uf.find(v)
        if r not in roots:
            roots[r] = len(roots)
        quot.append(roots[r])
    return Pi0(len(roots), tuple(quot))


# ---------------------------------------------------------------------------
# coskeleton

def coskeleton(x: TruncatedSSet, n: int, D: int, budget=DEFAULT_BUDGET):
    """n-coskeleton realized up to degree D, with the unit map x -> csk.

    Levels above n are the sets of compatible boundary tuples; the unit sends
    a stored simplex to its iterated boundary encoding.  Output carries
    coskeletal_above = n.
    """
    if x.dim < n:
        raise InputError(f"coskeleton: need {n} stored levels, have {x.dim}")
    if D < n:
        raise InputError("coskeleton: D must be at least n")
    base = truncate(x, n)
    sizes = list(base.sizes)
    faces = [list(map(list, base.faces[k])) for k in range(n + 1)]
    degs = [list(map(list, base.degeneracies[k])) for k in range(n)] + [[] for _ in range(D - n + 1)]
    # unit components: identity on levels <= n, appended per coskeletal level
    unit = [list(range(x.sizes[k])) for k in range(n + 1)]

    cur = base
    for k in range(n + 1, D + 1):
        tuples = compatible_boundary_tuples(cur, k, budget)
        index = {t: i for i, t in enumerate(tuples)}
        sizes.append(len(tuples))
        faces.append([[t[i] for t in tuples] for i in range(k + 1)])
        # degeneracies into the new level via the mixed identities
        for i in range(k):
            row = []
            for z in range(sizes[k - 1]):
                t = []
                for j in range(k + 1):
                    if j < i:
                        t.append(cur.deg(k - 2, i - 1, cur.face(k - 1, j, z)) if k >= 2 else z)
                    elif j in (i, i + 1):
                        t.append(z)
                    else:
                        t.append(cur.deg(k - 2, i, cur.face(k - 1, j - 1, z)) if k >= 2 else z)
                row.append(index[tuple(t)])
            degs[k - 1].append(row)
        if k <= x.dim:
            unit.append([index[tuple(unit[k - 1][v] for v in x.boundary(k, z))] for z in x.level(k)])
        cur = make_sset(sizes, faces, degs[: k] + [[]], n)
    csk = make_sset(sizes, faces, degs, n)
    unit_map = SimplicialMap(truncate(x, min(x.dim, D)), csk, tuple(tuple(u) for u in unit))
    return csk, unit_map


# ---------------------------------------------------------------------------
# degeneracy extension (fill levels above the stored dimension)

def extend_degeneracies(x: TruncatedSSet, D: int, budget=DEFAULT_BUDGET) -> TruncatedSSet:
    """Extend x to degree D; new levels consist of the formal degeneracies.

    Correct when every simplex above x.dim is degenerate, i.e. when x stores
    all levels up to the dimension of its content (always true for literals
    and for any fully stored finite simplicial set).  New simplices are keyed
    by Eilenberg-Zilber normal form (level, nondegenerate base, word).
    """
    if D <= x.dim:
        return truncate(x, D)
    canon = x.canonical_forms()
    level_keys: list[list] = [[canon[k][z] for z in x.level(k)] for k in range(x.dim + 1)]
    level_index: list[dict] = [{canon[k][z]: z for z in x.level(k)} for k in range(x.dim + 1)]
    for k in range(x.dim + 1, D + 1):
        new = set()
        for m, b, w in level_keys[k - 1]:
            for i in range(k):
                new.add((m, b, nf_insert(i, w)))
        ordered = sorted(new)
        check_budget(f"degeneracy extension level {k}", len(ordered), budget)
        level_keys.append(ordered)
        level_index.append({key: i for i, key in enumerate(ordered)})

    def face_of_key(key, j):
        m, b, w = key
        if not w:
            return canon[m - 1][x.face(m, j, b)]
        i = w[0]
        rest = (m, b, w[1:])
        if j < i:
            sub = face_of_key(rest, j)
            return (sub[0], sub[1], nf_insert(i - 1, sub[2]))
        if j in (i, i + 1):
            return rest
        sub = face_of_key(rest, j - 1)
        return (sub[0], sub[1], nf_insert(i, sub[2]))

    sizes = [len(level_keys[k]) for k in range(D + 1)]
    faces = [list(map(list, x.faces[k])) for k in range(x.dim + 1)]
    for k in range(x.dim + 1, D + 1):
        faces.append([
            [level_index[k - 1][face_of_key(key, j)] for key in level_keys[k]]
            for j in range(k + 1)
        ])
    degs = [list(map(list, x.degeneracies[k])) for k in range(x.dim)]
    for k in range(x.dim, D):
        degs.append([
            [level_index[k + 1][(m, b, nf_insert(i, w))] for m, b, w in level_keys[k]]
            for i in range(k + 1)
        ])
    degs.append([])
    return make_sset(sizes, faces, degs, x.coskeletal_above)


# ---------------------------------------------------------------------------
# Cech nerves

def cech_nerve(cover: tuple[int, ...], n_base: int, D: int):
    """Nerve of the cover {0..len(cover)-1} -> {0..n_base-1} with augmentation.

    Level k is the set of (k+1)-tuples with equal image; a 1-hypercover over
    the constant base.  Returns (nerve, augmentation map).
    """
    n = len(cover)
    if n_base < 1 or set(cover) != set(range(n_base)):
        raise InputError("cech_nerve: cover must be a surjection onto 0..n_base-1")
    levels = [[(a,) for a in range(n)]]
    for k in range(1, D + 1):
        levels.append([t + (a,) for t in levels[k - 1] for a in range(n) if cover[a] == cover[t[0]]])
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]
    faces = [[]]
    for k in range(1, D + 1):
        faces.append([[index[k - 1][t[:i] + t[i + 1:]] for t in levels[k]] for i in range(k + 1)])
    degs = []
    for k in range(D):
        degs.append([[index[k + 1][t[: i + 1] + t[i:]] for t in levels[k]] for i in range(k + 1)])
    degs.append([])
    X = make_sset(sizes, faces, degs, 1)
    aug = constant_map_from(X, n_base, tuple(cover[t[0]] for t in levels[0]))
    return X, aug


def disjoint_union(x: TruncatedSSet, y: TruncatedSSet) -> TruncatedSSet:
    if x.dim != y.dim:
        raise InputError("disjoint_union: mismatched truncation degrees")
    D = x.dim
    sizes = [x.sizes[k] + y.sizes[k] for k in range(D + 1)]
    faces = [()]
    for k in range(1, D + 1):
        faces.append(tuple(
            tuple(list(x.faces[k][i]) + [v + x.sizes[k - 1] for v in y.faces[k][i]])
            for i in range(k + 1)
        ))
    degs = []
    for k in range(D):
        degs.append(tuple(
            tuple(list(x.degeneracies[k][i]) + [v + x.sizes[k + 1] for v in y.degeneracies[k][i]])
            for i in range(k + 1)
        ))
    degs.append(())
    flag = None
    if x.coskeletal_above is not None and y.coskeletal_above is not None:
        flag = max(x.coskeletal_above, y.coskeletal_above, 1)
    return TruncatedSSet(tuple(sizes), tuple(faces), tuple(degs), flag)
