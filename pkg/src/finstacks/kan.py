"""Hom-sets, horn and matching objects, and the groupoid/stack/hypercover
classifiers.

hom(S, X) is enumerated by backtracking over the nondegenerate simplices of S
in an availability-driven order (a simplex becomes available once the
nondegenerate bases of its faces are assigned); images of degenerate
simplices are forced through their Eilenberg-Zilber normal form.  Horn and
matching objects are enumerated directly as compatible tuples of faces, which
gives an independent construction that the hom-based route is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DEFAULT_BUDGET, InputError, InvariantViolation, check_budget
from .sset import (
    SimplicialMap,
    TruncatedSSet,
    coskeleton,
    make_sset,
    terminal,
    to_terminal,
)

INF = math.inf


def boundary_index(X: TruncatedSSet, k: int) -> dict:
    idx: dict = {}
    for z in X.level(k):
        idx.setdefault(X.boundary(k, z), []).append(z)
    return idx


def apply_degeneracy_word(X: TruncatedSSet, level: int, z: int, word) -> int:
    for i in reversed(word):
        z = X.deg(level, i, z)
        level += 1
    return z


@dataclass
class HomSet:
    """All simplicial maps S -> X, as full component rows per level."""

    shape: TruncatedSSet
    target: TruncatedSSet
    elements: list[tuple[tuple[int, ...], ...]]

    def __len__(self):
        return len(self.elements)

    def as_map(self, i: int) -> SimplicialMap:
        return SimplicialMap(self.shape, self.target, self.elements[i])

    def index(self) -> dict:
        return {el: i for i, el in enumerate(self.elements)}


def hom_set(S: TruncatedSSet, X: TruncatedSSet, budget=DEFAULT_BUDGET) -> HomSet:
    d = S.dimension_of_content()
    if X.dim < d:
        if X.coskeletal_above is not None:
            X, _ = coskeleton(X, X.coskeletal_above, d, budget)
        else:
            raise InputError(f"hom: shape has {d}-simplices but target stores only {X.dim} levels")
    out_dim = min(S.dim, X.dim)

    canon = S.canonical_forms()
    nondeg = [S.nondegenerate(k) for k in range(d + 1)]
    bindex = {k: boundary_index(X, k) for k in range(1, d + 1)}

    # static assignment order: all face bases assigned first, highest dimension preferred
    assigned: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []
    pending = {(k, s) for k in range(d + 1) for s in nondeg[k]}
    needs: dict[tuple[int, int], set] = {}
    for k in range(1, d + 1):
        for s in nondeg[k]:
            needs[(k, s)] = {canon[k - 1][S.face(k, j, s)][:2] for j in range(k + 1)}
    while pending:
        avail = [p for p in pending if p[0] == 0 or needs[p].issubset(assigned)]
        best = max(avail, key=lambda p: (p[0], -p[1]))
        order.append(best)
        pending.remove(best)
        assigned.add(best)

    images: dict[tuple[int, int], int] = {}
    results: list = []

    def image_of(k: int, z: int) -> int:
        m, b, w = canon[k][z]
        return apply_degeneracy_word(X, m, images[(m, b)], w)

    def dfs(pos: int) -> None:
        if pos == len(order):
            rows = []
            for k in range(out_dim + 1):
                rows.append(tuple(image_of(k, z) for z in S.level(k)))
            results.append(tuple(rows))
            check_budget("hom enumeration", len(results), budget)
            return
        k, s = order[pos]
        if k == 0:
            candidates = X.level(0)
        else:
            key = tuple(image_of(k - 1, S.face(k, j, s)) for j in range(k + 1))
            candidates = bindex[k].get(key, ())
        for z in candidates:
            images[(k, s)] = z
            dfs(pos + 1)
        images.pop((k, s), None)

    dfs(0)
    results.sort()
    return HomSet(S, X, results)


# ---------------------------------------------------------------------------
# horn and matching objects as compatible-tuple carriers

@dataclass
class Carrier:
    """hom(shape, X) x_{hom(shape, Y)} Y_k for shape a horn or boundary.

    Elements are ((x_j)_{j in positions}, y) with d_j x_m = d_{m-1} x_j for
    j < m in positions and f(x_j) = d_j y.  ``comparison`` is the induced map
    from X_k (lambda^k_i, lambda^k_J or mu_k according to positions).
    """

    f: SimplicialMap
    k: int
    positions: tuple[int, ...]
    elements: list
    index: dict
    comparison: tuple[int, ...] | None  # None when X_k is not stored

    def __len__(self):
        return len(self.elements)

    def is_surjective(self) -> bool:
        return len(set(self.comparison)) == len(self.elements)

    def is_injective(self) -> bool:
        return len(set(self.comparison)) == len(self.comparison)

    def missing_element(self):
        hit = set(self.comparison)
        for i in range(len(self.elements)):
            if i not in hit:
                return self.elements[i]
        return None

    def collision(self):
        seen: dict[int, int] = {}
        for x, c in enumerate(self.comparison):
            if c in seen:
                return seen[c], x
            seen[c] = x
        return None


def relative_carrier(f: SimplicialMap, k: int, positions, budget=DEFAULT_BUDGET) -> Carrier:
    X, Y = f.source, f.target
    positions = tuple(sorted(positions))
    if k == 0:
        if positions:
            raise InputError("level-0 carrier has no face positions")
        elements = [((), y) for y in Y.level(0)]
        index = {el: i for i, el in enumerate(elements)}
        comparison = tuple(index[((), f.components[0][x])] for x in X.level(0))
        return Carrier(f, 0, (), elements, index, comparison)
    if X.dim < k - 1 or Y.dim < k or f.dim < k - 1:
        raise InputError(f"carrier at level {k} needs more stored levels")
    with_comparison = X.dim >= k and f.dim >= k

    fvals = f.components[k - 1]
    fX = X.faces[k - 1]
    # step indexes: candidates for position j constrained by f-image and by
    # faces at all earlier positions (vacuous when k = 1: vertices are faceless)
    step_index = []
    for t in range(len(positions)):
        idx: dict = {}
        earlier = positions[:t] if k >= 2 else ()
        for z in X.level(k - 1):
            key = (fvals[z], tuple(fX[j][z] for j in earlier))
            idx.setdefault(key, []).append(z)
        step_index.append(idx)

    elements = []
    fYk = Y.faces[k]

    def extend(y, chosen):
        t = len(chosen)
        if t == len(positions):
            elements.append((tuple(chosen), y))
            check_budget(f"carrier at level {k}", len(elements), budget)
            return
        j = positions[t]
        if k >= 2:
            key = (fYk[j][y], tuple(X.face(k - 1, j - 1, chosen[tp]) for tp in range(t)))
        else:
            key = (fYk[j][y], ())
        for z in step_index[t].get(key, ()):
            chosen.append(z)
            extend(y, chosen)
            chosen.pop()

    for y in Y.level(k):
        extend(y, [])
    elements.sort()
    index = {el: i for i, el in enumerate(elements)}
    comparison = None
    if with_comparison:
        comparison = tuple(
            index[(tuple(X.face(k, j, x) for j in positions), f.components[k][x])]
            for x in X.level(k)
        )
    return Carrier(f, k, positions, elements, index, comparison)


def match_object(f: SimplicialMap, k: int, budget=DEFAULT_BUDGET) -> Carrier:
    # hom(boundary of Delta^0, X) is a point, so M_0(f) = Y_0
    return relative_carrier(f, k, tuple(range(k + 1)) if k >= 1 else (), budget)


def horn_object(f: SimplicialMap, k: int, i: int, budget=DEFAULT_BUDGET) -> Carrier:
    if not (0 <= i <= k):
        raise InputError(f"horn index {i} out of range for k={k}")
    return relative_carrier(f, k, tuple(j for j in range(k + 1) if j != i), budget)


def generalized_horn_object(f: SimplicialMap, k: int, J, budget=DEFAULT_BUDGET) -> Carrier:
    J = tuple(sorted(set(J)))
    if not J or len(J) > k:
        raise InputError("J must be a proper nonempty subset of [k]")
    return relative_carrier(f, k, J, budget)


def absolute_horn_object(X: TruncatedSSet, k: int, i: int, budget=DEFAULT_BUDGET) -> Carrier:
    return horn_object(to_terminal(X), k, i, budget)


def absolute_match_object(X: TruncatedSSet, k: int, budget=DEFAULT_BUDGET) -> Carrier:
    return match_object(to_terminal(X), k, budget)


# ---------------------------------------------------------------------------
# classifiers

@dataclass(frozen=True)
class Witness:
    k: int
    i: int | None
    reason: str
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    status: str  # "pass" | "fail" | "inconclusive"
    kind: str
    n: float
    checked_upto: int
    witness: Witness | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    @property
    def ok_at_stored(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        out = {
            "verdict": self.status,
            "kind": self.kind,
            "n": "inf" if self.n == INF else int(self.n),
            "checked_upto": self.checked_upto,
        }
        if self.witness is not None:
            out["witness"] = {
                "k": self.witness.k,
                "i": self.witness.i,
                "reason": self.witness.reason,
                "detail": self.witness.detail,
            }
        if self.note:
            out["note"] = self.note
        return out


def _definitive_above(f: SimplicialMap, D_avail: int, horn_based: bool) -> bool:
    a = f.source.coskeletal_above
    b = f.target.coskeletal_above
    if a is None or b is None:
        return False
    m = max(a, b)
    return D_avail >= (m + 1 if horn_based else m)


def classify(f: SimplicialMap, n, kind: str, budget=DEFAULT_BUDGET) -> Verdict:
    """Classify a map as an n-groupoid / n-stack / n-hypercover.

    The comparison maps are checked exhaustively on every stored level; the
    verdict is definitive when coskeletal flags determine all higher levels,
    otherwise a clean pass is reported as "inconclusive".
    """
    if kind not in ("groupoid", "stack", "hypercover"):
        raise InputError(f"unknown kind {kind}")
    if kind == "groupoid" and any(s != 1 for s in f.target.sizes):
        raise InputError("groupoid classification expects the terminal target")
    D = min(f.source.dim, f.target.dim)
    if D < 1:
        raise InputError("classification needs at least one positive level")

    horn_based = kind in ("groupoid", "stack")
    ks = range(1, D + 1) if horn_based else range(0, D + 1)
    for k in ks:
        indices = list(range(k + 1)) if horn_based else [None]
        for i in indices:
            car = horn_object(f, k, i, budget) if horn_based else match_object(f, k, budget)
            iso_required = (k > n) if horn_based else (k >= n)
            if not car.is_surjective():
                return Verdict("fail", kind, n, D,
                               Witness(k, i, "not_surjective", f"unfilled element {car.missing_element()}"))
            if iso_required and not car.is_injective():
                pair = car.collision()
                return Verdict("fail", kind, n, D,
                               Witness(k, i, "not_injective", f"simplices {pair} share image"))
    if _definitive_above(f, D, horn_based):
        return Verdict("pass", kind, n, D)
    return Verdict("inconclusive", kind, n, D,
                   note="all stored levels pass; no coskeletal flags to settle higher levels")


def mu_lambda_factorization_holds(f: SimplicialMap, k: int, i: int, budget=DEFAULT_BUDGET) -> bool:
    """lambda^k_i(f) equals (drop face i) composed with mu_k(f), elementwise."""
    mu = match_object(f, k, budget)
    lam = horn_object(f, k, i, budget)
    for x in f.source.level(k):
        faces, y = mu.elements[mu.comparison[x]]
        dropped = (tuple(faces[j] for j in range(k + 1) if j != i), y)
        if lam.index[dropped] != lam.comparison[x]:
            return False
    return True


def compose_check(g: SimplicialMap, f: SimplicialMap, n, kind: str, budget=DEFAULT_BUDGET):
    """Classify f, g and their composite; raise if the stability theorem fails.

    For n-hypercovers (resp. n-stacks) the composite must classify at least
    as well as the inputs on stored levels.
    """
    from .sset import compose as _compose

    h = _compose(g, f)
    vf = classify(f, n, kind, budget)
    vg = classify(g, n, kind, budget)
    vh = classify(h, n, kind, budget)
    if vf.ok_at_stored and vg.ok_at_stored and not vh.ok_at_stored:
        raise InvariantViolation(f"composite of two {kind}s failed to classify: {vh}")
    return h, vh


def pullback_check(f: SimplicialMap, g: SimplicialMap, n, kind: str, budget=DEFAULT_BUDGET):
    """Pull an n-hypercover/stack f back along g and re-classify the projection."""
    from .sset import pullback as _pullback

    P, pr_x, pr_y = _pullback(f, g)
    vf = classify(f, n, kind, budget)
    vp = classify(pr_y, n, kind, budget)
    if vf.ok_at_stored and not vp.ok_at_stored:
        raise InvariantViolation(f"pullback of an {kind} failed to classify: {vp}")
    return pr_y, vp


# ---------------------------------------------------------------------------
# Grothendieck: nerves of finite groupoids and the inverse extraction

@dataclass(frozen=True)
class FinGroupoid:
    """Finite groupoid: composition comp[g][h] means "g then h"."""

    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    comp: dict
    unit: tuple[int, ...]
    inv: tuple[int, ...]

    @property
    def n_morphisms(self) -> int:
        return len(self.src)


def validate_groupoid(g: FinGroupoid) -> list[str]:
    report = []
    n, m = g.n_objects, g.n_morphisms
    if len(g.unit) != n or len(g.inv) != m or len(g.tgt) != m:
        return ["table sizes inconsistent"]
    for o in range(n):
        e = g.unit[o]
        if g.src[e] != o or g.tgt[e] != o:
            report.append(f"unit of object {o} has wrong endpoints")
    for a in range(m):
        for b in range(m):
            if g.tgt[a] == g.src[b]:
                c = g.comp.get((a, b))
                if c is None or g.src[c] != g.src[a] or g.tgt[c] != g.tgt[b]:
                    report.append(f"composition ({a},{b}) missing or ill-typed")
            elif (a, b) in g.comp:
                report.append(f"composition defined on non-composable ({a},{b})")
    for a in range(m):
        if g.comp.get((g.unit[g.src[a]], a)) != a or g.comp.get((a, g.unit[g.tgt[a]])) != a:
            report.append(f"unit laws fail at {a}")
        if g.comp.get((a, g.inv[a])) != g.unit[g.src[a]] or g.comp.get((g.inv[a], a)) != g.unit[g.tgt[a]]:
            report.append(f"inverse laws fail at {a}")
    for a in range(m):
        for b in range(m):
            if g.tgt[a] != g.src[b]:
                continue
            for c in range(m):
                if g.tgt[b] != g.src[c]:
                    continue
                if g.comp[(g.comp[(a, b)], c)] != g.comp[(a, g.comp[(b, c)])]:
                    report.append(f"associativity fails at ({a},{b},{c})")
    return report


def nerve(g: FinGroupoid, D: int) -> TruncatedSSet:
    """Nerve: level k is the set of composable k-paths; 2-coskeletal."""
    # level 0 stores objects as 1-tuples, level k>0 stores morphism paths
    paths: list[list[tuple[int, ...]]] = [[(o,) for o in range(g.n_objects)]]
    for k in range(1, D + 1):
        if k == 1:
            paths.append([(a,) for a in range(g.n_morphisms)])
        else:
            paths.append([p + (b,) for p in paths[k - 1] for b in range(g.n_morphisms) if g.tgt[p[-1]] == g.src[b]])
    index = [{p: i for i, p in enumerate(paths[k])} for k in range(D + 1)]
    sizes = [len(paths[k]) for k in range(D + 1)]
    faces: list = [[]]
    for k in range(1, D + 1):
        rows = []
        for i in range(k + 1):
            row = []
            for p in paths[k]:
                if k == 1:
                    row.append(index[0][((g.tgt if i == 0 else g.src)[p[0]],)])
                elif i == 0:
                    row.append(index[k - 1][p[1:]])
                elif i == k:
                    row.append(index[k - 1][p[:-1]])
                else:
                    row.append(index[k - 1][p[: i - 1] + (g.comp[(p[i - 1], p[i])],) + p[i + 1:]])
            rows.append(row)
        faces.append(rows)
    degs = []
    for k in range(D):
        rows = []
        for i in range(k + 1):
            row = []
            for p in paths[k]:
                if k == 0:
                    row.append(index[1][(g.unit[p[0]],)])
                else:
                    obj = g.src[p[i]] if i < k else g.tgt[p[-1]]
                    row.append(index[k + 1][p[:i] + (g.unit[obj],) + p[i:]])
            rows.append(row)
        degs.append(rows)
    degs.append([])
    return make_sset(sizes, faces, degs, 2 if D >= 2 else None)


def groupoid_from_nerve(X: TruncatedSSet, budget=DEFAULT_BUDGET) -> FinGroupoid:
    """Extract objects, morphisms and composition from a qualifying nerve.

    Requires lambda^1_i surjective and lambda^k_i bijective for stored
    1 < k <= dim; composition is read from d_1 of the unique horn fillers.
    """
    if X.dim < 2:
        raise InputError("extraction needs at least 2 stored levels")
    v = classify(to_terminal(X), 1, "groupoid", budget)
    if not v.ok_at_stored:
        raise InputError(f"input does not satisfy the nerve conditions: {v}")

    src = tuple(X.face(1, 1, a) for a in X.level(1))
    tgt = tuple(X.face(1, 0, a) for a in X.level(1))
    unit = tuple(X.deg(0, 0, o) for o in X.level(0))
    comp = {}
    for a in X.level(1):
        for b in X.level(1):
            if tgt[a] != src[b]:
                continue
            # horn (d_0=b, d_2=a); unique filler since lambda^2_1 is bijective
            matches = [z for z in X.level(2) if X.face(2, 0, z) == b and X.face(2, 2, z) == a]
            if len(matches) != 1:
                raise InvariantViolation(f"horn ({a},{b}) has {len(matches)} fillers")
            comp[(a, b)] = X.face(2, 1, matches[0])
    inv = []
    for a in X.level(1):
        cands = [b for b in X.level(1) if tgt[b] == src[a] and src[b] == tgt[a]
                 and comp.get((a, b)) == unit[src[a]] and comp.get((b, a)) == unit[tgt[a]]]
        if len(cands) != 1:
            raise InvariantViolation(f"morphism {a} has {len(cands)} inverses")
        inv.append(cands[0])
    g = FinGroupoid(X.sizes[0], src, tgt, comp, unit, tuple(inv))
    report = validate_groupoid(g)
    if report:
        raise InvariantViolation("extracted structure is not a groupoid: " + "; ".join(report[:3]))
    return g


def nerve_comparison_iso(X: TruncatedSSet, g: FinGroupoid) -> SimplicialMap:
    """Canonical map X -> nerve(extract(X)); bijective iff round-trip is identity."""
    N = nerve(g, X.dim)
    comps = [tuple(X.level(0)), tuple(X.level(1))]
    # reconstruct paths: edge j of a k-simplex is the face word keeping vertices {j-1, j}
    for k in range(2, X.dim + 1):
        idx = {}
        for i, p in enumerate(_nerve_paths(g, k)):
            idx[p] = i
        row = []
        for z in X.level(k):
            edges = []
            for j in range(1, k + 1):
                w = z
                lvl = k
                for drop in range(k, j, -1):  # delete vertices above j
                    w = X.face(lvl, drop, w)
                    lvl -= 1
                for _ in range(j - 1):  # delete vertices below j-1
                    w = X.face(lvl, 0, w)
                    lvl -= 1
                edges.append(w)
            row.append(idx[tuple(edges)])
        comps.append(tuple(row))
    return SimplicialMap(X, N, tuple(comps))


def _nerve_paths(g: FinGroupoid, k: int) -> list[tuple[int, ...]]:
    paths = [(a,) for a in range(g.n_morphisms)]
    for _ in range(k - 1):
        paths = [p + (b,) for p in paths for b in range(g.n_morphisms) if g.tgt[p[-1]] == g.src[b]]
    return paths


# ---------------------------------------------------------------------------
# isomorphism search

def find_isos(f: SimplicialMap, g: SimplicialMap, limit: int = 1, budget=DEFAULT_BUDGET):
    """Levelwise-bijective simplicial maps phi: X -> X' with g∘phi = f.

    f: X -> B and g: X' -> B share the base; pass limit=None to enumerate
    all isomorphisms over B (used for exhaustive non-isomorphism proofs).
    """
    X, Xp = f.source, g.source
    if f.target.sizes != g.target.sizes:
        raise InputError("find_isos: different bases")
    if X.sizes != Xp.sizes:
        return []
    D = X.dim
    bindex = {k: boundary_index(Xp, k) for k in range(1, D + 1)}
    witness: list[dict[int, tuple[int, int]]] = [dict() for _ in range(D + 1)]
    for k in range(1, D + 1):
        for i in range(k):
            row = X.degeneracies[k - 1][i]
            for y in range(X.sizes[k - 1]):
                witness[k].setdefault(row[y], (i, y))

    base_of_Xp = [
        {z: g.components[k][z] for z in Xp.level(k)} for k in range(D + 1)
    ]
    found = []
    comps: list[list[int]] = [[-1] * X.sizes[k] for k in range(D + 1)]
    used: list[set[int]] = [set() for _ in range(D + 1)]
    order = [(k, x) for k in range(D + 1) for x in X.level(k)]
    total = len(order)
    if total == 0:
        return [SimplicialMap(X, Xp, tuple(tuple(c) for c in comps))]

    def cands(pos):
        k, x = order[pos]
        if k >= 1 and x in witness[k]:
            i, y = witness[k][x]
            return iter((Xp.deg(k - 1, i, comps[k - 1][y]),))
        if k == 0:
            return iter(range(Xp.sizes[0]))
        key = tuple(comps[k - 1][X.face(k, i, x)] for i in range(k + 1))
        return iter(bindex[k].get(key, ()))

    # iterative backtracking: the recursion depth would be the number of
    # simplices, which overflows the interpreter stack on larger fixtures
    stack = [cands(0)]
    while stack:
        pos = len(stack) - 1
        k, x = order[pos]
        if comps[k][x] != -1:
            used[k].remove(comps[k][x])
            comps[k][x] = -1
        advanced = False
        for z in stack[-1]:
            if z in used[k] or base_of_Xp[k][z] != f.components[k][x]:
                continue
            comps[k][x] = z
            used[k].add(z)
            advanced = True
            break
        if not advanced:
            stack.pop()
            continue
        if pos + 1 == total:
            found.append(tuple(tuple(c) for c in comps))
            if limit is not None and len(found) >= limit:
                break
        else:
            stack.append(cands(pos + 1))
    return [SimplicialMap(X, Xp, c) for c in found]
