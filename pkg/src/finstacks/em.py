"""Eilenberg-MacLane objects, cocycle spans over W-bar G, and descent.

K(A,n) is modeled by normalized A-valued n-cocycles on the standard
simplices; W-bar K(A,n) is identified with K(A,n+1) by an explicit summation
formula, verified elementwise.  A group n-cocycle is exactly a simplicial
map W-bar G -> K(A,n); spans carry a hypercover U -> W-bar G.  The descent
pipeline pulls the universal K(A,2)-bundle back along a 3-cocycle, descends
it along the hypercover by 2-strictification, and reduces the resulting
finite 2-group to a cover, a torsor table and a pentagon-coherent
trivialization.
"""

from __future__ import annotations

import itertools
import math as _math
from dataclasses import dataclass, field

from .errors import DEFAULT_BUDGET, InputError, InvariantViolation, check_budget
from .groups import (
    FinGroup,
    GroupAction,
    SimplicialGroup,
    TwistedProductPresentation,
    constant_simplicial_group,
    equivariant_quotient_map,
    homotopy_quotient,
    validate_presentation,
    w_bar,
    w_total,
)
from .kan import INF, Verdict, classify, find_isos
from .paths import path_space
from .sset import (
    SimplicialMap,
    TruncatedSSet,
    compose,
    coskeleton,
    identity_map,
    make_sset,
    pullback,
    to_terminal,
    truncate,
    validate,
    validate_map,
)
from .strict import Strictification, strictify


# ---------------------------------------------------------------------------
# K(A, n)

@dataclass
class EMSpace:
    """K(A,n) up to degree D; level k is Z^n_norm(Delta^k; A)."""

    A: FinGroup
    n: int
    sset: TruncatedSSet
    basis: list  # per level: ordered nondegenerate n-simplices of Delta^k
    elements: list  # per level: value tuples over the basis
    index: list
    _groups: dict = field(default_factory=dict)

    def zero(self, k: int) -> int:
        return self.index[k][tuple([self.A.e] * len(self.basis[k]))]

    def add(self, k: int, a: int, b: int) -> int:
        ta, tb = self.elements[k][a], self.elements[k][b]
        return self.index[k][tuple(self.A.m(x, y) for x, y in zip(ta, tb))]

    def neg(self, k: int, a: int) -> int:
        return self.index[k][tuple(self.A.i(x) for x in self.elements[k][a])]

    def value(self, k: int, el: int, simplex: tuple) -> int:
        if len(set(simplex)) < len(simplex):
            return self.A.e
        pos = self.basis[k].index(simplex)
        return self.elements[k][el][pos]

    def group(self, k: int) -> FinGroup:
        if k not in self._groups:
            elems = self.elements[k]
            idx = self.index[k]
            A = self.A
            mul = [
                [idx[tuple(A.m(x, y) for x, y in zip(ta, tb))] for tb in elems] for ta in elems
            ]
            inv = [idx[tuple(A.i(x) for x in ta)] for ta in elems]
            self._groups[k] = FinGroup(
                tuple(tuple(r) for r in mul), self.zero(k), tuple(inv), True
            )
        return self._groups[k]

    def simplicial_group(self) -> SimplicialGroup:
        return SimplicialGroup(self.sset, tuple(self.group(k) for k in range(self.sset.dim + 1)))


def _delta_tuples(k, m):
    return list(itertools.combinations(range(k + 1), m + 1))


def em_space(A: FinGroup, n: int, D: int, budget=DEFAULT_BUDGET) -> EMSpace:
    if not A.abelian:
        raise InputError("em_space needs an abelian group")
    basis = [_delta_tuples(k, n) for k in range(D + 1)]
    conditions = [_delta_tuples(k, n + 1) for k in range(D + 1)]
    elements = []
    for k in range(D + 1):
        bs = basis[k]
        pos = {t: i for i, t in enumerate(bs)}
        check_budget("em_space enumeration", A.order ** len(bs), budget)
        lv = []
        for vals in itertools.product(range(A.order), repeat=len(bs)):
            ok = True
            for w in conditions[k]:
                acc = A.e
                for i in range(n + 2):
                    face = w[:i] + w[i + 1:]
                    v = vals[pos[face]]
                    acc = A.m(acc, v if i % 2 == 0 else A.i(v))
                if acc != A.e:
                    ok = False
                    break
            if ok:
                lv.append(vals)
        elements.append(lv)
        if len(lv) != A.order ** _math.comb(k, n):
            raise InvariantViolation(f"cocycle count at level {k} is off: {len(lv)}")
    index = [{t: i for i, t in enumerate(lv)} for lv in elements]

    def theta_image(k_from, k_to, vmap, vals):
        out = []
        for t in basis[k_to]:
            image = tuple(vmap[v] for v in t)
            if len(set(image)) < len(image):
                out.append(A.e)
            else:
                out.append(vals[basis[k_from].index(image)])
        return tuple(out)

    sizes = [len(lv) for lv in elements]
    faces: list = [[]]
    for k in range(1, D + 1):
        rows = []
        for i in range(k + 1):
            vmap = [v if v < i else v + 1 for v in range(k)]
            rows.append([index[k - 1][theta_image(k, k - 1, vmap, vals)] for vals in elements[k]])
        faces.append(rows)
    degs = []
    for k in range(D):
        rows = []
        for i in range(k + 1):
            vmap = [v if v <= i else v - 1 for v in range(k + 2)]
            rows.append([index[k + 1][theta_image(k, k + 1, vmap, vals)] for vals in elements[k]])
        degs.append(rows)
    degs.append([])
    sset = make_sset(sizes, faces, degs, min(n + 1, D))
    return EMSpace(A, n, sset, basis, elements, index)


def wbar_em_iso(A: FinGroup, n: int, D: int, budget=DEFAULT_BUDGET):
    """Explicit levelwise iso W-bar K(A,n) -> K(A,n+1), fully verified.

    On a tuple (c_0..c_{k-1}) the image cocycle sums c_j over the span of
    the last two entries: z(w_0..w_{n+1}) = sum_{j=w_n}^{w_{n+1}-1}
    c_j(w_0..w_n).
    """
    em_n = em_space(A, n, D, budget)
    em_n1 = em_space(A, n + 1, D, budget)
    G = em_n.simplicial_group()
    WB = w_bar(G, D, budget)
    wlevels = [[()]] + [
        list(itertools.product(*[range(em_n.sset.sizes[j]) for j in range(k)]))
        for k in range(1, D + 1)
    ]
    comps = []
    for k in range(D + 1):
        row = []
        for tup in wlevels[k]:
            vals = []
            for w in em_n1.basis[k]:
                acc = A.e
                for j in range(w[n], w[n + 1]):
                    acc = A.m(acc, em_n.value(j, tup[j], w[: n + 1]))
                vals.append(acc)
            key = tuple(vals)
            if key not in em_n1.index[k]:
                raise InvariantViolation("wbar image is not a cocycle")
            row.append(em_n1.index[k][key])
        comps.append(tuple(row))
    iso = SimplicialMap(WB, em_n1.sset, tuple(comps))
    report = validate_map(iso)
    if report:
        raise InvariantViolation("wbar_em_iso is not simplicial: " + report[0])
    if not iso.is_levelwise_bijective():
        raise InvariantViolation("wbar_em_iso is not bijective")
    for k in range(D + 1):
        gp = em_n1.group(k)
        windex = {t: i for i, t in enumerate(wlevels[k])}
        for a in range(WB.sizes[k]):
            pa = wlevels[k][a]
            for b in range(WB.sizes[k]):
                pb = wlevels[k][b]
                ab = windex[tuple(em_n.add(j, pa[j], pb[j]) for j in range(k))]
                if comps[k][ab] != gp.m(comps[k][a], comps[k][b]):
                    raise InvariantViolation("wbar_em_iso is not a homomorphism")
    return iso, em_n, em_n1, WB


# ---------------------------------------------------------------------------
# group cocycles

def normalize_check(G: FinGroup, A: FinGroup, n: int, c: dict) -> None:
    for key in c:
        if len(key) != n or any(not (0 <= g < G.order) for g in key):
            raise InputError(f"bad cocycle key {key}")
    for key in itertools.product(range(G.order), repeat=n):
        if G.e in key and c.get(key, A.e) != A.e:
            raise InputError(f"cocycle not normalized at {key}")


def group_coboundary(G: FinGroup, A: FinGroup, n: int, b: dict) -> dict:
    """delta b for a normalized (n-1)-cochain b (trivial action)."""
    out = {}
    for key in itertools.product(range(G.order), repeat=n):
        acc = b.get(key[1:], A.e)
        for i in range(1, n):
            merged = key[: i - 1] + (G.m(key[i - 1], key[i]),) + key[i + 1:]
            v = b.get(merged, A.e)
            acc = A.m(acc, v if i % 2 == 0 else A.i(v))
        v = b.get(key[:-1], A.e)
        acc = A.m(acc, v if n % 2 == 0 else A.i(v))
        out[key] = acc
    return out


def group_cocycle_violation(G: FinGroup, A: FinGroup, n: int, c: dict):
    """None if delta c = 0; otherwise the violating (n+1)-tuple."""
    for key in itertools.product(range(G.order), repeat=n + 1):
        acc = c.get(key[1:], A.e)
        for i in range(1, n + 1):
            merged = key[: i - 1] + (G.m(key[i - 1], key[i]),) + key[i + 1:]
            v = c.get(merged, A.e)
            acc = A.m(acc, v if i % 2 == 0 else A.i(v))
        v = c.get(key[:-1], A.e)
        acc = A.m(acc, v if (n + 1) % 2 == 0 else A.i(v))
        if acc != A.e:
            return key
    return None


def cocycle_to_map(G: FinGroup, A: FinGroup, n: int, c: dict, em: EMSpace,
                   wbar_levels, WB: TruncatedSSet) -> SimplicialMap:
    """The simplicial map W-bar G -> K(A,n) of a normalized group cocycle."""
    comps = []
    for k in range(WB.dim + 1):
        row = []
        for tup in wbar_levels[k]:
            vals = []
            for w in em.basis[k]:
                args = []
                for r in range(n):
                    g = G.e
                    for j in range(w[r], w[r + 1]):
                        g = G.m(g, tup[j])
                    args.append(g)
                vals.append(c.get(tuple(args), A.e))
            key = tuple(vals)
            if key not in em.index[k]:
                raise InvariantViolation("group cocycle image is not a simplicial cocycle")
            row.append(em.index[k][key])
        comps.append(tuple(row))
    phi = SimplicialMap(WB, em.sset, tuple(comps))
    report = validate_map(phi)
    if report:
        raise InvariantViolation("cocycle map is not simplicial: " + report[0])
    return phi


# ---------------------------------------------------------------------------
# cocycle spans

@dataclass
class CocycleSpan:
    G: FinGroup
    A: FinGroup
    n: int
    U: TruncatedSSet
    f: SimplicialMap  # U -> W-bar G, a hypercover
    phi: SimplicialMap  # U -> K(A,n)
    em: EMSpace
    wbar: TruncatedSSet
    wbar_levels: list

    def hypercover_verdict(self, budget=DEFAULT_BUDGET) -> Verdict:
        return classify(self.f, INF, "hypercover", budget)


def wbar_of_group(G: FinGroup, D: int, budget=DEFAULT_BUDGET):
    """W-bar of the constant simplicial group on G, with its level tuples.

    This is the nerve of G, hence 2-coskeletal.
    """
    sg = constant_simplicial_group(G, D)
    WB = w_bar(sg, D, budget).with_flag(2 if D >= 2 else None)
    levels = [[()]] + [list(itertools.product(range(G.order), repeat=k)) for k in range(1, D + 1)]
    report = validate(WB)
    if report:
        raise InvariantViolation("w_bar of a constant group invalid: " + report[0])
    return WB, levels


def group_cocycle_as_span(G: FinGroup, A: FinGroup, n: int, c: dict, D: int = 4,
                          budget=DEFAULT_BUDGET) -> CocycleSpan:
    normalize_check(G, A, n, c)
    witness = group_cocycle_violation(G, A, n, c)
    if witness is not None:
        raise InputError(f"not a cocycle: delta c != 0 at {witness}")
    em = em_space(A, n, D, budget)
    WB, levels = wbar_of_group(G, D, budget)
    phi = cocycle_to_map(G, A, n, c, em, levels, WB)
    return CocycleSpan(G, A, n, WB, identity_map(WB), phi, em, WB, levels)


def slot_refined_span(span: CocycleSpan, m: int, multiplicity, budget=DEFAULT_BUDGET) -> CocycleSpan:
    """Refine the cover of a span by duplicating m-simplices.

    A refined k-simplex is (u, copy choice on every nondegenerate m-face of
    Delta^k), with multiplicity[s] >= 1 copies of each m-simplex s of U; copy
    0 is marked and is used wherever a face tuple degenerates.  The
    projection is a hypercover (an isomorphism on matching objects above
    level m); for m >= 1 the refined cover stays reduced.
    """
    U = span.U
    D = U.dim
    from .sset import evaluate_at

    slots = [_delta_tuples(k, m) for k in range(D + 1)]
    slot_pos = [{t: i for i, t in enumerate(sl)} for sl in slots]
    levels = []
    for k in range(D + 1):
        lv = []
        for u in U.level(k):
            options = [range(multiplicity[evaluate_at(U, k, u, t)]) for t in slots[k]]
            for choice in itertools.product(*options):
                lv.append((u, choice))
        check_budget("cover refinement level", len(lv), budget)
        levels.append(lv)
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]

    faces: list = [[]]
    for k in range(1, D + 1):
        rows = []
        for i in range(k + 1):
            vmap = [v if v < i else v + 1 for v in range(k)]
            row = []
            for u, choice in levels[k]:
                nu = U.face(k, i, u)
                nchoice = tuple(choice[slot_pos[k][tuple(vmap[v] for v in t)]] for t in slots[k - 1])
                row.append(index[k - 1][(nu, nchoice)])
            rows.append(row)
        faces.append(rows)
    degs = []
    for k in range(D):
        rows = []
        for i in range(k + 1):
            vmap = [v if v <= i else v - 1 for v in range(k + 2)]
            row = []
            for u, choice in levels[k]:
                nu = U.deg(k, i, u)
                nchoice = []
                for t in slots[k + 1]:
                    image = tuple(vmap[v] for v in t)
                    if len(set(image)) < len(image):
                        nchoice.append(0)  # marked lift of the degenerate face
                    else:
                        nchoice.append(choice[slot_pos[k][image]])
                row.append(index[k + 1][(nu, tuple(nchoice))])
            rows.append(row)
        degs.append(rows)
    degs.append([])
    flag = None
    if U.coskeletal_above is not None:
        flag = max(m + 1, U.coskeletal_above)
    Uref = make_sset(sizes, faces, degs, flag)
    report = validate(Uref)
    if report:
        raise InvariantViolation("refined cover invalid: " + report[0])
    r = SimplicialMap(Uref, U, tuple(tuple(u for u, _ in levels[k]) for k in range(D + 1)))
    report = validate_map(r)
    if report:
        raise InvariantViolation("refinement projection invalid: " + report[0])
    v = classify(r, INF, "hypercover", budget)
    if not v.ok_at_stored:
        raise InvariantViolation(f"refinement projection is not a hypercover: {v.to_json()}")
    return CocycleSpan(
        span.G, span.A, span.n, Uref, compose(span.f, r), compose(span.phi, r),
        span.em, span.wbar, span.wbar_levels,
    )


def edge_refined_span(span: CocycleSpan, multiplicity, budget=DEFAULT_BUDGET) -> CocycleSpan:
    """Duplicate 1-simplices of the cover; stays a 3-hypercover."""
    return slot_refined_span(span, 1, multiplicity, budget)


# ---------------------------------------------------------------------------
# equivalence of cocycles

def span_difference_cocycle(s1: CocycleSpan, s2: CocycleSpan, budget=DEFAULT_BUDGET):
    """Common refinement P = U0 x_{W-bar G} U1 and the difference of the
    pulled-back cocycle maps, as a normalized cocycle table on P."""
    P, p0, p1 = pullback(s1.f, s2.f)
    em = s1.em
    n = s1.n
    diff = []
    for k in range(P.dim + 1):
        row = []
        for z in P.level(k):
            a = s1.phi.components[k][p0.components[k][z]]
            b = s2.phi.components[k][p1.components[k][z]]
            row.append(em.add(k, a, em.neg(k, b)))
        diff.append(tuple(row))
    psi = SimplicialMap(P, em.sset, tuple(diff))
    top = em.basis[n].index(tuple(range(n + 1)))
    zhat = {x: em.elements[n][diff[n][x]][top] for x in P.level(n)}
    return P, p0, p1, psi, zhat


def _simplicial_coboundary_search(P: TruncatedSSet, A: FinGroup, n: int, zhat: dict,
                                  budget=DEFAULT_BUDGET):
    """Brute-force a normalized (n-1)-cochain b with delta b = zhat on P.

    Returns (found, b) where b maps nondegenerate (n-1)-simplices to A; None
    when the search space exceeds the budget (inconclusive).
    """
    nondeg = P.nondegenerate(n - 1) if n >= 1 else []
    space = A.order ** len(nondeg)
    if space > (budget or space):
        return None, None
    nondeg_n = P.nondegenerate(n)
    deg_lookup = {x: i for i, x in enumerate(nondeg)}

    def bval(assign, x):
        i = deg_lookup.get(x)
        return A.e if i is None else assign[i]

    for assign in itertools.product(range(A.order), repeat=len(nondeg)):
        ok = True
        for x in nondeg_n:
            acc = A.e
            for i in range(n + 1):
                v = bval(assign, P.face(n, i, x))
                acc = A.m(acc, v if i % 2 == 0 else A.i(v))
            if acc != zhat[x]:
                ok = False
                break
        if ok:
            return True, dict(zip(nondeg, assign))
    return False, None


@dataclass
class EquivalenceVerdict:
    status: str  # equivalent | not_equivalent | inconclusive
    mode: str = ""  # strict | homotopy | ""
    witness: object = None

    @property
    def equivalent(self):
        return self.status == "equivalent"


def equivalence_of_cocycles(s1: CocycleSpan, s2: CocycleSpan, budget=DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Decide equivalence by the class of the difference on the common
    refinement; also reports a strictly commuting refinement when one exists.

    The projection P -> W-bar G is a hypercover, hence induces an isomorphism
    on cocycle classes, so coboundary-testing the difference on P decides
    equivalence exactly; the search is budget-bounded and reports
    "inconclusive" when it cannot finish.
    """
    if (s1.G, s1.A, s1.n) != (s2.G, s2.A, s2.n):
        raise InputError("spans disagree on G, A or n")
    P, p0, p1, psi, zhat = span_difference_cocycle(s1, s2, budget)
    A, n = s1.A, s1.n
    if all(v == A.e for v in zhat.values()):
        # the pulled-back cocycles agree on the nose: P itself commutes
        return EquivalenceVerdict("equivalent", "strict", P)
    found, b = _simplicial_coboundary_search(P, A, n, zhat, budget)
    if found is None:
        return EquivalenceVerdict("inconclusive")
    if found:
        return EquivalenceVerdict("equivalent", "homotopy", b)
    return EquivalenceVerdict("not_equivalent")


def strictify_cocycle(span: CocycleSpan, budget=DEFAULT_BUDGET):
    """Factor a span through the n-strictification of its hypercover.

    Returns (new_span, q) where q: U -> tau_n(U,f) is the hypercover through
    which both legs factor; the factorization is itself an equivalence of
    cocycles (strict, witness U).
    """
    n = span.n
    s = strictify(span.f, n, budget)
    q = s.comparison
    X = s.source
    # factor phi through q levelwise, with exhaustive well-definedness checks
    comps = []
    for k in range(X.dim + 1):
        table = {}
        for x in range(q.source.sizes[k]):
            t = q.components[k][x]
            v = span.phi.components[k][x]
            if table.setdefault(t, v) != v:
                raise InvariantViolation("cocycle does not factor through the strictification")
        if len(table) != X.sizes[k]:
            raise InvariantViolation("strictification quotient not surjective")
        comps.append(tuple(table[t] for t in range(X.sizes[k])))
    phi_bar = SimplicialMap(X, span.em.sset, tuple(comps))
    report = validate_map(phi_bar)
    if report:
        raise InvariantViolation("factored cocycle not simplicial: " + report[0])
    new_span = CocycleSpan(
        span.G, span.A, span.n, X, s.assembled, phi_bar, span.em, span.wbar, span.wbar_levels
    )
    vq = classify(q, INF, "hypercover", budget)
    if not vq.ok_at_stored:
        raise InvariantViolation("strictification quotient is not a hypercover")
    return new_span, q


# ---------------------------------------------------------------------------
# twisted universal bundles

def automorphism_action_check(G: FinGroup, A: FinGroup, act) -> None:
    for g in range(G.order):
        seen = set(act[g])
        if len(seen) != A.order:
            raise InputError(f"action of {g} is not a bijection")
        for a in range(A.order):
            for b in range(A.order):
                if act[g][A.m(a, b)] != A.m(act[g][a], act[g][b]):
                    raise InputError(f"action of {g} is not an automorphism")
    for g in range(G.order):
        for h in range(G.order):
            for a in range(A.order):
                if act[g][act[h][a]] != act[G.m(g, h)][a]:
                    raise InputError("action tables do not compose")
    for a in range(A.order):
        if act[G.e][a] != a:
            raise InputError("identity does not act trivially")


def _em_action(G: FinGroup, em: EMSpace, act, D: int) -> GroupAction:
    sg = constant_simplicial_group(G, D)
    tables = []
    for k in range(D + 1):
        rows = []
        for g in range(G.order):
            rows.append(tuple(
                em.index[k][tuple(act[g][v] for v in em.elements[k][x])] for x in em.sset.level(k)
            ))
        tables.append(tuple(rows))
    return GroupAction(sg, truncate(em.sset, D), tuple(tables))


def twisted_universal_bundle(G: FinGroup, A: FinGroup, n: int, act, D: int,
                             budget=DEFAULT_BUDGET) -> TwistedProductPresentation:
    """Homotopy quotient of the universal K(A,n-1)-bundle by a G-action."""
    automorphism_action_check(G, A, act)
    iso, em_low, em_high, WBK = wbar_em_iso(A, n - 1, D, budget)
    Glow = em_low.simplicial_group()
    W = w_total(Glow, D, budget)
    # G acts on W K(A,n-1) coordinatewise and on K(A,n) through the iso
    sg = constant_simplicial_group(G, D)
    wlevels = [list(itertools.product(*[range(em_low.sset.sizes[j]) for j in range(k + 1)]))
               for k in range(D + 1)]
    windex = [{t: i for i, t in enumerate(lv)} for lv in wlevels]
    tablesW = []
    for k in range(D + 1):
        rows = []
        for g in range(G.order):
            rows.append(tuple(
                windex[k][tuple(
                    em_low.index[j][tuple(act[g][v] for v in em_low.elements[j][t[j]])]
                    for j in range(k + 1)
                )]
                for t in wlevels[k]
            ))
        tablesW.append(tuple(rows))
    actW = GroupAction(sg, W, tuple(tablesW))
    actK = _em_action(G, em_high, act, D)
    # bundle map W K(A,n-1) -> K(A,n): drop the last coordinate, then the iso
    comps = []
    for k in range(D + 1):
        row = [iso.components[k][_wbar_index_of(wlevels[k][z][:k], em_low, k)] for z in W.level(k)]
        comps.append(tuple(row))
    bundle = SimplicialMap(W, em_high.sset, tuple(comps))
    qW, qK, qmap = equivariant_quotient_map(actW, actK, bundle, D, budget)
    # presentation of the quotient map over the quotient base, fiber K(A,n-1)
    total, base = qW.total, qK.total
    phi = []
    for k in range(D + 1):
        row = []
        for z in total.level(k):
            _, wz = qW.phi[k][z]
            row.append((qmap.components[k][z], wlevels[k][wz][k]))
        phi.append(tuple(row))
    pres = TwistedProductPresentation(total, base, truncate(em_low.sset, D), tuple(phi), qmap)
    report = validate_presentation(pres)
    if report:
        raise InvariantViolation("twisted universal bundle presentation: " + report[0])
    return pres


def _wbar_index_of(prefix, em_low: EMSpace, k: int) -> int:
    # index of a W-bar tuple in lexicographic product order
    idx = 0
    for j in range(k):
        idx = idx * em_low.sset.sizes[j] + prefix[j]
    return idx


# ---------------------------------------------------------------------------
# descent

@dataclass
class DescendResult:
    span: CocycleSpan
    em2: EMSpace
    em3: EMSpace
    presentation: TwistedProductPresentation  # E -> U
    p: SimplicialMap
    fp: SimplicialMap
    strictification: Strictification
    two_group: TruncatedSSet
    tau_map: SimplicialMap
    stack_precheck: Verdict
    groupoid_verdict: Verdict


def descend(span: CocycleSpan, budget=DEFAULT_BUDGET) -> DescendResult:
    """Build the finite 2-group of a 3-cocycle span.

    Pull the universal K(A,2)-bundle back along phi, check the local
    2-bundle conditions, and 2-strictify the composite down to W-bar G.
    """
    if span.n != 3:
        raise InputError("descend expects a 3-cocycle span")
    if span.U.sizes[0] != 1:
        raise InputError("descend expects a reduced cover (single vertex)")
    pre = classify(span.f, 3, "hypercover", budget)
    if not pre.ok_at_stored:
        raise InputError(f"descend: f is not a 3-hypercover: {pre.to_json()}")
    D = span.U.dim
    A = span.A
    iso, em2, em3, WBK2 = wbar_em_iso(A, 2, D, budget)
    if em3.elements != span.em.elements:
        raise InputError("span and bundle disagree on the K(A,3) model")
    G2 = em2.simplicial_group()
    W = w_total(G2, D, budget)
    wlevels = [list(itertools.product(*[range(em2.sset.sizes[j]) for j in range(k + 1)]))
               for k in range(D + 1)]
    comps = []
    for k in range(D + 1):
        comps.append(tuple(
            iso.components[k][_wbar_index_of(wlevels[k][z][:k], em2, k)] for z in W.level(k)
        ))
    b = SimplicialMap(W, em3.sset, tuple(comps))
    report = validate_map(b)
    if report:
        raise InvariantViolation("universal bundle base map: " + report[0])

    E, pE, pW = pullback(span.phi, b)
    # twisted product presentation over U with fiber K(A,2)
    pair_levels = [
        [(pE.components[k][z], pW.components[k][z]) for z in E.level(k)] for k in range(D + 1)
    ]
    phi_tables = []
    for k in range(D + 1):
        row = []
        for u, w in pair_levels[k]:
            row.append((u, wlevels[k][w][k]))
        phi_tables.append(tuple(row))
    pres = TwistedProductPresentation(E, span.U, truncate(em2.sset, D), tuple(phi_tables), pE)
    report = validate_presentation(pres)
    if report:
        raise InvariantViolation("pullback is not a twisted product: " + report[0])
    stack_check = classify(pE, 2, "stack", budget)
    if not stack_check.ok_at_stored:
        raise InvariantViolation(f"pullback bundle is not a 2-stack on stored levels: {stack_check.to_json()}")

    fp = compose(span.f, pE)
    s = strictify(fp, 2, budget)
    X = s.source
    if X.sizes[0] != 1:
        raise InvariantViolation("descended 2-group is not reduced")
    verdict = classify(to_terminal(X), 2, "groupoid", budget)
    if not verdict.ok_at_stored:
        raise InvariantViolation(f"descended object is not a 2-group: {verdict.to_json()}")
    return DescendResult(span, em2, em3, pres, pE, fp, s, X, s.assembled, stack_check, verdict)


# ---------------------------------------------------------------------------
# extraction of the two-group data

@dataclass
class TwoGroupData:
    cover: tuple[int, ...]  # U_1 -> G
    base_sizes: tuple[int, ...]
    fibers: list  # per base 2-simplex: list of two-group 2-simplices
    action: list  # act[a][x2] on level 2
    section: list  # chosen base-point per fiber
    zeta: list  # A-value per base 3-simplex
    pentagon_ok: bool
    torsor_ok: bool


def _extraction_base(res: DescendResult, budget=DEFAULT_BUDGET):
    """Csk_1(U) x_{Csk_1 W-bar G} W-bar G, enumerated directly as pairs
    (w, edge lifts), with the canonical map from the two-group."""
    span = res.span
    U = span.U
    W = span.wbar
    X = res.two_group
    D = X.dim
    from .sset import evaluate_at

    f1 = span.f.components[1]
    fibers_of_edge: dict[int, list[int]] = {}
    for u in U.level(1):
        fibers_of_edge.setdefault(f1[u], []).append(u)
    slots = [_delta_tuples(k, 1) for k in range(D + 1)]
    slot_pos = [{t: i for i, t in enumerate(sl)} for sl in slots]
    deg_edge = U.deg(0, 0, 0)  # the degenerate edge on the unique vertex

    levels = []
    for k in range(D + 1):
        lv = []
        for w in W.level(k):
            options = [fibers_of_edge[evaluate_at(W, k, w, t)] for t in slots[k]]
            for choice in itertools.product(*options):
                lv.append((w, choice))
        check_budget("extraction base level", len(lv), budget)
        levels.append(lv)
    index = [{t: i for i, t in enumerate(lv)} for lv in levels]
    sizes = [len(lv) for lv in levels]
    faces: list = [[]]
    for k in range(1, D + 1):
        rows = []
        for i in range(k + 1):
            vmap = [v if v < i else v + 1 for v in range(k)]
            rows.append([
                index[k - 1][(W.face(k, i, w),
                              tuple(choice[slot_pos[k][tuple(vmap[v] for v in t)]] for t in slots[k - 1]))]
                for w, choice in levels[k]
            ])
        faces.append(rows)
    degs = []
    for k in range(D):
        rows = []
        for i in range(k + 1):
            vmap = [v if v <= i else v - 1 for v in range(k + 2)]
            row = []
            for w, choice in levels[k]:
                nchoice = []
                for t in slots[k + 1]:
                    image = tuple(vmap[v] for v in t)
                    if image[0] == image[1]:
                        nchoice.append(deg_edge)
                    else:
                        nchoice.append(choice[slot_pos[k][image]])
                row.append(index[k + 1][(W.deg(k, i, w), tuple(nchoice))])
            rows.append(row)
        degs.append(rows)
    degs.append([])
    B = make_sset(sizes, faces, degs)
    report = validate(B)
    if report:
        raise InvariantViolation("extraction base invalid: " + report[0])

    b_of = []
    for k in range(D + 1):
        row = []
        for x in X.level(k):
            edges = tuple(res.p.components[1][evaluate_at(X, k, x, t)] for t in slots[k])
            row.append(index[k][(res.tau_map.components[k][x], edges)])
        b_of.append(tuple(row))
    bmap = SimplicialMap(X, B, tuple(b_of))
    report = validate_map(bmap)
    if report:
        raise InvariantViolation("two-group base map: " + report[0])
    return B, bmap


def extract_two_group_data(res: DescendResult, budget=DEFAULT_BUDGET) -> TwoGroupData:
    span = res.span
    U, A = span.U, span.A
    X = res.two_group
    D = X.dim
    B, bmap = _extraction_base(res, budget)
    b_of = bmap.components

    # A-action on X_2 through the K(A,2)_2 = A coordinate of E_2
    em2 = res.em2
    inject = {}
    top = em2.basis[2].index((0, 1, 2))
    for a in range(A.order):
        vals = [A.e] * len(em2.basis[2])
        vals[top] = a
        inject[a] = em2.index[2][tuple(vals)]
    phi2 = res.presentation.phi[2]
    inv_phi2 = {pair: e for e, pair in enumerate(phi2)}
    q = res.strictification.q
    classes = res.strictification.quotient.classes()
    act = []
    for a in range(A.order):
        row = {}
        for x2 in X.level(2):
            vals = set()
            for e in classes[x2]:
                u, y = phi2[e]
                ep = inv_phi2[(u, em2.add(2, y, inject[a]))]
                vals.add(q[ep])
            if len(vals) != 1:
                raise InvariantViolation("torsor action not well defined on classes")
            row[x2] = vals.pop()
        act.append([row[x2] for x2 in X.level(2)])

    fibers: dict[int, list[int]] = {}
    for x2 in X.level(2):
        fibers.setdefault(b_of[2][x2], []).append(x2)
    if set(fibers) != set(B.level(2)):
        raise InvariantViolation("two-group does not surject onto the base 2-simplices")
    torsor_ok = True
    for b2, fiber in fibers.items():
        for x2 in fiber:
            orbit = {act[a][x2] for a in range(A.order)}
            if orbit != set(fiber) or len(fiber) != A.order:
                torsor_ok = False
    if not torsor_ok:
        raise InvariantViolation("A-action on the 2-simplices is not free and transitive")

    section = {b2: min(fiber) for b2, fiber in fibers.items()}
    measure = {}
    for b2, fiber in fibers.items():
        for a in range(A.order):
            measure[act[a][section[b2]]] = a

    over3: dict[int, list[int]] = {}
    for x3 in X.level(3):
        over3.setdefault(b_of[3][x3], []).append(x3)
    if set(over3) != set(B.level(3)):
        raise InvariantViolation("two-group does not surject onto the base 3-simplices")
    zeta = []
    for b3 in B.level(3):
        vals = set()
        for x3 in over3[b3]:
            acc = A.e
            for j in range(4):
                m = measure[X.face(3, j, x3)]
                acc = A.m(acc, m if j % 2 == 0 else A.i(m))
            vals.add(acc)
        if len(vals) != 1:
            raise InvariantViolation("trivialization is not well defined")
        zeta.append(vals.pop())

    pentagon_ok = True
    for b4 in B.level(4):
        acc = A.e
        for i in range(5):
            z = zeta[B.face(4, i, b4)]
            acc = A.m(acc, z if i % 2 == 0 else A.i(z))
        if acc != A.e:
            pentagon_ok = False
            raise InvariantViolation(f"pentagon coherence fails at base 4-simplex {b4}")

    return TwoGroupData(
        cover=tuple(span.f.components[1]),
        base_sizes=B.sizes,
        fibers=[fibers[b2] for b2 in B.level(2)],
        action=act,
        section=[section[b2] for b2 in B.level(2)],
        zeta=zeta,
        pentagon_ok=pentagon_ok,
        torsor_ok=torsor_ok,
    )


def descend_outputs_isomorphic(r1: DescendResult, r2: DescendResult, budget=DEFAULT_BUDGET):
    """Exhaustive search for an isomorphism over W-bar G between outputs."""
    return find_isos(r1.tau_map, r2.tau_map, limit=1, budget=budget)


def comparison_of_descents(refined: DescendResult, base: DescendResult, r: SimplicialMap,
                           budget=DEFAULT_BUDGET) -> SimplicialMap:
    """Canonical map tau_2(E', fp') -> tau_2(E, fp) over W-bar G induced by a
    refinement r: U' -> U; its hypercover property exhibits the two outputs
    as equivalent over W-bar G."""
    X1, X2 = refined.two_group, base.two_group
    q1, q2 = refined.strictification.comparison, base.strictification.comparison
    # E' -> E on pullback pairs
    phi1, phi2 = refined.presentation.phi, base.presentation.phi
    inv2 = [{pair: e for e, pair in enumerate(phi2[k])} for k in range(X2.dim + 1)]
    ecomps = []
    for k in range(X2.dim + 1):
        row = []
        for e in refined.presentation.total.level(k):
            u, y = phi1[k][e]
            row.append(inv2[k][(r.components[k][u], y)])
        ecomps.append(tuple(row))
    emap = SimplicialMap(refined.presentation.total, base.presentation.total, tuple(ecomps))
    report = validate_map(emap)
    if report:
        raise InvariantViolation("refinement comparison on total spaces: " + report[0])
    # induced on strictifications: X1_k -> X2_k through representatives
    comps = []
    for k in range(X1.dim + 1):
        table = {}
        for x in range(q1.source.sizes[k]):
            t = q1.components[k][x]
            v = q2.components[k][emap.components[k][x]]
            if table.setdefault(t, v) != v:
                raise InvariantViolation("descent comparison not well defined")
        comps.append(tuple(table[t] for t in range(X1.sizes[k])))
    h = SimplicialMap(X1, X2, tuple(comps))
    report = validate_map(h)
    if report:
        raise InvariantViolation("descent comparison not simplicial: " + report[0])
    if compose(base.tau_map, h).components != refined.tau_map.components:
        raise InvariantViolation("descent comparison does not commute over the base")
    return h
