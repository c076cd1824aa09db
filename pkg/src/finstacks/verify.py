"""Built-in property suites driven by the verify CLI command.

Each suite runs theorem-checking constructions over fixed fixtures plus
seeded random small groups/groupoids; failures return a witness line.
Deterministic for a given seed.
"""

from __future__ import annotations

import random

from .errors import DEFAULT_BUDGET
from .groups import (
    as_groupoid,
    classify_strict,
    constant_simplicial_group,
    cyclic,
    brute_force_fillers,
    dihedral,
    moore_fill,
    small_group_catalog,
    symmetric,
    trivial_action,
    homotopy_quotient,
    validate_presentation,
    universal_bundle,
    w_bar,
    w_total,
    wbar_horn_iso,
)
from .kan import (
    INF,
    absolute_horn_object,
    classify,
    find_isos,
    groupoid_from_nerve,
    mu_lambda_factorization_holds,
    nerve,
    nerve_comparison_iso,
)
from .sset import cech_nerve, compose, pi0, terminal, to_terminal, validate, validate_map
from .shapes import generalized_horn, standard_simplex
from .joins import is_collapsible, join, replay_certificate, _nondeg_closure
from .strict import strictify, strictify_hypercover_check, tn_inverse_laws
from .em import descend, em_space, extract_two_group_data, group_cocycle_as_span, wbar_em_iso


def random_groupoid(rng: random.Random):
    """Connected-component sum of codiscrete-times-group pieces."""
    from .kan import FinGroupoid

    n_obj = rng.randint(2, 4)
    comp_of = [rng.randrange(2) for _ in range(n_obj)]
    groups = [cyclic(rng.choice([1, 2, 3])) for _ in range(2)]
    src, tgt, unit, inv = [], [], [], []
    morphs = []
    for a in range(n_obj):
        for b in range(n_obj):
            if comp_of[a] != comp_of[b]:
                continue
            for g in range(groups[comp_of[a]].order):
                morphs.append((a, b, g))
    midx = {m: i for i, m in enumerate(morphs)}
    for a, b, g in morphs:
        src.append(a)
        tgt.append(b)
    for o in range(n_obj):
        unit.append(midx[(o, o, groups[comp_of[o]].e)])
    comp = {}
    for i, (a, b, g) in enumerate(morphs):
        G = groups[comp_of[a]]
        inv.append(midx[(b, a, G.i(g))])
        for j, (b2, c, h) in enumerate(morphs):
            if b2 == b:
                comp[(i, j)] = midx[(a, c, G.m(g, h))]
    return FinGroupoid(n_obj, tuple(src), tuple(tgt), comp, tuple(unit), tuple(inv))


def suite_grothendieck(seed: int, budget=DEFAULT_BUDGET):
    rng = random.Random(seed)
    lines = []
    for name, G in small_group_catalog(12):
        N = nerve(as_groupoid(G), 4)
        v = classify(to_terminal(N), 1, "groupoid", budget)
        if not v.ok:
            return False, [f"nerve of {name} failed: {v.to_json()}"]
        g2 = groupoid_from_nerve(N, budget)
        iso = nerve_comparison_iso(N, g2)
        if validate_map(iso) or not iso.is_levelwise_bijective():
            return False, [f"round-trip failed for {name}"]
        lines.append(f"{name}: nerve classified, round-trip identity")
    for t in range(5):
        gpd = random_groupoid(rng)
        N = nerve(gpd, 3)
        v = classify(to_terminal(N), 1, "groupoid", budget)
        if not v.ok:
            return False, [f"random groupoid {t} failed: {v.to_json()}"]
        g2 = groupoid_from_nerve(N, budget)
        iso = nerve_comparison_iso(N, g2)
        if validate_map(iso) or not iso.is_levelwise_bijective():
            return False, [f"random groupoid {t} round-trip failed"]
        lines.append(f"random groupoid #{t}: ok")
    return True, lines


def suite_moore(seed: int, budget=DEFAULT_BUDGET):
    rng = random.Random(seed)
    lines = []
    fixtures = [
        ("K(Z/2,1)", em_space(cyclic(2), 1, 4, budget).simplicial_group(), 2),
        ("K(Z/3,1)", em_space(cyclic(3), 1, 4, budget).simplicial_group(), 2),
        ("constant S3", constant_simplicial_group(symmetric(3), 4), 1),
    ]
    for name, G, strict_n in fixtures:
        X = G.sset
        for k in range(1, 4):
            for i in range(k + 1):
                car = absolute_horn_object(X, k, i, budget)
                for faces, _ in car.elements:
                    horn = [None] * (k + 1)
                    for pos, j in enumerate([j for j in range(k + 1) if j != i]):
                        horn[j] = faces[pos]
                    seed_el = rng.randrange(G.groups[k].order)
                    fill = moore_fill(G, k, i, horn, seed_el)
                    brute = brute_force_fillers(G, k, i, horn)
                    if fill not in brute:
                        return False, [f"{name}: bad filler at k={k}, i={i}, horn={horn}"]
                    if k >= strict_n and len(brute) != 1:
                        return False, [f"{name}: filler not unique at k={k}, i={i}"]
        v = classify_strict(G, strict_n, budget)
        if not v.ok_at_stored:
            return False, [f"{name}: strict {strict_n}-group test failed"]
        lines.append(f"{name}: all horns k<=3 filled, fillers match brute force")
    return True, lines


def suite_wbar(seed: int, budget=DEFAULT_BUDGET):
    lines = []
    for name, G in small_group_catalog(8):
        sg = constant_simplicial_group(G, 4)
        WB = w_bar(sg, 4, budget)
        N = nerve(as_groupoid(G), 4)
        if WB.sizes != N.sizes:
            return False, [f"w_bar({name}) has wrong level sizes"]
        isos = find_isos(to_terminal(WB), to_terminal(N), limit=1, budget=budget)
        if not isos or validate_map(isos[0]):
            return False, [f"w_bar({name}) not isomorphic to the nerve"]
        lines.append(f"w_bar({name}) = nerve, levelwise")
    iso, _, _, WB = wbar_em_iso(cyclic(2), 1, 4, budget)
    if WB.sizes != (1, 1, 2, 8, 64):
        return False, ["W-bar K(Z/2,1) has wrong sizes"]
    lines.append("W-bar K(Z/2,1) = K(Z/2,2): sizes (1,1,2,8,64), iso verified")
    iso3, _, _, WB3 = wbar_em_iso(cyclic(3), 1, 3, budget)
    lines.append("W-bar K(Z/3,1) = K(Z/3,2): iso verified levelwise")
    sg = constant_simplicial_group(cyclic(2), 4)
    ub = universal_bundle(sg, 4, budget)
    if validate_presentation(ub):
        return False, ["universal bundle presentation invalid"]
    if pi0(ub.total).count != 1:
        return False, ["W G is not connected"]
    for k in (1, 2, 3):
        for i in range(k + 1):
            wbar_horn_iso(sg, k, i, budget)
    lines.append("universal bundle and horn decompositions verified for Z/2")
    return True, lines


def suite_join(seed: int, budget=DEFAULT_BUDGET):
    import itertools

    lines = []
    for n in range(1, 5):
        for r in range(1, n + 1):
            for J in itertools.combinations(range(n + 1), r):
                cert = is_collapsible(generalized_horn(n, J), budget)
                if cert is None:
                    return False, [f"Lambda^{n}_{J} not collapsible"]
                target = _nondeg_closure(generalized_horn(n, J))
                if replay_certificate(cert) != target:
                    return False, [f"certificate replay failed for Lambda^{n}_{J}"]
        lines.append(f"all generalized horns of Delta^{n} collapsible, certificates replay")
    from .shapes import materialize

    A, _ = materialize(standard_simplex(1), 1)
    B, _ = materialize(standard_simplex(1), 1)
    j2 = join(A, B)
    full, _ = materialize(standard_simplex(3), 3)
    if j2.sizes != full.sizes or validate(j2):
        return False, ["Delta^1 * Delta^1 is not Delta^3"]
    lines.append("joins of simplices have ordinal-sum sizes")
    return True, lines


def suite_strictify(seed: int, budget=DEFAULT_BUDGET):
    lines = []
    C, aug = cech_nerve((0, 0, 1, 1, 2), 3, 4)
    s, rep = strictify_hypercover_check(aug, 1, budget)
    if not tn_inverse_laws(s):
        return False, ["section identities failed on the Cech fixture"]
    lines.append("Cech hypercover: tau_1 checks (a),(b),(c) and section identities")
    from .kan import nerve as _nerve
    from .groups import as_groupoid as _as_gpd

    N = _nerve(_as_gpd(cyclic(3)), 4)
    from .sset import identity_map

    s2 = strictify(identity_map(N), 2, budget)
    if not s2.comparison.is_levelwise_bijective():
        return False, ["tau_2(id) is not the identity on a 2-stack"]
    lines.append("tau_n(f) = f for n-stacks")
    return True, lines


def suite_descent(seed: int, budget=DEFAULT_BUDGET):
    lines = []
    Z2 = cyclic(2)
    span0 = group_cocycle_as_span(Z2, Z2, 3, {}, 4, budget)
    span1 = group_cocycle_as_span(Z2, Z2, 3, {(1, 1, 1): 1}, 4, budget)
    r0 = descend(span0, budget)
    r1 = descend(span1, budget)
    for tag, r in (("c=0", r0), ("c=abc", r1)):
        if r.two_group.sizes[:3] != (1, 2, 8) or not r.groupoid_verdict.ok:
            return False, [f"{tag}: bad 2-group"]
        tg = extract_two_group_data(r, budget)
        if not (tg.pentagon_ok and tg.torsor_ok):
            return False, [f"{tag}: extraction failed"]
        lines.append(f"{tag}: levels {r.two_group.sizes}, 2-group, pentagon holds")
    if find_isos(r0.tau_map, r1.tau_map, limit=1, budget=budget):
        return False, ["twisted and untwisted outputs are isomorphic over the base"]
    lines.append("c=0 and c=abc outputs are non-isomorphic over W-bar G")
    return True, lines


SUITES = {
    "grothendieck": suite_grothendieck,
    "moore": suite_moore,
    "wbar": suite_wbar,
    "join": suite_join,
    "strictify": suite_strictify,
    "descent": suite_descent,
}
