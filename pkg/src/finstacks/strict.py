"""Duskin n-strictification of an infinity-stack over finite sets.

Level n of tau_n(X,f) is the orbit set of the relative morphism space
P^{>=n}(f), computed directly by union-find; level n+1 is the relative horn
carrier Lambda^{n+1}_1 of the n-truncated quotient map, whose missing face
d_1 is obtained by lifting through the source and pushing along the
quotient; level n+2 is the relative matching carrier, realizing the
coskeletal fiber-product assembly.  Well-definedness of every choice made
through representatives or lifts is checked exhaustively and surfaced as an
invariant violation, never averaged away.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DEFAULT_BUDGET, InputError, InvariantViolation
from .kan import INF, Carrier, classify, relative_carrier
from .paths import PathSpace, path_space
from .sset import (
    Pi0,
    SimplicialMap,
    TruncatedSSet,
    coskeleton,
    make_sset,
    pi0,
    pullback,
    truncate,
    validate,
    validate_map,
)


@dataclass
class Strictification:
    f: SimplicialMap
    n: int
    path: PathSpace
    quotient: Pi0
    source: TruncatedSSet
    assembled: SimplicialMap
    comparison: SimplicialMap
    carrier: Carrier
    matching: Carrier
    missing_face_values: tuple[int, ...]

    @property
    def q(self) -> tuple[int, ...]:
        return self.quotient.quotient


def _well_defined(pairs, what):
    table = {}
    for key, value in pairs:
        if table.setdefault(key, value) != value:
            raise InvariantViolation(f"{what} is not well defined at {key}")
    return table


def strictify(f: SimplicialMap, n: int, budget=DEFAULT_BUDGET) -> Strictification:
    X, Y = f.source, f.target
    if X.dim < n + 2 or Y.dim < n + 2:
        raise InputError(f"strictify: need {n + 2} stored levels")
    verdict = classify(f, INF, "stack", budget)
    if not verdict.ok_at_stored:
        raise InputError(f"strictify: input is not a stack on stored levels: {verdict.to_json()}")

    P = path_space(f, n, 2, budget, check_stack=False)
    if P.members[0] != list(X.level(n)):
        raise InvariantViolation("path space vertices are not the n-simplices")
    quot = pi0(P.carrier)
    q = quot.quotient
    classes = quot.classes()
    reps = [cls[0] for cls in classes]

    # induced map and faces on the quotient level; checked over all members
    fbar = _well_defined(
        ((q[x], f.components[n][x]) for x in X.level(n)), "quotient image downstairs"
    )
    fbar = tuple(fbar[c] for c in range(quot.count))
    face_n = []
    if n >= 1:
        for i in range(n + 1):
            tab = _well_defined(
                ((q[x], X.face(n, i, x)) for x in X.level(n)), f"face d_{i} on the quotient"
            )
            face_n.append(tuple(tab[c] for c in range(quot.count)))

    sizes = list(X.sizes[:n]) + [quot.count]
    faces = [list(map(list, X.faces[k])) for k in range(n)]
    if n >= 1:
        faces.append(list(map(list, face_n)))
    else:
        faces = [[]]
    degs = [list(map(list, X.degeneracies[k])) for k in range(n - 1)]
    if n >= 1:
        degs.append([[q[X.deg(n - 1, i, x)] for x in X.level(n - 1)] for i in range(n)])
    degs.append([])
    tau_n = make_sset(sizes, faces, degs)
    tau_map_n = SimplicialMap(tau_n, Y, tuple(f.components[:n]) + (fbar,))

    # level n+1: relative Lambda^{n+1}_1 horns of the truncated quotient map
    positions1 = tuple(j for j in range(n + 2) if j != 1)
    carrier = relative_carrier(tau_map_n, n + 1, positions1, budget)

    # missing face map d_1 via lifts through X_{n+1}
    lifts: dict[int, list[int]] = {}
    for x in X.level(n + 1):
        key = (tuple(q[X.face(n + 1, j, x)] for j in positions1), f.components[n + 1][x])
        lifts.setdefault(carrier.index[key], []).append(x)
    d1 = []
    for cid in range(len(carrier)):
        xs = lifts.get(cid)
        if not xs:
            raise InvariantViolation("relative horn of the quotient map has no lift")
        vals = {q[X.face(n + 1, 1, x)] for x in xs}
        if len(vals) != 1:
            raise InvariantViolation(f"missing face map not well defined on element {cid}")
        d1.append(vals.pop())
    d1 = tuple(d1)

    sizes.append(len(carrier))
    face_rows = []
    for j in range(n + 2):
        if j == 1:
            face_rows.append(list(d1))
        else:
            pos = positions1.index(j)
            face_rows.append([el[0][pos] for el in carrier.elements])
    faces.append(face_rows)
    deg_rows = []
    for i in range(n + 1):
        tab = {}
        for x in X.level(n):
            sx = X.deg(n, i, x)
            key = (tuple(q[X.face(n + 1, j, sx)] for j in positions1), f.components[n + 1][sx])
            tab.setdefault(q[x], carrier.index[key])
            if tab[q[x]] != carrier.index[key]:
                raise InvariantViolation(f"degeneracy s_{i} into level n+1 not well defined")
        deg_rows.append([tab[c] for c in range(quot.count)])
    degs[n] = deg_rows
    degs.append([])

    tau_n1 = make_sset(sizes, faces, degs)
    tau_map_n1 = SimplicialMap(
        tau_n1, Y, tuple(f.components[:n]) + (fbar, tuple(el[1] for el in carrier.elements))
    )

    # level n+2: relative matching carrier = coskeletal fiber-product level
    matching = relative_carrier(tau_map_n1, n + 2, tuple(range(n + 3)), budget)
    sizes.append(len(matching))
    faces.append([[el[0][j] for el in matching.elements] for j in range(n + 3)])
    deg_rows = []
    tau_faces_n1 = face_rows
    for i in range(n + 2):
        row = []
        for t in range(len(carrier)):
            tup = []
            for j in range(n + 3):
                if j < i:
                    tup.append(tau_n1.deg(n, i - 1, tau_faces_n1[j][t]) if n >= 0 else t)
                elif j in (i, i + 1):
                    tup.append(t)
                else:
                    tup.append(tau_n1.deg(n, i, tau_faces_n1[j - 1][t]))
            y = Y.deg(n + 1, i, tau_map_n1.components[n + 1][t])
            key = (tuple(tup), y)
            if key not in matching.index:
                raise InvariantViolation("degeneracy into the coskeletal level missing")
            row.append(matching.index[key])
        deg_rows.append(row)
    degs[n + 1] = deg_rows
    degs.append([])

    flag = None
    if Y.coskeletal_above is not None and Y.coskeletal_above <= n + 1:
        flag = n + 1
    source = make_sset(sizes, faces, degs, flag)
    report = validate(source)
    if report:
        raise InvariantViolation("assembled strictification invalid: " + report[0])

    assembled = SimplicialMap(
        source,
        Y,
        tuple(f.components[:n])
        + (fbar, tuple(el[1] for el in carrier.elements), tuple(el[1] for el in matching.elements)),
    )
    report = validate_map(assembled)
    if report:
        raise InvariantViolation("assembled strictification map invalid: " + report[0])

    comp = [tuple(range(X.sizes[k])) for k in range(n)]
    comp.append(tuple(q))
    row = []
    for x in X.level(n + 1):
        key = (tuple(q[X.face(n + 1, j, x)] for j in positions1), f.components[n + 1][x])
        row.append(carrier.index[key])
    comp.append(tuple(row))
    row2 = []
    for x in X.level(n + 2):
        key = (tuple(comp[n + 1][X.face(n + 2, j, x)] for j in range(n + 3)), f.components[n + 2][x])
        row2.append(matching.index[key])
    comp.append(tuple(row2))
    comparison = SimplicialMap(truncate(X, n + 2), source, tuple(comp))
    report = validate_map(comparison)
    if report:
        raise InvariantViolation("comparison map invalid: " + report[0])

    return Strictification(f, n, P, quot, source, assembled, comparison, carrier, matching, d1)


def missing_face(s: Strictification, i: int):
    """The function Lambda^{n+1}_i(tau_n(f)) -> tau_n(X,f)_n, with its
    exhaustive independence-of-lift verification."""
    n = s.n
    if not (0 <= i <= n + 1):
        raise InputError("missing_face: index out of range")
    X, f, q = s.f.source, s.f, s.q
    positions = tuple(j for j in range(n + 2) if j != i)
    tau_map_n = SimplicialMap(
        truncate(s.source, n), s.f.target, s.assembled.components[: n + 1]
    )
    car = relative_carrier(tau_map_n, n + 1, positions)
    lifts: dict[int, list[int]] = {}
    for x in X.level(n + 1):
        key = (tuple(q[X.face(n + 1, j, x)] for j in positions), f.components[n + 1][x])
        lifts.setdefault(car.index[key], []).append(x)
    values = []
    for cid in range(len(car)):
        xs = lifts.get(cid)
        if not xs:
            raise InvariantViolation("missing_face: horn without lift")
        vals = {q[X.face(n + 1, i, x)] for x in xs}
        if len(vals) != 1:
            raise InvariantViolation(f"missing face d_{i} not well defined on element {cid}")
        values.append(vals.pop())
    return car, tuple(values)


def tn_inverse_laws(s: Strictification) -> bool:
    """The section identities behind bijectivity of lambda^{n+1}_i(tau_n(f)).

    Checks d-hat_1 (1,d_1) = id and the two composite identities of the
    sections (1,d_1), (1,d_i) through M_{n+1}(tau_n(f)), elementwise.
    """
    n = s.n
    M = relative_carrier(
        SimplicialMap(truncate(s.source, n), s.f.target, s.assembled.components[: n + 1]),
        n + 1,
        tuple(range(n + 2)),
    )

    def section(i, car, values):
        # (1, d_i): insert the missing face value at position i
        out = []
        for eid, (faces, y) in enumerate(car.elements):
            full = list(faces)
            full.insert(i, values[eid])
            out.append(M.index[(tuple(full), y)])
        return out

    def drop(i):
        return lambda mel: (tuple(v for j, v in enumerate(mel[0]) if j != i), mel[1])

    car1, val1 = missing_face(s, 1)
    sec1 = section(1, car1, val1)
    for eid in range(len(car1)):
        mel = M.elements[sec1[eid]]
        if car1.index[drop(1)(mel)] != eid:
            return False
    for i in range(n + 2):
        cari, vali = missing_face(s, i)
        seci = section(i, cari, vali)
        for eid in range(len(cari)):
            mel = M.elements[seci[eid]]
            back1 = car1.index[drop(1)(mel)]
            if sec1[back1] != seci[eid]:
                return False
        for eid in range(len(car1)):
            mel = M.elements[sec1[eid]]
            backi = cari.index[drop(i)(mel)]
            if seci[backi] != sec1[eid]:
                return False
    return True


@dataclass
class HypercoverCheck:
    tau_is_n_hypercover: bool
    q_is_hypercover: bool
    coskeletal_formula: bool
    literal_formula_checked: bool


def strictify_hypercover_check(f: SimplicialMap, n: int, budget=DEFAULT_BUDGET) -> tuple[Strictification, HypercoverCheck]:
    """Assertions of the strictified-hypercover proposition.

    (a) tau_n(f) is an n-hypercover; (b) the comparison X -> tau_n(X,f) is a
    hypercover; (c) tau_n(X,f) is the n-coskeletal fiber product over Y -
    checked against Csk_n(X) when f is itself an n-hypercover (where the
    paper's display applies verbatim), and against Csk_n of the truncation
    of tau in general.  Failures raise, loudly.
    """
    pre = classify(f, INF, "hypercover", budget)
    if not pre.ok_at_stored:
        raise InputError(f"not a hypercover on stored levels: {pre.to_json()}")
    s = strictify(f, n, budget)
    va = classify(s.assembled, n, "hypercover", budget)
    if not va.ok_at_stored:
        raise InvariantViolation(f"tau_n(f) failed the n-hypercover test: {va.to_json()}")
    vb = classify(s.comparison, INF, "hypercover", budget)
    if not vb.ok_at_stored:
        raise InvariantViolation(f"quotient map failed the hypercover test: {vb.to_json()}")

    ok_formula = _coskeletal_formula_holds(s, use_original_source=False, budget=budget)
    if not ok_formula:
        raise InvariantViolation("tau_n(X,f) is not the coskeletal fiber product over Y")
    literal = False
    if classify(f, n, "hypercover", budget).ok_at_stored:
        literal = True
        if not _coskeletal_formula_holds(s, use_original_source=True, budget=budget):
            raise InvariantViolation("tau_n(X,f) differs from Csk_n(X) x_{Csk_n(Y)} Y")
    return s, HypercoverCheck(True, True, True, literal)


def _coskeletal_formula_holds(s: Strictification, use_original_source: bool, budget=DEFAULT_BUDGET) -> bool:
    """tau_n(X,f) = Csk_n(base) x_{Csk_n(Y)} Y for base = X or tr_n(tau)."""
    n = s.n
    Y = s.f.target
    if use_original_source:
        base = truncate(s.f.source, n)
        base_map = list(s.f.components[: n + 1])
    else:
        base = truncate(s.source, n)
        base_map = list(s.assembled.components[: n + 1])
    CskX, unitX = coskeleton(base, n, n + 2, budget)
    CskY, unitY = coskeleton(Y, n, n + 2, budget)
    comps = base_map
    for k in range(n + 1, n + 3):
        indexY = {CskY.boundary(k, z): z for z in CskY.level(k)}
        prev = comps[k - 1]
        comps.append(tuple(
            indexY[tuple(prev[CskX.face(k, j, z)] for j in range(k + 1))] for z in CskX.level(k)
        ))
    cskf = SimplicialMap(CskX, CskY, tuple(tuple(c) for c in comps))
    uY = SimplicialMap(truncate(Y, n + 2), CskY, tuple(unitY.components[: n + 3]))
    R, pr1, pr2 = pullback(cskf, uY)
    pair_index = [
        {(pr1.components[k][z], pr2.components[k][z]): z for z in R.level(k)} for k in range(n + 3)
    ]
    # canonical map tau -> R: below n+1 pair a (representative) simplex with
    # its image downstairs, above look up the boundary tuple in Csk_n(base)
    reps = [cls[0] for cls in s.quotient.classes()]
    comps_tau = []
    try:
        for k in range(n + 1):
            row = []
            for t in range(s.source.sizes[k]):
                x = reps[t] if (use_original_source and k == n) else t
                row.append(pair_index[k][(unitX.components[k][x], s.assembled.components[k][t])])
            comps_tau.append(tuple(row))
        for k in range(n + 1, n + 3):
            indexX = {CskX.boundary(k, z): z for z in CskX.level(k)}
            prev = comps_tau[k - 1]
            row = []
            for t in range(s.source.sizes[k]):
                tup = tuple(pr1.components[k - 1][prev[s.source.face(k, j, t)]] for j in range(k + 1))
                row.append(pair_index[k][(indexX[tup], s.assembled.components[k][t])])
            comps_tau.append(tuple(row))
    except KeyError:
        return False
    phi = SimplicialMap(s.source, R, tuple(comps_tau))
    return validate_map(phi) == [] and phi.is_levelwise_bijective()
