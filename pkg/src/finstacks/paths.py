"""Relative higher morphism spaces P^{>=k}(f) and their matching augmentation.

The carrier is materialized as a subset of the shifted levels of the source:
an l-simplex is x in X_{k+l} whose image downstairs is degenerate along the
last l vertices and whose lower faces are degenerate along the last l
vertices one level down.  Structure maps are the source's own, at index
offset k.  The join-cotensor description is kept as an independent
membership test that the subset model is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DEFAULT_BUDGET, InputError, InvariantViolation
from .joins import AugmentedSSet
from .kan import INF, Carrier, Verdict, classify, match_object
from .sset import SimplicialMap, TruncatedSSet, evaluate_at, make_sset


def _collapses(X: TruncatedSSet, base: int, l: int, z: int) -> bool:
    """z in X_{base+l} equals the l-fold degeneracy of its front collapse."""
    w, lvl = z, base + l
    for idx in range(base + l - 1, base - 1, -1):
        w = X.face(lvl, idx, w)
        lvl -= 1
    for idx in range(base, base + l):
        w = X.deg(lvl, idx, w)
        lvl += 1
    return w == z


def _collapse_to(X: TruncatedSSet, base: int, l: int, z: int) -> int:
    w, lvl = z, base + l
    for idx in range(base + l - 1, base - 1, -1):
        w = X.face(lvl, idx, w)
        lvl -= 1
    return w


@dataclass
class PathSpace:
    f: SimplicialMap
    k: int
    carrier: TruncatedSSet
    members: list[list[int]]  # per level l: ids into X_{k+l}
    member_index: list[dict]
    stack_verdict: Verdict | None = None

    def embed(self, l: int, z: int) -> int:
        return self.members[l][z]


def in_path_space(f: SimplicialMap, k: int, l: int, x: int) -> bool:
    """Membership of x in P^{>=k}(f)_l, by the explicit subset description."""
    X, Y = f.source, f.target
    if not _collapses(Y, k, l, f.components[k + l][x]):
        return False
    for i in range(k):
        if not _collapses(X, k - 1, l, X.face(k + l, i, x)):
            return False
    return True


def path_space(f: SimplicialMap, k: int, D: int = 2, budget=DEFAULT_BUDGET,
               check_stack: bool = True) -> PathSpace:
    """P^{>=k}(f) up to level D; needs source data to level k + D."""
    X, Y = f.source, f.target
    if X.dim < k + D or Y.dim < k + D:
        raise InputError(f"path_space: need {k + D} stored levels")
    verdict = None
    if check_stack:
        verdict = classify(f, INF, "stack", budget)

    members = []
    member_index = []
    for l in range(D + 1):
        lv = [x for x in X.level(k + l) if in_path_space(f, k, l, x)]
        members.append(lv)
        member_index.append({x: i for i, x in enumerate(lv)})
    sizes = [len(lv) for lv in members]
    faces: list = [[]]
    for l in range(1, D + 1):
        rows = []
        for i in range(l + 1):
            row = []
            for x in members[l]:
                y = X.face(k + l, k + i, x)
                if y not in member_index[l - 1]:
                    raise InvariantViolation("path space not closed under faces")
                row.append(member_index[l - 1][y])
            rows.append(row)
        faces.append(rows)
    degs = []
    for l in range(D):
        rows = []
        for i in range(l + 1):
            row = []
            for x in members[l]:
                y = X.deg(k + l, k + i, x)
                if y not in member_index[l + 1]:
                    raise InvariantViolation("path space not closed under degeneracies")
                row.append(member_index[l + 1][y])
            rows.append(row)
        degs.append(rows)
    degs.append([])
    # no coskeletal flag: cutting a subobject out of shifted levels preserves
    # boundary-injectivity above the source's flag but not surjectivity
    carrier = make_sset(sizes, faces, degs)
    from .sset import validate

    report = validate(carrier)
    if report:
        raise InvariantViolation("path space carrier invalid: " + report[0])
    return PathSpace(f, k, carrier, members, member_index, verdict)


def in_path_space_join_model(f: SimplicialMap, k: int, l: int, x: int) -> bool:
    """Membership via the join-cotensor pullback definition.

    x in X_{k+l} = hom(Delta^{k-1} * Delta^l, X) belongs to the pullback iff
    its restriction along boundary(Delta^{k-1}) * Delta^l, together with the
    image downstairs, equals the degenerate image of a relative k-horn: the
    evaluation at every simplex of the generalized horn Lambda_{0..k-1} must
    factor through the vertex collapse.
    """
    from .shapes import generalized_horn

    X, Y = f.source, f.target
    n = k + l
    xc = _collapse_to(X, k, l, x)
    if not _collapses(Y, k, l, f.components[n][x]):
        return False
    if _collapse_to(Y, k, l, f.components[n][x]) != f.components[k][xc]:
        return False
    if k == 0 or l == 0:
        return True
    # boundary(Delta^{k-1}) * Delta^l is the generalized horn on the first k
    # faces; the restriction of x there must factor through the collapse
    horn_shape = generalized_horn(n, tuple(range(k)))
    for m in range(horn_shape.dim + 1):
        for t in horn_shape.nondeg_simplices(m):
            lhs = evaluate_at(X, n, x, t)
            rhs = evaluate_at(X, k, xc, tuple(v if v < k else k for v in t))
            if lhs != rhs:
                return False
    return True


def augment_to_matching(p: PathSpace, budget=DEFAULT_BUDGET):
    """Natural augmentation pi: P^{>=k}(f) -> M_k(f); mu_k on vertices."""
    M = match_object(p.f, p.k, budget)
    values = tuple(M.comparison[x] for x in p.members[0])
    aug = AugmentedSSet(p.carrier, len(M), values)
    from .joins import validate_augmented

    report = validate_augmented(aug)
    if report:
        raise InvariantViolation("path-space augmentation: " + report[0])
    return aug, M
