"""JSON interchange for simplicial sets, maps, groups, cocycles and reports.

All arrays are 0-indexed and ids are positions; face and degeneracy tables
are keyed "k,i".  Maps and cocycles may reference other documents by path
(resolved relative to the referencing file) or inline them.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .groups import FinGroup, SimplicialGroup, group_from_table
from .sset import SimplicialMap, TruncatedSSet, make_sset


def sset_to_json(x: TruncatedSSet) -> dict:
    return {
        "truncation": x.dim,
        "coskeletal_above": x.coskeletal_above,
        "levels": list(x.sizes),
        "faces": {
            f"{k},{i}": list(x.faces[k][i]) for k in range(1, x.dim + 1) for i in range(k + 1)
        },
        "degeneracies": {
            f"{k},{i}": list(x.degeneracies[k][i]) for k in range(x.dim) for i in range(k + 1)
        },
    }


def sset_from_json(doc: dict) -> TruncatedSSet:
    try:
        D = int(doc["truncation"])
        sizes = [int(v) for v in doc["levels"]]
        if len(sizes) != D + 1:
            raise InputError("levels array does not match truncation degree")
        faces = [[] for _ in range(D + 1)]
        for k in range(1, D + 1):
            faces[k] = [doc["faces"][f"{k},{i}"] for i in range(k + 1)]
        degs = [[] for _ in range(D + 1)]
        for k in range(D):
            degs[k] = [doc["degeneracies"][f"{k},{i}"] for i in range(k + 1)]
        flag = doc.get("coskeletal_above")
        return make_sset(sizes, faces, degs, None if flag is None else int(flag))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed simplicial set document: {exc}") from exc


def _resolve(ref, base: Path | None, loader):
    if isinstance(ref, str):
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        with open(path) as fh:
            return loader(json.load(fh), path.parent)
    return loader(ref, base)


def map_to_json(f: SimplicialMap) -> dict:
    return {
        "source": sset_to_json(f.source),
        "target": sset_to_json(f.target),
        "components": [list(c) for c in f.components],
    }


def map_from_json(doc: dict, base: Path | None = None) -> SimplicialMap:
    try:
        src = _resolve(doc["source"], base, lambda d, b: sset_from_json(d))
        tgt = _resolve(doc["target"], base, lambda d, b: sset_from_json(d))
        comps = tuple(tuple(int(v) for v in row) for row in doc["components"])
        return SimplicialMap(src, tgt, comps)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed map document: {exc}") from exc


def group_to_json(G: FinGroup) -> dict:
    return {
        "order": G.order,
        "mul": [list(r) for r in G.mul],
        "inv": list(G.inv),
        "e": G.e,
        "abelian": G.abelian,
    }


def group_from_json(doc: dict) -> FinGroup:
    try:
        G = group_from_table(doc["mul"], abelian=doc.get("abelian"))
        if G.e != doc.get("e", G.e) or list(G.inv) != list(doc.get("inv", G.inv)):
            raise InputError("stated identity or inverses disagree with the table")
        return G
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed group document: {exc}") from exc


def simplicial_group_to_json(G: SimplicialGroup) -> dict:
    doc = sset_to_json(G.sset)
    doc["groups"] = [group_to_json(g) for g in G.groups]
    return doc


def simplicial_group_from_json(doc: dict) -> SimplicialGroup:
    sset = sset_from_json(doc)
    groups = tuple(group_from_json(g) for g in doc["groups"])
    if len(groups) != sset.dim + 1:
        raise InputError("one group per level required")
    return SimplicialGroup(sset, groups)


def parse_cocycle_key(key: str) -> tuple[int, ...]:
    cleaned = key.strip().strip("()")
    if not cleaned:
        return ()
    return tuple(int(v) for v in cleaned.split(","))


def cocycle_to_json(G: FinGroup, A: FinGroup, n: int, c: dict) -> dict:
    return {
        "group": group_to_json(G),
        "abelian": group_to_json(A),
        "n": n,
        "values": {"(" + ",".join(map(str, k)) + ")": v for k, v in sorted(c.items()) if v != A.e},
    }


def cocycle_from_json(doc: dict, base: Path | None = None):
    try:
        G = _resolve(doc["group"], base, lambda d, b: group_from_json(d))
        A = _resolve(doc["abelian"], base, lambda d, b: group_from_json(d))
        n = int(doc["n"])
        values = {parse_cocycle_key(k): int(v) for k, v in doc.get("values", {}).items()}
        return G, A, n, values
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed cocycle document: {exc}") from exc


def two_group_data_to_json(tg) -> dict:
    return {
        "cover": list(tg.cover),
        "base_levels": list(tg.base_sizes),
        "fibers": [list(f) for f in tg.fibers],
        "action": [list(r) for r in tg.action],
        "section": list(tg.section),
        "zeta": list(tg.zeta),
        "pentagon_ok": tg.pentagon_ok,
        "torsor_ok": tg.torsor_ok,
    }


def dump(doc, path=None) -> str:
    text = json.dumps(doc, sort_keys=True, indent=1)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load(path: str):
    with open(path) as fh:
        return json.load(fh), Path(path).parent
