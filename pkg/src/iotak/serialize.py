"""JSON complex files.

A complex file carries a name, the generator list with both gradings,
and the differential and involution as sparse entry lists; monomials are
[i, j] exponent pairs with U first. Emission is canonical (entries
sorted by source then target, monomials in ring order), so emit, parse,
emit round-trips byte-identically.
"""

from __future__ import annotations

import json
from typing import Dict, List

from .complexes import SKEW, BasisElement, Entries, FreeComplex, Morphism
from .iota import IotaComplex
from .ring import LaurentPoly


class ParseError(ValueError):
    pass


def _entries_to_list(entries: Entries, basis) -> List[Dict]:
    out = []
    for i in sorted(entries):
        for j in sorted(entries[i]):
            poly = entries[i][j]
            if poly:
                out.append({
                    "from": basis[i].name,
                    "to": basis[j].name,
                    "mono": [[a, b] for (a, b) in poly.terms],
                })
    return out


def iota_complex_to_dict(name: str, ic: IotaComplex) -> Dict:
    cx = ic.complex
    return {
        "name": name,
        "generators": [
            {"name": x.name, "gr_u": x.gr_u, "gr_v": x.gr_v} for x in cx.basis
        ],
        "differential": _entries_to_list(cx.diff, cx.basis),
        "iota": _entries_to_list(ic.iota.entries, cx.basis),
    }


def dumps(doc: Dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _parse_entries(items, index, what: str) -> Entries:
    entries: Entries = {}
    for item in items:
        try:
            src = index[item["from"]]
            tgt = index[item["to"]]
            mono = item["mono"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad {what} entry: {item!r}") from exc
        if not isinstance(mono, list) or not all(
            isinstance(m, list) and len(m) == 2 and all(isinstance(e, int) for e in m)
            for m in mono
        ):
            raise ParseError(f"bad monomial list in {what} entry {item['from']} -> {item['to']}")
        poly = LaurentPoly((a, b) for a, b in mono)
        if tgt in entries.get(src, {}):
            raise ParseError(f"duplicate {what} entry {item['from']} -> {item['to']}")
        entries.setdefault(src, {})[tgt] = poly
    return entries


def iota_complex_from_dict(doc: Dict) -> tuple[str, IotaComplex]:
    if not isinstance(doc, dict):
        raise ParseError("complex file must be a JSON object")
    try:
        name = doc["name"]
        gens = doc["generators"]
        diff_items = doc["differential"]
        iota_items = doc["iota"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field: {exc}") from exc
    basis = []
    for g in gens:
        try:
            basis.append(BasisElement(g["name"], int(g["gr_u"]), int(g["gr_v"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad generator: {g!r}") from exc
    names = [b.name for b in basis]
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator names")
    index = {n: i for i, n in enumerate(names)}
    diff = _parse_entries(diff_items, index, "differential")
    iota_entries = _parse_entries(iota_items, index, "iota")
    cx = FreeComplex(basis, diff, filtered=True)
    iota = Morphism(cx, cx, iota_entries, SKEW, (0, 0))
    return str(name), IotaComplex(cx, iota)


def save(path: str, name: str, ic: IotaComplex) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(iota_complex_to_dict(name, ic)))


def load(path: str) -> tuple[str, IotaComplex]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return iota_complex_from_dict(doc)


def morphism_to_list(m: Morphism) -> List[Dict]:
    out = []
    for i in sorted(m.entries):
        for j in sorted(m.entries[i]):
            poly = m.entries[i][j]
            if poly:
                out.append({
                    "from": m.source.basis[i].name,
                    "to": m.target.basis[j].name,
                    "mono": [[a, b] for (a, b) in poly.terms],
                })
    return out
