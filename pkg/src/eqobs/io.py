"""JSON documents for germs, varieties and form data.

Germ document::

    {"group": "cyclic:2", "ambient_dim": 2,
     "strata": [{"id": "x", "dim": 0, "isotropy": [[1, 0]]},
                {"id": "reg", "dim": 1, "isotropy": []}],
     "order": [["x", "reg"]], "top": "reg",
     "eu_table": [{"lower": "x", "upper": "reg", "value": 2}],
     "form_data": [{"stratum": "reg", "orbits": [{"index": 3}]}],
     "flavor": "complex"}

A variety document adds ``quotient_euler`` to every stratum and ``kind``
("compact" or "affine").  Isotropy groups are generator lists; an empty list
is the trivial group.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .errors import EqobsError, ValidationError
from .globalcalc import CompactStratVariety, GlobalFormData, GlobalStratum
from .groups import DEFAULT_MAX_GROUP_ORDER, describe, generate_group
from .local import FormSingularityData, Orbit, StratumRecord
from .poset import StratGermData, Stratum

_ID = {"type": ["string", "integer"]}
_PERM_LIST = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}

GERM_SCHEMA = {
    "type": "object",
    "required": ["group", "strata", "top"],
    "properties": {
        "group": {"type": "string"},
        "ambient_dim": {"type": "integer", "minimum": 0},
        "strata": {
            "type": "array", "minItems": 1,
            "items": {
                "type": "object", "required": ["id", "dim"],
                "properties": {"id": _ID, "dim": {"type": "integer", "minimum": 0},
                               "isotropy": _PERM_LIST, "quotient_euler": {"type": "integer"}},
            },
        },
        "order": {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}},
        "top": _ID,
        "eu_table": {
            "type": "array",
            "items": {"type": "object", "required": ["lower", "upper", "value"],
                      "properties": {"lower": _ID, "upper": _ID, "value": {"type": "integer"}}},
        },
        "form_data": {
            "type": "array",
            "items": {
                "type": "object", "required": ["stratum", "orbits"],
                "properties": {
                    "stratum": _ID,
                    "orbits": {"type": "array", "items": {
                        "type": "object", "required": ["index"],
                        "properties": {"index": {"type": "integer"}, "isotropy": _PERM_LIST}}},
                },
            },
        },
        "flavor": {"enum": ["real", "complex"]},
    },
}

VARIETY_SCHEMA = json.loads(json.dumps(GERM_SCHEMA))
VARIETY_SCHEMA["properties"]["strata"]["items"]["required"] = ["id", "dim", "quotient_euler"]
VARIETY_SCHEMA["properties"]["kind"] = {"enum": ["compact", "affine"]}


class SchemaError(EqobsError):
    pass


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EqobsError(f"{path}: cannot read file: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _check_schema(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"schema violation at {where}: {exc.message}") from None


def _subgroup(G, gens, where):
    try:
        return G.subgroup([tuple(g) for g in gens])
    except EqobsError as exc:
        raise ValidationError([f"{where}: {exc}"]) from None


def _relations(doc):
    return [tuple(p) for p in doc.get("order", [])]


def _eu(doc):
    return {(e["lower"], e["upper"]): e["value"] for e in doc.get("eu_table", [])}


def _records(G, doc, strata_by_id):
    records = []
    for n, rec in enumerate(doc.get("form_data", [])):
        sid = rec["stratum"]
        orbits = []
        for m, orb in enumerate(rec["orbits"]):
            if "isotropy" in orb:
                iso = _subgroup(G, orb["isotropy"], f"form_data/{n}/orbits/{m}/isotropy")
            elif sid in strata_by_id:
                iso = strata_by_id[sid].isotropy
            else:
                raise ValidationError([f"form data refers to unknown stratum {sid!r}"])
            orbits.append(Orbit(orb["index"], iso))
        records.append(StratumRecord(sid, tuple(orbits)))
    return records


def load_germ(doc, max_group_order: int = DEFAULT_MAX_GROUP_ORDER):
    """Return ``(germ, form)``; ``form`` is ``None`` when the document has no ``form_data``."""
    if not isinstance(doc, dict):
        doc = read_json(doc)
    _check_schema(doc, GERM_SCHEMA)
    G = generate_group(doc["group"], max_order=max_group_order)
    strata = [Stratum(s["id"], s["dim"], _subgroup(G, s.get("isotropy", []), f"strata/{n}/isotropy"))
              for n, s in enumerate(doc["strata"])]
    germ = StratGermData(G, strata, _relations(doc), doc["top"], _eu(doc), ambient_dim=doc.get("ambient_dim"))
    form = None
    if "form_data" in doc:
        form = FormSingularityData(germ, _records(G, doc, {s.id: s for s in strata}),
                                   flavor=doc.get("flavor", "complex"))
    return germ, form


def load_variety(doc, max_group_order: int = DEFAULT_MAX_GROUP_ORDER):
    """Return ``(variety, form)`` for a variety document."""
    if not isinstance(doc, dict):
        doc = read_json(doc)
    _check_schema(doc, VARIETY_SCHEMA)
    G = generate_group(doc["group"], max_order=max_group_order)
    strata = [GlobalStratum(s["id"], s["dim"], _subgroup(G, s.get("isotropy", []), f"strata/{n}/isotropy"),
                            s["quotient_euler"])
              for n, s in enumerate(doc["strata"])]
    variety = CompactStratVariety(G, strata, _relations(doc), doc["top"], _eu(doc),
                                  kind=doc.get("kind", "compact"), ambient_dim=doc.get("ambient_dim"))
    form = None
    if "form_data" in doc:
        form = GlobalFormData(variety, _records(G, doc, {s.id: s for s in strata}))
    return variety, form


def _gens(H):
    return [list(p) for p in H.generators()]


def dump_germ(germ: StratGermData, form=None, group_desc: str | None = None) -> dict:
    """Serialize a germ (or variety) and optional form data to a JSON-ready dict."""
    doc = {"group": group_desc or describe(germ.group)}
    if germ.ambient_dim is not None:
        doc["ambient_dim"] = germ.ambient_dim
    strata = []
    for s in germ.strata:
        entry = {"id": s.id, "dim": s.dim, "isotropy": _gens(s.isotropy)}
        if isinstance(s, GlobalStratum):
            entry["quotient_euler"] = s.quotient_euler
        strata.append(entry)
    doc["strata"] = strata
    doc["order"] = [list(r) for r in germ.relations]
    doc["top"] = germ.top
    doc["eu_table"] = [{"lower": i, "upper": j, "value": v} for (i, j), v in germ.eu.items() if i != j]
    if isinstance(germ, CompactStratVariety):
        doc["kind"] = germ.kind
    if form is not None:
        doc["form_data"] = [
            {"stratum": rec.stratum, "orbits": [{"index": o.index, "isotropy": _gens(o.isotropy)} for o in rec.orbits]}
            for rec in form.records
        ]
        if isinstance(form, FormSingularityData):
            doc["flavor"] = form.flavor
    return doc
