"""On-disk cache of subgroup class tables and tables of marks.

Entries are keyed by a SHA-256 of the normalized group description.  A cached
table is trusted only after re-validation: every representative must be a
subgroup, the listed classes must contain all cyclic subgroups and be closed
under joins with them (which forces completeness), the canonical order must
be reproduced and the stored marks must match.  Anything else triggers
recomputation and the entry is rewritten.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from .errors import EqobsError
from .groups import (DEFAULT_MAX_SUBGROUP_ORDER, PermGroup, Subgroup, SubgroupClassTable, _close_indices,
                     install_class_table, normalize_description, subgroup_classes, table_of_marks)

log = logging.getLogger(__name__)

ENV_VAR = "EQOBS_CACHE_DIR"


def cache_dir(override: str | None = None) -> Path | None:
    path = override or os.environ.get(ENV_VAR)
    return Path(path) if path else None


def cache_key(desc: str) -> str:
    return hashlib.sha256(normalize_description(desc).encode()).hexdigest()[:32]


def _validated_table(G: PermGroup, entry: dict) -> SubgroupClassTable:
    if entry.get("order") != G.order:
        raise EqobsError("cached group order differs")
    reps = []
    for perms in entry["classes"]:
        H = Subgroup(G, (G.index(tuple(p)) for p in perms))
        if not H.is_group():
            raise EqobsError("cached representative is not a subgroup")
        reps.append(H)
    table = SubgroupClassTable(G, reps)
    if [list(map(list, H.perms)) for H in table.classes] != entry["classes"]:
        raise EqobsError("cached classes are not in canonical order")
    T = G._mult_lists
    cyclic = {_close_indices(T, {0}, [g]): g for g in range(G.order)}
    for c in cyclic:
        table.class_of(c)
    for H in table.classes:
        gens = [G.index(p) for p in H.generators()]
        for g in cyclic.values():
            if g not in H.members:
                table.class_of(_close_indices(T, H.members, gens + [g]))
    return table


def load_or_compute(G: PermGroup, desc: str, directory: Path | None,
                    max_order: int = DEFAULT_MAX_SUBGROUP_ORDER) -> SubgroupClassTable:
    """Attach a class table to ``G``, from the cache if a valid entry exists."""
    if directory is None:
        return subgroup_classes(G, max_order)
    path = directory / f"{cache_key(desc)}.json"
    if path.exists():
        try:
            entry = json.loads(path.read_text())
            table = _validated_table(G, entry)
            if G._classes is None:
                install_class_table(G, table)
            if [list(r) for r in table_of_marks(G)] != entry["marks"]:
                raise EqobsError("cached marks differ")
            return G.classes
        except (EqobsError, KeyError, TypeError, ValueError) as exc:
            log.warning("discarding corrupt cache entry %s: %s", path, exc)
            G._classes = None
    table = subgroup_classes(G, max_order)
    entry = {
        "description": normalize_description(desc),
        "order": G.order,
        "classes": [list(map(list, H.perms)) for H in table.classes],
        "marks": table_of_marks(G),
    }
    try:
        directory.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(entry))
        tmp.replace(path)
    except OSError as exc:
        log.warning("cannot write cache entry %s: %s", path, exc)
    return table
