"""Random germs and varieties, and the identity checks run on them.

Case ``i`` of kind ``k`` in a run with seed ``s`` is generated from
``random.Random(f"{s}:{i}:{k}")`` alone, so any case can be replayed in
isolation and results do not depend on how cases are scheduled.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .burnside import reduce_count
from .errors import EqobsError
from .globalcalc import (chi_G, global_obstruction, nonequivariant_values as global_values,
                         orbit_level_obstruction, poincare_hopf_check, synthesize_form_data)
from .groups import A4_DESCRIPTION, generate_group
from .io import dump_germ, load_germ, load_variety
from .local import eq_euler_obstruction, eq_radial_index, germ_obstruction, nonequivariant_values, verify_theorem
from .poset import convolve, delta, eu_function, m_from_n, m_tilde, mobius, n_from_eu, zeta

FUZZ_GROUPS = ("cyclic:2", "cyclic:3", "cyclic:6", "symmetric:3", "dihedral:4", A4_DESCRIPTION)


def _gens(H):
    return [list(p) for p in H.generators()]


def _random_strata(rng, G, max_strata):
    table = G.classes
    n = rng.randint(1, max_strata)
    top_dim = rng.randint(1, 4)
    dims = sorted(rng.randint(0, top_dim - 1) for _ in range(n - 1)) + [top_dim]
    ids = [f"s{k}" for k in range(n)]
    top = ids[-1]
    relations = [[a, top] for a in ids[:-1]]
    for a in range(n - 1):
        for b in range(a + 1, n - 1):
            if dims[a] < dims[b] and rng.random() < 0.5:
                relations.append([ids[a], ids[b]])
    above = {x: set() for x in ids}
    for a, b in relations:
        above[a].add(b)
    changed = True
    while changed:
        changed = False
        for x in ids:
            extra = set().union(*(above[y] for y in above[x])) - above[x]
            if extra:
                above[x] |= extra
                changed = True
    iso_class = {}
    for k in reversed(range(n)):
        x = ids[k]
        cands = [c for c in range(len(table))
                 if all(table.is_subconjugate(iso_class[y], c) for y in above[x])]
        iso_class[x] = rng.choice(cands)
    iso = {x: table.classes[iso_class[x]].conjugate(rng.randrange(G.order)) for x in ids}
    return ids, dims, relations, top, iso, above


def random_germ_doc(rng: random.Random, groups=FUZZ_GROUPS, max_strata: int = 8,
                    value_range: tuple[int, int] = (-5, 5)) -> dict:
    desc = rng.choice(groups)
    G = generate_group(desc)
    ids, dims, relations, top, iso, above = _random_strata(rng, G, max_strata)
    lo, hi = value_range
    eu_table = [{"lower": a, "upper": b, "value": rng.randint(lo, hi)}
                for a in ids for b in sorted(above[a])]
    form = []
    for x, d in zip(ids, dims):
        if d == 0:
            orbits = [{"index": 1, "isotropy": _gens(iso[x].conjugate(rng.randrange(G.order)))}]
        else:
            orbits = [{"index": rng.randint(lo, hi), "isotropy": _gens(iso[x].conjugate(rng.randrange(G.order)))}
                      for _ in range(rng.randint(0, 3))]
        if orbits:
            form.append({"stratum": x, "orbits": orbits})
    return {
        "group": desc,
        "ambient_dim": dims[-1] + rng.randint(0, 2),
        "strata": [{"id": x, "dim": d, "isotropy": _gens(iso[x])} for x, d in zip(ids, dims)],
        "order": relations,
        "top": top,
        "eu_table": eu_table,
        "form_data": form,
        "flavor": rng.choice(["complex", "real"]),
    }


def random_variety_doc(rng: random.Random, groups=FUZZ_GROUPS, max_strata: int = 8,
                       value_range: tuple[int, int] = (-5, 5)) -> dict:
    desc = rng.choice(groups)
    G = generate_group(desc)
    ids, dims, relations, top, iso, above = _random_strata(rng, G, max_strata)
    lo, hi = value_range
    doc = {
        "group": desc,
        "kind": rng.choice(["compact", "affine"]),
        "strata": [{"id": x, "dim": d, "isotropy": _gens(iso[x]), "quotient_euler": rng.randint(lo, hi)}
                   for x, d in zip(ids, dims)],
        "order": relations,
        "top": top,
        "eu_table": [{"lower": a, "upper": b, "value": rng.randint(lo, hi)} for a in ids for b in sorted(above[a])],
    }
    variety, _ = load_variety(doc)
    form = synthesize_form_data(variety, rng.randrange(2 ** 32))
    doc["form_data"] = dump_germ(variety, form)["form_data"]
    return doc


def check_germ(doc: dict) -> list[str]:
    """Run every local identity on a germ document; return the failures."""
    germ, form = load_germ(doc)
    bad = []
    P = germ.poset
    if convolve(zeta(germ), mobius(germ)) != delta(P):
        bad.append("zeta * mu != delta")
    mt = m_tilde(germ)
    if m_from_n(n_from_eu(germ)) != mt:
        bad.append("m_from_n(n_from_eu) != m_tilde")
    if convolve(zeta(germ), mt) != eu_function(germ):
        bad.append("Eu recovery: zeta * m_tilde != Eu")
    if form is None:
        return bad
    rep = verify_theorem(form)
    for k, (lhs, rhs, ok) in rep.per_stratum.items():
        if not ok:
            bad.append(f"obstruction/radial identity fails on closure of {k!r}: {lhs} != {rhs}")
    for k in germ.ids:
        eu, rad = nonequivariant_values(form, k)
        if reduce_count(eq_euler_obstruction(form, k)) != eu:
            bad.append(f"reduction of Euler obstruction on {k!r} != {eu}")
        if reduce_count(eq_radial_index(form, k)) != rad:
            bad.append(f"reduction of radial index on {k!r} != {rad}")
    for s in germ.strata:
        if s.dim == 0 and s.isotropy.order == germ.group.order and not any(P.lt(i, s.id) for i in germ.ids):
            if reduce_count(germ_obstruction(germ, s.id)) != germ.eu_value(germ.top, s.id):
                bad.append(f"reduction of germ obstruction at {s.id!r} != Eu table entry")
    return bad


def check_variety(doc: dict) -> list[str]:
    variety, form = load_variety(doc)
    bad = []
    glob = global_obstruction(variety)
    orb = orbit_level_obstruction(variety, form, check=True)
    if orb != glob:
        bad.append(f"orbit-level obstruction {orb} != stratum formula {glob}")
    ph = poincare_hopf_check(variety, form)
    if not ph.equal:
        bad.append(f"Poincare-Hopf: {ph.lhs} != {ph.rhs}")
    vals = global_values(variety, form)
    if reduce_count(glob) != vals["global_obstruction"]:
        bad.append("reduction of global obstruction != pointwise sum")
    if reduce_count(chi_G(variety)) != vals["chi"] or vals["index_sum"] != vals["chi"]:
        bad.append("reduction of chi_G != chi")
    return bad


@dataclass
class CaseResult:
    index: int
    kind: str
    failures: list
    document: dict

    @property
    def ok(self) -> bool:
        return not self.failures


def run_case(seed: int, index: int, kind: str, mutate=None) -> CaseResult:
    rng = random.Random(f"{seed}:{index}:{kind}")
    doc = random_germ_doc(rng) if kind == "germ" else random_variety_doc(rng)
    if mutate is not None:
        doc = mutate(doc)
    try:
        failures = check_germ(doc) if kind == "germ" else check_variety(doc)
    except EqobsError as exc:
        failures = [f"{type(exc).__name__}: {exc}"]
    return CaseResult(index, kind, failures, doc)


def _run_case_args(args):
    return run_case(*args)


@dataclass
class FuzzReport:
    seed: int
    results: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def summary(self) -> str:
        return f"{len(self.results)} cases, {len(self.failures)} failures"


def fuzz(count: int, seed: int = 1, kinds=("germ", "variety"), jobs: int = 1, mutate=None) -> FuzzReport:
    """Generate and check ``count`` cases, cycling through ``kinds``."""
    tasks = [(seed, i, kinds[i % len(kinds)]) for i in range(count)]
    if jobs > 1 and mutate is None and tasks:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_case_args, tasks, chunksize=8))
    else:
        results = [run_case(s, i, k, mutate) for s, i, k in tasks]
    results.sort(key=lambda r: (r.index, r.kind))
    return FuzzReport(seed, results)
