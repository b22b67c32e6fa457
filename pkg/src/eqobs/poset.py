"""Stratified germs as combinatorial data: the poset of strata and its incidence algebra.

Functions on the poset are stored as :class:`PosetFunction` objects supported on
the order relation.  Convolution is ``(f * g)(i, k) = sum_j f(i, j) g(j, k)``
over ``i <= j <= k``; zeta, Moebius, the Euler-obstruction table and the
normal-slice tables ``n`` and ``m`` all live in this algebra.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable

from .errors import ValidationError
from .groups import PermGroup, Subgroup


class Poset:
    """A finite partial order given by generating pairs ``(lower, upper)``.

    The reflexive-transitive closure is taken on construction; cycles are
    recorded in :attr:`cycles` rather than raised so that validation can
    report them together with other problems.
    """

    def __init__(self, ids: Iterable[Hashable], relations: Iterable[tuple]):
        self.ids = tuple(ids)
        pos = {x: n for n, x in enumerate(self.ids)}
        self.unknown = sorted({x for pair in relations for x in pair if x not in pos}, key=str)
        below = {x: {x} for x in self.ids}
        for lo, hi in relations:
            if lo in pos and hi in pos:
                below[hi].add(lo)
        changed = True
        while changed:
            changed = False
            for x in self.ids:
                extra = set().union(*(below[y] for y in below[x])) - below[x]
                if extra:
                    below[x] |= extra
                    changed = True
        self._below = {x: frozenset(s) for x, s in below.items()}
        self.cycles = sorted(
            {tuple(sorted((a, b), key=str)) for b in self.ids for a in self._below[b]
             if a != b and b in self._below[a]}, key=str)

    def leq(self, i, j) -> bool:
        return i in self._below[j]

    def lt(self, i, j) -> bool:
        return i != j and i in self._below[j]

    def below(self, k) -> frozenset:
        return self._below[k]

    def pairs(self) -> list[tuple]:
        return [(i, k) for k in self.ids for i in self.ids if i in self._below[k]]

    @cached_property
    def linear_extension(self) -> tuple:
        ts = graphlib.TopologicalSorter({k: self._below[k] - {k} for k in self.ids})
        try:
            return tuple(ts.static_order())
        except graphlib.CycleError:
            raise ValidationError(["order relation contains a cycle"]) from None

    def maxima(self) -> list:
        return [k for k in self.ids if not any(self.lt(k, j) for j in self.ids)]


@dataclass(frozen=True, eq=False)
class PosetFunction:
    poset: Poset
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, k), v in self.values.items():
            if v and not self.poset.leq(i, k):
                raise ValueError(f"poset function has value {v} off the order at ({i!r}, {k!r})")

    def __getitem__(self, key) -> int:
        return self.values.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, PosetFunction):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self[k] == other[k] for k in keys)

    def __mul__(self, other: "PosetFunction") -> "PosetFunction":
        return convolve(self, other)

    def matrix(self) -> list[list[int]]:
        ids = self.poset.ids
        return [[self[(i, k)] for k in ids] for i in ids]

    def is_unitriangular(self) -> bool:
        return all(self[(k, k)] == 1 for k in self.poset.ids)


def delta(P: Poset) -> PosetFunction:
    return PosetFunction(P, {(k, k): 1 for k in P.ids})


def convolve(f: PosetFunction, g: PosetFunction) -> PosetFunction:
    P = f.poset
    out = {}
    for i, k in P.pairs():
        s = sum(f[(i, j)] * g[(j, k)] for j in P.below(k) if P.leq(i, j))
        if s:
            out[(i, k)] = s
    return PosetFunction(P, out)


def inverse(f: PosetFunction) -> PosetFunction:
    """Two-sided convolution inverse of a function with unit diagonal."""
    P = f.poset
    bad = [k for k in P.ids if f[(k, k)] != 1]
    if bad:
        raise ValidationError([f"nonunit diagonal at {k!r}: {f[(k, k)]}" for k in bad])
    g: dict = {}
    order = P.linear_extension
    for k in order:
        g[(k, k)] = 1
        for i in order:
            if i == k or not P.lt(i, k):
                continue
            s = sum(g.get((i, j), 0) * f[(j, k)] for j in P.below(k) if j != k and P.leq(i, j))
            g[(i, k)] = -s
    return PosetFunction(P, {key: v for key, v in g.items() if v})


@dataclass(frozen=True)
class Stratum:
    id: Hashable
    dim: int
    isotropy: Subgroup


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self) -> None:
        if self.errors:
            raise ValidationError(self.errors)


class StratGermData:
    """Strata of an H-invariant stratified germ with their Euler-obstruction table.

    ``eu[(i, j)]`` holds ``Eu(V_j, V_i)`` for ``i <= j``; the diagonal defaults to 1.
    Construction validates unless ``validate=False``.
    """

    def __init__(self, group: PermGroup, strata: Iterable[Stratum], relations: Iterable[tuple],
                 top, eu: dict, ambient_dim: int | None = None, validate: bool = True):
        self.group = group
        self.strata = tuple(strata)
        self.relations = tuple(tuple(r) for r in relations)
        self.top = top
        self.ambient_dim = ambient_dim
        self._by_id = {s.id: s for s in self.strata}
        self.poset = Poset([s.id for s in self.strata], self.relations)
        eu = {tuple(k): int(v) for k, v in eu.items()}
        for s in self.strata:
            eu.setdefault((s.id, s.id), 1)
        self.eu = eu
        if validate:
            validate_germ(self).raise_for_errors()

    def __eq__(self, other):
        if not isinstance(other, StratGermData):
            return NotImplemented
        return (self.group == other.group and self.strata == other.strata and self.top == other.top
                and self.ambient_dim == other.ambient_dim
                and set(self.poset.pairs()) == set(other.poset.pairs())
                and {k: v for k, v in self.eu.items() if v} == {k: v for k, v in other.eu.items() if v})

    @property
    def ids(self) -> tuple:
        return self.poset.ids

    def stratum(self, sid) -> Stratum:
        try:
            return self._by_id[sid]
        except KeyError:
            raise ValidationError([f"unknown stratum {sid!r}"]) from None

    @property
    def dim(self) -> int:
        """Complex dimension of the germ, i.e. of its top stratum."""
        return self.stratum(self.top).dim

    def eu_value(self, upper, lower) -> int:
        """``Eu(V_upper, V_lower)``; zero unless ``lower <= upper``."""
        return self.eu.get((lower, upper), 0) if self.poset.leq(lower, upper) else 0

    def isotropy_class(self, sid) -> int:
        return self.group.classes.class_of(self.stratum(sid).isotropy)


def validate_germ(data: StratGermData) -> ValidationReport:
    """Check every structural invariant; errors name the offending strata."""
    rep = ValidationReport()
    P = data.poset
    seen = set()
    for s in data.strata:
        if s.id in seen:
            rep.errors.append(f"duplicate stratum id {s.id!r}")
        seen.add(s.id)
        if not isinstance(s.dim, int) or s.dim < 0:
            rep.errors.append(f"stratum {s.id!r}: dimension must be a nonnegative integer")
        if s.isotropy.parent != data.group:
            rep.errors.append(f"stratum {s.id!r}: isotropy is not a subgroup of the acting group")
    for x in P.unknown:
        rep.errors.append(f"order refers to unknown stratum {x!r}")
    if P.cycles:
        rep.errors.append("order relation contains a cycle: " + ", ".join(f"{a!r}~{b!r}" for a, b in P.cycles))
    if data.top not in seen:
        rep.errors.append(f"top stratum {data.top!r} is not a stratum")
        return rep
    not_below = [i for i in P.ids if not P.leq(i, data.top)]
    if not_below:
        rep.errors.append(f"top stratum {data.top!r} must be the unique maximum; not above {not_below!r}")
    if data.ambient_dim is not None and data.ambient_dim < data.dim:
        rep.errors.append(f"ambient_dim {data.ambient_dim} is smaller than the germ dimension {data.dim}")
    for i, j in P.pairs():
        if i != j and not P.leq(j, i) and data.stratum(i).dim >= data.stratum(j).dim:
            rep.errors.append(f"dimension must strictly increase along the order: {i!r} < {j!r}")
    for (i, j), v in data.eu.items():
        if i not in seen or j not in seen:
            rep.errors.append(f"Eu table refers to unknown stratum in ({i!r}, {j!r})")
        elif i == j and v != 1:
            rep.errors.append(f"Eu({j!r},{j!r}) = {v}: diagonal must be 1")
        elif v and not P.leq(i, j):
            rep.errors.append(f"Eu({j!r},{i!r}) = {v} must be 0 since {i!r} is not below {j!r}")
    for i, j in P.pairs():
        if i != j and (i, j) not in data.eu:
            rep.errors.append(f"missing Eu table entry for lower={i!r}, upper={j!r}")
    if rep.errors:
        return rep
    table = data.group.classes
    for i, j in P.pairs():
        if i == j:
            continue
        a, b = data.isotropy_class(j), data.isotropy_class(i)
        if not table.is_subconjugate(a, b):
            rep.warnings.append(
                f"isotropy of {j!r} ({table.names[a]}) is not subconjugate to isotropy of {i!r} ({table.names[b]})")
    return rep


def validate(data: StratGermData) -> ValidationReport:
    return validate_germ(data)


def zeta(data) -> PosetFunction:
    P = data.poset if hasattr(data, "poset") else data
    return PosetFunction(P, {pair: 1 for pair in P.pairs()})


def mobius(data) -> PosetFunction:
    return inverse(zeta(data))


def eu_function(data: StratGermData) -> PosetFunction:
    """``E(i, k) = Eu(V_k, V_i)`` as a function on the poset."""
    return PosetFunction(data.poset, {(i, k): data.eu_value(k, i) for i, k in data.poset.pairs()
                                      if data.eu_value(k, i)})


def m_tilde(data: StratGermData) -> PosetFunction:
    """``m~(j, k) = sum_i mu(j, i) Eu(V_k, V_i)``."""
    return convolve(mobius(data), eu_function(data))


def n_from_eu(data: StratGermData) -> PosetFunction:
    """Predicted radial indices of a generic linear form on the normal slices."""
    return inverse(m_tilde(data))


def m_from_n(n: PosetFunction) -> PosetFunction:
    return inverse(n)
