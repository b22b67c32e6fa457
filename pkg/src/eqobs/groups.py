"""Finite permutation groups, subgroup classes, tables of marks and G-sets.

Permutations are tuples in one-line image notation on ``{0, ..., d-1}``.
Products compose right to left: ``(p * q)(i) = p[q[i]]``.  A group is stored
fully enumerated; elements are sorted lexicographically, so the identity is
always element ``0`` and element indices are canonical for a given group.
"""

from __future__ import annotations

import re
import json
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundExceeded, GroupError

Perm = tuple

DEFAULT_MAX_GROUP_ORDER = 2000
DEFAULT_MAX_SUBGROUP_ORDER = 200


def compose(p: Perm, q: Perm) -> Perm:
    """Return ``p * q``, i.e. apply ``q`` first and then ``p``."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def check_perm(p, degree: int | None = None) -> Perm:
    try:
        p = tuple(int(x) for x in p)
    except (TypeError, ValueError):
        raise GroupError(f"malformed permutation {p!r}: entries must be integers") from None
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"malformed permutation {list(p)}: not a bijection of 0..{len(p) - 1}")
    if degree is not None and len(p) != degree:
        raise GroupError(f"inconsistent degrees: permutation {list(p)} has degree {len(p)}, expected {degree}")
    return p


def _closure(gens: Sequence[Perm], degree: int, max_order: int) -> list[Perm]:
    identity = tuple(range(degree))
    seen = {identity}
    queue = [identity]
    for x in queue:
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if len(seen) > max_order:
                    raise BoundExceeded(f"group order exceeds bound {max_order}")
    return queue


class PermGroup:
    """A finite group of permutations of ``{0, ..., degree-1}``, fully enumerated."""

    def __init__(self, elements: Iterable[Perm], degree: int):
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(sorted(set(elements)))
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._hash = hash((degree, self.elements))
        self._classes = None

    @classmethod
    def from_generators(cls, gens: Iterable, degree: int | None = None,
                        max_order: int = DEFAULT_MAX_GROUP_ORDER) -> "PermGroup":
        gens = [check_perm(g) for g in gens]
        if degree is None:
            if not gens:
                raise GroupError("cannot infer the degree of a group with no generators")
            degree = len(gens[0])
        for g in gens:
            check_perm(g, degree)
        return cls(_closure(gens, degree, max_order), degree)

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree})"

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, PermGroup) and self._hash == other._hash
                and self.degree == other.degree and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def index(self, p: Perm) -> int:
        try:
            return self._index[tuple(p)]
        except KeyError:
            raise GroupError(f"permutation {list(p)} is not an element of the group") from None

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.degree)

    def _lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        d = self.degree
        if d == 0 or d ** d < 2 ** 62:
            weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
            keys = self._array @ weights
            idx = np.searchsorted(keys, rows @ weights)
            return idx
        return np.array([self._index[tuple(r)] for r in rows.tolist()], dtype=np.int64)

    @cached_property
    def mult_table(self) -> np.ndarray:
        """``mult_table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        E = self._array
        table = np.empty((self.order, self.order), dtype=np.int64)
        for i in range(self.order):
            table[i] = self._lookup_rows(E[i][E])
        return table

    @cached_property
    def _mult_lists(self) -> list[list[int]]:
        return self.mult_table.tolist()

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.mult_table, axis=1)

    def mul(self, i: int, j: int) -> int:
        return self._mult_lists[i][j]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self._mult_lists[i][x]
            k += 1
        return k

    @cached_property
    def element_classes(self) -> tuple[tuple[int, ...], ...]:
        """Conjugacy classes of elements, ordered by (element order, least index)."""
        T, inv = self._mult_lists, self.inverses.tolist()
        seen: set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({T[T[g][x]][inv[g]] for g in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        classes.sort(key=lambda c: (self.element_order(c[0]), c[0]))
        return tuple(classes)

    def subgroup(self, gens: Iterable = ()) -> "Subgroup":
        """The subgroup generated by ``gens`` (permutations or element indices)."""
        idx = []
        for g in gens:
            idx.append(g if isinstance(g, (int, np.integer)) else self.index(check_perm(g, self.degree)))
        return Subgroup(self, _close_indices(self._mult_lists, {0}, [int(i) for i in idx]))

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset({0}))

    @property
    def classes(self) -> "SubgroupClassTable":
        return subgroup_classes(self)


def _close_indices(T: list[list[int]], start: set[int], gens: list[int]) -> frozenset[int]:
    """Closure of a closed set ``start`` together with ``gens`` under multiplication."""
    gens = [g for g in gens if g != 0]
    elems = set(start)
    queue = list(elems)
    for x in queue:
        row = T[x]
        for g in gens:
            y = row[g]
            if y not in elems:
                elems.add(y)
                queue.append(y)
    return frozenset(elems)


class Subgroup:
    """A subgroup of ``parent`` given by the set of its element indices."""

    def __init__(self, parent: PermGroup, members: Iterable[int]):
        self.parent = parent
        self.members = frozenset(int(m) for m in members)

    def __repr__(self):
        return f"Subgroup(order={self.order}, parent={self.parent!r})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.members == other.members and self.parent == other.parent

    def __hash__(self):
        return hash(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def perms(self) -> list[Perm]:
        return [self.parent.elements[i] for i in sorted(self.members)]

    def is_group(self) -> bool:
        T = self.parent._mult_lists
        inv = self.parent.inverses
        return 0 in self.members and all(
            T[a][b] in self.members for a in self.members for b in self.members
        ) and all(int(inv[a]) in self.members for a in self.members)

    def conjugate(self, g: int) -> "Subgroup":
        """``g H g^-1``."""
        T = self.parent._mult_lists
        gi = int(self.parent.inverses[g])
        return Subgroup(self.parent, (T[T[g][h]][gi] for h in self.members))

    def generators(self) -> list[Perm]:
        """A small generating set, chosen greedily by element index."""
        T = self.parent._mult_lists
        current = frozenset({0})
        gens = []
        for m in sorted(self.members):
            if m not in current:
                gens.append(m)
                current = _close_indices(T, current, gens)
        return [self.parent.elements[g] for g in gens]

    @cached_property
    def group(self) -> PermGroup:
        """This subgroup as a permutation group in its own right."""
        return _intern(PermGroup(self.perms, self.parent.degree))


@lru_cache(maxsize=None)
def _intern(G: PermGroup) -> PermGroup:
    # equal groups share one object so that cached class tables are reused
    return G


class SubgroupClassTable:
    """Conjugacy classes of subgroups with canonical representatives and names.

    Classes are ordered by (subgroup order, sorted member indices of the
    lexicographically least conjugate); names are ``H<order>_<k>``.
    """

    def __init__(self, parent: PermGroup, representatives: Sequence[Subgroup]):
        self.parent = parent
        lookup: dict[frozenset, int] = {}
        entries = []
        for rep in representatives:
            conj = {rep.conjugate(g).members for g in range(parent.order)}
            canonical = min(conj, key=lambda m: tuple(sorted(m)))
            entries.append((len(canonical), tuple(sorted(canonical)), conj))
        entries.sort(key=lambda e: (e[0], e[1]))
        self.classes: tuple[Subgroup, ...] = tuple(Subgroup(parent, e[1]) for e in entries)
        self.class_sizes: tuple[int, ...] = tuple(len(e[2]) for e in entries)
        names, counter = [], {}
        for order, _, conj in entries:
            k = counter.get(order, 0)
            counter[order] = k + 1
            names.append(f"H{order}_{k}")
        self.names: tuple[str, ...] = tuple(names)
        for cid, (_, _, conj) in enumerate(entries):
            for m in conj:
                if m in lookup:
                    raise GroupError("subgroup class representatives are not pairwise non-conjugate")
                lookup[m] = cid
        self._lookup = lookup
        self._by_name = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def class_of(self, H) -> int:
        members = H.members if isinstance(H, Subgroup) else frozenset(H)
        try:
            return self._lookup[members]
        except KeyError:
            raise GroupError("subgroup is not listed in the class table") from None

    def by_name(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise GroupError(f"unknown subgroup class {name!r}; known: {', '.join(self.names)}") from None

    def order_of(self, cid: int) -> int:
        return self.classes[cid].order

    def normalizer_order(self, cid: int) -> int:
        return self.parent.order // self.class_sizes[cid]

    def conjugates(self, cid: int) -> list[frozenset]:
        return [m for m, c in self._lookup.items() if c == cid]

    def all_subgroups(self) -> list[Subgroup]:
        return [Subgroup(self.parent, m) for m in self._lookup]

    def is_subconjugate(self, a: int, b: int) -> bool:
        """True if class ``a`` is conjugate to a subgroup of class ``b``."""
        return table_of_marks(self.parent)[b][a] > 0


def subgroup_classes(G: PermGroup, max_order: int = DEFAULT_MAX_SUBGROUP_ORDER) -> SubgroupClassTable:
    """Enumerate the conjugacy classes of subgroups of ``G``.

    All cyclic subgroups are collected first and then closed under joins with
    cyclic subgroups until nothing new appears.
    """
    if G._classes is not None:
        return G._classes
    if G.order > max_order:
        raise BoundExceeded(f"group order {G.order} exceeds subgroup-enumeration bound {max_order}")
    T = G._mult_lists
    cyclic: dict[frozenset, int] = {}
    for g in range(G.order):
        c = _close_indices(T, {0}, [g])
        cyclic.setdefault(c, g)
    gens_of: dict[frozenset, list[int]] = {c: ([g] if g else []) for c, g in cyclic.items()}
    frontier = list(gens_of)
    while frontier:
        fresh = []
        for H in frontier:
            for C, g in cyclic.items():
                if g in H:
                    continue
                J = _close_indices(T, H, gens_of[H] + [g])
                if J not in gens_of:
                    gens_of[J] = gens_of[H] + [g]
                    fresh.append(J)
        frontier = fresh
    reps, assigned = [], set()
    for H in sorted(gens_of, key=lambda m: (len(m), tuple(sorted(m)))):
        if H in assigned:
            continue
        sub = Subgroup(G, H)
        assigned.update(sub.conjugate(g).members for g in range(G.order))
        reps.append(sub)
    table = SubgroupClassTable(G, reps)
    G._classes = table
    return table


def install_class_table(G: PermGroup, table: SubgroupClassTable) -> None:
    """Attach a precomputed (e.g. cached on disk) class table to ``G``."""
    if table.parent != G:
        raise GroupError("class table belongs to a different group")
    G._classes = table


@lru_cache(maxsize=64)
def _marks(G: PermGroup) -> tuple[tuple[int, ...], ...]:
    table = G.classes
    n = len(table)
    conj = [table.conjugates(c) for c in range(n)]
    rows = []
    for a in range(n):
        H = table.classes[a].members
        row = []
        for b in range(n):
            inside = sum(1 for K in conj[b] if K <= H)
            num = table.normalizer_order(b) * inside
            row.append(num // len(H))
        rows.append(tuple(row))
    return tuple(rows)


def table_of_marks(G: PermGroup) -> list[list[int]]:
    """``M[a][b]`` = number of points of ``G/H_a`` fixed by ``H_b``.

    Lower triangular in the canonical class order, with diagonal
    ``|N_G(H)| / |H|``.
    """
    return [list(r) for r in _marks(G)]


class FiniteGSet:
    """A finite G-set on points ``0..n-1``; ``action[g, x]`` is the image of ``x`` under element ``g``."""

    def __init__(self, parent: PermGroup, action, validate: bool = True):
        self.parent = parent
        self.action = np.asarray(action, dtype=np.int64).reshape(parent.order, -1)
        if validate:
            self.validate()

    @property
    def n_points(self) -> int:
        return self.action.shape[1]

    def __len__(self):
        return self.n_points

    def validate(self) -> None:
        A, n = self.action, self.n_points
        if n == 0:
            return
        if A.min() < 0 or A.max() >= n:
            raise GroupError("action maps points outside the point set")
        if not np.array_equal(A[0], np.arange(n)):
            raise GroupError("action axiom violated: identity does not act trivially")
        T = self.parent.mult_table
        for g in range(self.parent.order):
            if not np.array_equal(A[T[g]], A[g][A]):
                raise GroupError("action axiom violated: composition is not respected")

    def product(self, other: "FiniteGSet") -> "FiniteGSet":
        """Cartesian product with the diagonal action; point ``(a, b)`` is ``a * len(other) + b``."""
        if other.parent != self.parent:
            raise GroupError("G-sets over different groups")
        m = other.n_points
        A = self.action[:, :, None] * m + other.action[:, None, :]
        return FiniteGSet(self.parent, A.reshape(self.parent.order, -1), validate=False)

    def disjoint_union(self, other: "FiniteGSet") -> "FiniteGSet":
        if other.parent != self.parent:
            raise GroupError("G-sets over different groups")
        A = np.concatenate([self.action, other.action + self.n_points], axis=1)
        return FiniteGSet(self.parent, A, validate=False)

    def restrict(self, H: Subgroup) -> "FiniteGSet":
        """The same points with the action of the subgroup ``H`` (as a group in its own right)."""
        if H.parent != self.parent:
            raise GroupError("subgroup of a different group")
        Hg = H.group
        rows = [self.parent.index(p) for p in Hg.elements]
        return FiniteGSet(Hg, self.action[rows], validate=False)

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.parent, np.flatnonzero(self.action[:, x] == x).tolist())

    def fixed_points(self, g: int) -> int:
        return int(np.count_nonzero(self.action[g] == np.arange(self.n_points)))


def coset_gset(H: Subgroup) -> FiniteGSet:
    """The G-set ``G/H`` of left cosets; coset ``0`` is ``H`` itself."""
    G = H.parent
    T = G.mult_table
    coset_id = np.full(G.order, -1, dtype=np.int64)
    reps = []
    members = np.array(sorted(H.members), dtype=np.int64)
    for g in range(G.order):
        if coset_id[g] < 0:
            coset_id[T[g, members]] = len(reps)
            reps.append(g)
    action = coset_id[T[:, reps]]
    return FiniteGSet(G, action, validate=False)


def orbit_decompose(X: FiniteGSet, validate: bool = True) -> list[tuple[tuple[int, ...], int]]:
    """Split ``X`` into orbits; each comes with the class id of a point stabilizer."""
    if validate:
        X.validate()
    table = X.parent.classes
    seen = np.zeros(X.n_points, dtype=bool)
    out = []
    for x in range(X.n_points):
        if seen[x]:
            continue
        orbit = np.unique(X.action[:, x])
        seen[orbit] = True
        out.append((tuple(orbit.tolist()), table.class_of(X.stabilizer(x))))
    return out


# -- group descriptions ----------------------------------------------------

_DESC = re.compile(r"^\s*(cyclic|dihedral|symmetric)\s*:\s*(\d+)\s*$|^\s*perm\s*:\s*(.+)$", re.S)


def cyclic_generators(n: int) -> list[Perm]:
    if n < 1:
        raise GroupError("cyclic:n needs n >= 1")
    return [tuple((i + 1) % n for i in range(n))]


def dihedral_generators(n: int) -> list[Perm]:
    if n < 3:
        raise GroupError("dihedral:n needs n >= 3 for a faithful action on n points")
    return [tuple((i + 1) % n for i in range(n)), tuple((-i) % n for i in range(n))]


def symmetric_generators(n: int) -> list[Perm]:
    if not 1 <= n <= 6:
        raise GroupError("symmetric:n is supported for 1 <= n <= 6")
    if n == 1:
        return [(0,)]
    return [tuple([1, 0] + list(range(2, n))), tuple((i + 1) % n for i in range(n))]


def normalize_description(desc: str) -> str:
    m = _DESC.match(desc)
    if not m:
        raise GroupError(f"cannot parse group description {desc!r}; expected cyclic:n, dihedral:n, symmetric:n or perm:[[...]]")
    if m.group(1):
        return f"{m.group(1)}:{int(m.group(2))}"
    try:
        gens = json.loads(m.group(3))
    except json.JSONDecodeError as exc:
        raise GroupError(f"malformed permutation list in {desc!r}: {exc}") from None
    if not isinstance(gens, list) or not gens:
        raise GroupError("perm: needs a non-empty list of permutations")
    return "perm:" + json.dumps([list(check_perm(g)) for g in gens], separators=(",", ":"))


@lru_cache(maxsize=128)
def _generate(desc: str, max_order: int) -> PermGroup:
    kind, _, arg = desc.partition(":")
    if kind == "perm":
        gens = json.loads(arg)
    else:
        n = int(arg)
        if kind == "cyclic":
            gens = cyclic_generators(n)
        elif kind == "dihedral":
            gens = dihedral_generators(n)
            if 2 * n > max_order:
                raise BoundExceeded(f"group order {2 * n} exceeds bound {max_order}")
        else:
            gens = symmetric_generators(n)
        if kind == "cyclic" and n > max_order:
            raise BoundExceeded(f"group order {n} exceeds bound {max_order}")
    return _intern(PermGroup.from_generators(gens, max_order=max_order))


def generate_group(desc, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> PermGroup:
    """Build a group from a description string or an explicit list of generators.

    >>> generate_group("dihedral:4").order
    8
    """
    if isinstance(desc, str):
        return _generate(normalize_description(desc), max_order)
    gens = [check_perm(g) for g in desc]
    if not gens:
        raise GroupError("need at least one generator")
    return _intern(PermGroup.from_generators(gens, max_order=max_order))


def describe(G: PermGroup) -> str:
    """A ``perm:`` description regenerating ``G``."""
    gens = G.whole().generators() or [G.identity]
    return "perm:" + json.dumps([list(g) for g in gens], separators=(",", ":"))


A4_DESCRIPTION = "perm:[[1,2,0,3],[1,0,3,2]]"

BUILTIN_GROUPS = {
    "C1": "cyclic:1", "C2": "cyclic:2", "C3": "cyclic:3", "C4": "cyclic:4", "C5": "cyclic:5",
    "C6": "cyclic:6", "C8": "cyclic:8", "C12": "cyclic:12",
    "S3": "symmetric:3", "S4": "symmetric:4",
    "D4": "dihedral:4", "D5": "dihedral:5", "D6": "dihedral:6", "D8": "dihedral:8",
    "A4": A4_DESCRIPTION,
}


def builtin_group(name: str) -> PermGroup:
    return generate_group(BUILTIN_GROUPS[name])

