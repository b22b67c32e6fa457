"""The Burnside ring B(G) of a finite permutation group.

An element is an integer vector over the canonical subgroup classes of its
group; coordinate ``c`` is the coefficient of the transitive G-set ``G/H_c``.
Products are computed by decomposing the cartesian product of coset sets into
orbits.  The ghost-ring route through the table of marks is kept alongside as
an independent check.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import GroupError, GroupMismatch
from .groups import FiniteGSet, PermGroup, Subgroup, coset_gset, orbit_decompose, table_of_marks


@dataclass(frozen=True, eq=False)
class BurnsideElement:
    group: PermGroup
    coeffs: tuple

    def __post_init__(self):
        n = len(self.group.classes)
        if len(self.coeffs) != n:
            raise GroupError(f"expected {n} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # -- constructors --

    @classmethod
    def zero(cls, G: PermGroup) -> "BurnsideElement":
        return cls(G, (0,) * len(G.classes))

    @classmethod
    def basis(cls, G: PermGroup, cid: int, coeff: int = 1) -> "BurnsideElement":
        c = [0] * len(G.classes)
        c[cid] = coeff
        return cls(G, tuple(c))

    @classmethod
    def unit(cls, G: PermGroup) -> "BurnsideElement":
        """The one-point G-set ``[G/G]``."""
        return cls.basis(G, len(G.classes) - 1)

    @classmethod
    def coset(cls, H: Subgroup, coeff: int = 1) -> "BurnsideElement":
        """``coeff * [G/H]``."""
        G = H.parent
        return cls.basis(G, G.classes.class_of(H), coeff)

    @classmethod
    def from_dict(cls, G: PermGroup, terms: dict) -> "BurnsideElement":
        c = [0] * len(G.classes)
        for key, v in terms.items():
            cid = G.classes.by_name(key) if isinstance(key, str) else int(key)
            c[cid] += v
        return cls(G, tuple(c))

    # -- arithmetic --

    def _check(self, other: "BurnsideElement") -> None:
        if not isinstance(other, BurnsideElement):
            raise TypeError(f"cannot combine BurnsideElement with {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatch("Burnside elements belong to different groups")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return BurnsideElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElement(self.group, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.group, tuple(other * a for a in self.coeffs))
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"BurnsideElement({render(self)!r}, order={self.group.order})"

    def terms(self) -> dict[str, int]:
        names = self.group.classes.names
        return {names[i]: c for i, c in enumerate(self.coeffs) if c}


def add(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    return a + b


def neg(a: BurnsideElement) -> BurnsideElement:
    return -a


def from_gset(X: FiniteGSet, validate: bool = True) -> BurnsideElement:
    """Count the orbits of ``X`` by stabilizer class."""
    c = [0] * len(X.parent.classes)
    for _, cid in orbit_decompose(X, validate=validate):
        c[cid] += 1
    return BurnsideElement(X.parent, tuple(c))


@lru_cache(maxsize=None)
def _coset_set(G: PermGroup, cid: int) -> FiniteGSet:
    return coset_gset(G.classes.classes[cid])


@lru_cache(maxsize=None)
def _basis_product(G: PermGroup, a: int, b: int) -> tuple:
    X = _coset_set(G, a).product(_coset_set(G, b))
    return from_gset(X, validate=False).coeffs


def mul(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Product induced by the cartesian product of G-sets."""
    a._check(b)
    G = a.group
    out = [0] * len(a.coeffs)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            lo, hi = min(i, j), max(i, j)
            for k, z in enumerate(_basis_product(G, lo, hi)):
                if z:
                    out[k] += x * y * z
    return BurnsideElement(G, tuple(out))


def reduce_count(a: BurnsideElement) -> int:
    """Number of points of the virtual G-set: ``sum a_H |G|/|H|``."""
    G = a.group
    return sum(c * (G.order // H.order) for c, H in zip(a.coeffs, G.classes.classes))


# -- restriction and induction ------------------------------------------------

def _as_subgroup(G: PermGroup, H) -> Subgroup:
    if isinstance(H, Subgroup):
        if H.parent != G:
            raise GroupMismatch("subgroup witness belongs to a different group")
        return H
    if isinstance(H, PermGroup):
        missing = [p for p in H.elements if p not in G]
        if missing or H.degree != G.degree:
            raise GroupMismatch("group is not realized as a subgroup of the target group")
        return Subgroup(G, (G.index(p) for p in H.elements))
    raise TypeError("expected a Subgroup or a PermGroup")


@lru_cache(maxsize=None)
def _restrict_basis(G: PermGroup, H: Subgroup, cid: int) -> tuple:
    return from_gset(_coset_set(G, cid).restrict(H), validate=False).coeffs


def restrict(a: BurnsideElement, H) -> BurnsideElement:
    """Restriction ``B(G) -> B(H)``: regard each G-set as an H-set."""
    H = _as_subgroup(a.group, H)
    Hg = H.group
    out = [0] * len(Hg.classes)
    for cid, x in enumerate(a.coeffs):
        if x:
            for k, z in enumerate(_restrict_basis(a.group, H, cid)):
                out[k] += x * z
    return BurnsideElement(Hg, tuple(out))


@lru_cache(maxsize=None)
def _induce_map(G: PermGroup, H: Subgroup) -> tuple:
    table = G.classes
    return tuple(
        table.class_of(Subgroup(G, (G.index(p) for p in K.perms)))
        for K in H.group.classes.classes
    )


def induce(a: BurnsideElement, H) -> BurnsideElement:
    """Induction ``B(H) -> B(G)``, ``[H/K] -> [G/K]``.

    ``H`` is the embedding witness: a :class:`Subgroup` of the target group
    whose underlying group is ``a.group``.
    """
    if not isinstance(H, Subgroup):
        raise TypeError("induce needs the subgroup embedding witness")
    if H.group != a.group:
        raise GroupMismatch("element does not live over the given subgroup")
    G = H.parent
    out = [0] * len(G.classes)
    for k, x in zip(_induce_map(G, H), a.coeffs):
        out[k] += x
    return BurnsideElement(G, tuple(out))


# -- marks and characters ---------------------------------------------------------

def ghost(a: BurnsideElement) -> list[int]:
    """Mark vector: entry ``K`` is the number of points fixed by ``K``."""
    M = table_of_marks(a.group)
    n = len(M)
    return [sum(a.coeffs[h] * M[h][k] for h in range(n)) for k in range(n)]


def from_ghost(G: PermGroup, marks: list[int]) -> BurnsideElement:
    """Invert :func:`ghost` by back substitution; raises if the vector is not integral."""
    M = table_of_marks(G)
    n = len(M)
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = marks[k] - sum(x[h] * M[h][k] for h in range(k + 1, n))
        x[k] = Fraction(s, M[k][k])
    if any(v.denominator != 1 for v in x):
        raise GroupError("mark vector is not the image of a Burnside element")
    return BurnsideElement(G, tuple(int(v) for v in x))


def mul_via_marks(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    a._check(b)
    return from_ghost(a.group, [x * y for x, y in zip(ghost(a), ghost(b))])


@dataclass(frozen=True)
class CharacterVector:
    """Integer class function: one value per conjugacy class of elements."""

    group: PermGroup
    values: tuple

    def __add__(self, other):
        return CharacterVector(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        return CharacterVector(self.group, tuple(a * b for a, b in zip(self.values, other.values)))


@lru_cache(maxsize=None)
def character_matrix(G: PermGroup) -> tuple:
    """Row ``H``: permutation character of ``G/H`` on each element class."""
    reps = [cls[0] for cls in G.element_classes]
    return tuple(
        tuple(_coset_set(G, cid).fixed_points(g) for g in reps)
        for cid in range(len(G.classes))
    )


def permutation_character(a: BurnsideElement) -> CharacterVector:
    rows = character_matrix(a.group)
    vals = np.zeros(len(a.group.element_classes), dtype=object)
    for c, row in zip(a.coeffs, rows):
        if c:
            vals += c * np.array(row, dtype=object)
    return CharacterVector(a.group, tuple(int(v) for v in vals))


# -- text form ------------------------------------------------------------------

def render(a: BurnsideElement) -> str:
    """Canonical text: largest class first, ``c*[G/H<order>_<k>]`` joined by ``' + '``."""
    names = a.group.classes.names
    parts = []
    for cid in range(len(a.coeffs) - 1, -1, -1):
        c = a.coeffs[cid]
        if c == 1:
            parts.append(f"[G/{names[cid]}]")
        elif c:
            parts.append(f"{c}*[G/{names[cid]}]")
    return " + ".join(parts) if parts else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[\s*G\s*/\s*([A-Za-z0-9_]+)\s*\])|([-+*()]))")


def parse_element(text: str, G: PermGroup) -> BurnsideElement:
    """Parse a sum of products of integers and basis symbols ``[G/<class name>]``.

    >>> str(parse_element("3*[G/H2_0] + -1*[G/H1_0]", generate_group("cyclic:2")))
    '3*[G/H2_0] + -1*[G/H1_0]'
    """
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupError(f"cannot parse element literal at position {pos}: {text[pos:pos + 12]!r}")
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("basis", BurnsideElement.basis(G, G.classes.by_name(m.group(3)))))
        else:
            tokens.append(("op", m.group(4)))
        pos = m.end()
    if not tokens:
        raise GroupError("empty element literal")
    one = BurnsideElement.unit(G)
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def factor():
        nonlocal i
        kind, val = peek()
        if kind == "op" and val in "+-":
            i += 1
            f = factor()
            return -f if val == "-" else f
        if kind == "int":
            i += 1
            return val * one
        if kind == "basis":
            i += 1
            return val
        if kind == "op" and val == "(":
            i += 1
            e = expr()
            if peek() != ("op", ")"):
                raise GroupError("unbalanced parentheses in element literal")
            i += 1
            return e
        raise GroupError(f"unexpected token {val!r} in element literal")

    def term():
        nonlocal i
        t = factor()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                i += 1
                t = t * factor()
            elif kind in ("int", "basis") or (kind == "op" and val == "("):
                t = t * factor()
            else:
                return t

    def expr():
        nonlocal i
        e = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = peek()[1]
            i += 1
            t = term()
            e = e + t if op == "+" else e - t
        return e

    result = expr()
    if i != len(tokens):
        raise GroupError(f"trailing input in element literal: {tokens[i][1]!r}")
    return result
