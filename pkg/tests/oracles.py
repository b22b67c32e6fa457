"""Brute-force reference computations, written without the package's algorithms.

Everything here works directly on permutation tuples and Python sets.
"""

from itertools import combinations

import sympy


def comp(p, q):
    return tuple(p[i] for i in q)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def closure_by_words(gens):
    """All products of generators, grown word length by word length."""
    d = len(gens[0])
    words = {tuple(range(d))}
    while True:
        longer = words | {comp(w, g) for w in words for g in gens}
        if longer == words:
            return words
        words = longer


def is_subgroup(S):
    return all(comp(a, b) in S for a in S for b in S)


def all_subgroups(elements):
    """Every subset containing the identity and closed under products (small groups only)."""
    elements = sorted(elements)
    e, rest = elements[0], elements[1:]
    out = []
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            S = frozenset((e,) + combo)
            if is_subgroup(S):
                out.append(S)
    return out


def conjugacy_classes_of_subgroups(elements, subgroups):
    classes = []
    for H in subgroups:
        if any(H in c for c in classes):
            continue
        classes.append({frozenset(comp(comp(g, h), inv(g)) for h in H) for g in elements})
    return classes


def left_cosets(elements, H):
    return list({frozenset(comp(g, h) for h in H) for g in elements})


def fixed_cosets(elements, H, K):
    """Number of cosets gH with k gH = gH for all k in K."""
    return sum(1 for c in left_cosets(elements, H)
               if all(frozenset(comp(k, x) for x in c) == c for k in K))


def normalizer_order(elements, H):
    return sum(1 for g in elements if frozenset(comp(comp(g, h), inv(g)) for h in H) == H)


def orbits_with_stabilizer_orders(elements, points, act):
    """Orbits of an explicit action ``act(g, x)``; returns list of (orbit size, stabilizer order)."""
    seen, out = set(), []
    for x in points:
        if x in seen:
            continue
        orbit = {act(g, x) for g in elements}
        seen |= orbit
        out.append((len(orbit), sum(1 for g in elements if act(g, x) == x)))
    return sorted(out)


def unitriangular_inverse(matrix):
    """Exact inverse through sympy's rational linear algebra."""
    return [[int(v) for v in row] for row in sympy.Matrix(matrix).inv().tolist()]


def rational_rank(matrix):
    return sympy.Matrix(matrix).rank()
