"""
Zeta, Moebius and the normal-slice tables of a stratified germ
"""

from eqobs import load_germ
from eqobs.poset import convolve, eu_function, m_tilde, mobius, n_from_eu, zeta

doc = {
    "group": "cyclic:1",
    "strata": [{"id": "0", "dim": 0}, {"id": "a", "dim": 1}, {"id": "b", "dim": 1}, {"id": "V", "dim": 2}],
    "order": [["0", "a"], ["0", "b"], ["a", "V"], ["b", "V"]],
    "top": "V",
    "eu_table": [
        {"lower": "0", "upper": "a", "value": 2},
        {"lower": "0", "upper": "b", "value": 1},
        {"lower": "0", "upper": "V", "value": 3},
        {"lower": "a", "upper": "V", "value": 1},
        {"lower": "b", "upper": "V", "value": 2},
    ],
}
germ, _ = load_germ(doc)


def show(name, f):
    print(name)
    for row in f.matrix():
        print("  ", row)


## The incidence algebra of the stratum order
show("zeta", zeta(germ))
show("mobius", mobius(germ))

## m~ = mu * Eu and its inverse n
mt = m_tilde(germ)
show("m_tilde", mt)
show("n", n_from_eu(germ))

# zeta * m~ gives the Euler obstruction table back
assert convolve(zeta(germ), mt) == eu_function(germ)
