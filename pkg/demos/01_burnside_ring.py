"""
Arithmetic in the Burnside ring of a small permutation group
"""

from eqobs import BurnsideElement, generate_group, parse_element
from eqobs.burnside import mul_via_marks, permutation_character, reduce_count, restrict
from eqobs.groups import table_of_marks

## Subgroup classes of S3
G = generate_group("symmetric:3")
for name, H in zip(G.classes.names, G.classes.classes):
    print(name, "order", H.order)

# rows are the coset sets G/H, columns the fixing subgroup
for row in table_of_marks(G):
    print(row)

## Products come from splitting G/H x G/K into orbits
x = parse_element("[G/H2_0]", G)
print("[G/H2_0]^2 =", x * x)
print("through the marks:", mul_via_marks(x, x))

## Counting points and characters
y = parse_element("2*[G/H3_0] - [G/H1_0]", G)
print("points of", y, "=", reduce_count(y))
print("permutation character of [G/H2_0]:", permutation_character(x).values)

## Restriction to the rotation subgroup
C3 = G.subgroup([(1, 2, 0)])
print("[G/H2_0] restricted to C3:", restrict(x, C3))

unit = BurnsideElement.unit(G)
assert x * unit == x
