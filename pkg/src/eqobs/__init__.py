"""Equivariant Euler obstructions with values in the Burnside ring of a finite group."""

from .burnside import (BurnsideElement, CharacterVector, from_gset, induce, mul, mul_via_marks, parse_element,
                       permutation_character, reduce_count, render, restrict)
from .errors import BoundExceeded, EqobsError, GroupError, GroupMismatch, ValidationError
from .globalcalc import (CompactStratVariety, GlobalFormData, GlobalStratum, chi_G, global_obstruction,
                         orbit_level_obstruction, poincare_hopf_check, synthesize_form_data)
from .groups import (FiniteGSet, PermGroup, Subgroup, SubgroupClassTable, coset_gset, generate_group,
                     orbit_decompose, subgroup_classes, table_of_marks)
from .io import dump_germ, load_germ, load_variety
from .local import (FormSingularityData, Orbit, eq_euler_obstruction, eq_radial_index, germ_obstruction,
                    gsv_from_relation, verify_theorem)
from .poset import PosetFunction, StratGermData, Stratum, m_from_n, m_tilde, mobius, n_from_eu, validate, zeta

__version__ = "0.1.0"
