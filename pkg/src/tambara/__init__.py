"""Exact computations with Tambara functors over small finite groups."""

from .groups import FiniteGroup, by_name, cyclic, symmetric, trivial
from .gsets import GMap, GSet, coset_space, dependent_product, orbit_decompose, pullback
from .bispans import Bispan, compose, n_of, r_of, t_of
from .rings import GaloisField, ModRing, field, idempotents
from .burnside import BurnsideRing, burnside_norm, mult_induction_oracle
from .functor import TambaraFunctor, TambaraHom, check_axioms, check_hom, enumerate_homs, eval_bispan
from .constructions import burnside_tambara, coinduce, constant, fixed_point, frobenius_fixed_point, restrict
from .ideals import ideal_closure, is_field_like, quotient
from .free_poly import eval_expr, integrality_witness, level_generators, parse_expr
from .classification import (algebraic_closure_map, check_fixed_point_form, classify,
                             find_coinduced_splitting, module_decomposition_check)

__version__ = "0.1.0"
