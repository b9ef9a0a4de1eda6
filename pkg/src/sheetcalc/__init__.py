"""Exact-arithmetic calculator for sheet equations and standard identities
in the classical simple complex Lie algebras."""

__version__ = "0.1.0"

from .rootdata import CartanType, Root, RootSystem, build_root_system, exponents, parse_cartan_type
from .chevalley import (LieAlgebra, LieElement, build_lie_algebra, orbit_dim,
                        regular_nilpotent, sample_elements, verify_structure)
from .polyring import Poly, PolyRing, PolySpace, is_harmonic, lie_derivative
from .exterior import (ExtElement, basis_wedge, coboundary, dx_power_profile,
                       ext_pairing, ext_scalar, ext_vector, gamma_hom)
from .gammamap import (Matching, enumerate_matchings, gamma_map, gamma_map_basis,
                       iter_matchings, rk_space, variety_check)
from .invariants import (GeneratorSet, MatrixRep, QMatrix, adjoint_rep,
                         chevalley_generators, defining_rep, minors_space,
                         pfaffian, q_matrix)
from .identities import (epsilon, nilpotency_index, std_identity,
                         verify_standard_theorems)
from .borelideals import (RootIdeal, casimir_eigenvalue, casimir_on_wedge,
                          enumerate_ideals, partition_count, verify_ideal_theorems,
                          weyl_dim)
from .errors import (BudgetError, ConfigurationError, GeneratorConstructionError,
                     RepresentationError)
