"""Exact moments and cumulants of creation, annihilation and gauge operators on deformed Fock spaces."""
from .algebra import Poly, poly_arith, poly_eval, power_sums, q_factorial, q_int
from .errors import DomainError, InvariantViolation, ParseError
from .partitions import (Permutation, SetPartition, crossings_nc, cycle_structure,
                         enumerate_pair_partitions, enumerate_partitions, mobius, nc_hat,
                         rc, rrc)
from .words import (FlatWord, OpToken, PowerWord, canonical_matching, classify_path,
                    flatten, parse_word)
from .digraph_poly import (WeightedDigraph, cover_poly, cycle_cover_poly, cycle_covers,
                           cycle_indicator, word_digraph)
from .fock_sim import (FockVector, NModel, Operator, QModel, VKModel, make_model,
                       pair_partition_expectation, vacuum_expectation)
from .cumulants import (cumulant, cumulant_table, good_cumulant, moment_table, phi_pi,
                        product_formula_lhs, product_formula_rhs, toeplitz_cumulant,
                        vanishing_suite)
from .theorems import (TheoremReport, thm_cycle_cover, thm_cycle_indicator,
                       thm_digraph_state_dependence, thm_q_factorization, verify_all)

__version__ = "0.1.0"
