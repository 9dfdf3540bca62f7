"""Computing with free idempotent generated semigroups over finite biorders."""

from .biorder import BiorderedSet, SemigroupTable, build_biorder, load_abstract_biorder
from .config import Caps, DEFAULT_CAPS
from .errors import (CapExceeded, FingerprintMismatch, GroupNotFiniteWithinCap, IgLabError,
                     MissingAutomaton, NonAssociative, NormalityViolation, NotInThisDClass,
                     NotNormal, NotSubgroup, SanityViolation)
from .gain import ContactAutomaton, GainGraph, build_contact
from .groups import (CosetDescriptor, DualProductGroup, FiniteGroup, Subgroup, coset_intersect,
                     cyclic_group, dual_product, klein_four, project1, project2, quotient,
                     subgroup_closure, symmetric_group, trivial_group)
from .rees import (PartialActionTable, RegularDClassModel, build_all_models, build_dclass_model,
                   coordinatize, ig_element, partial_actions, triple_to_word)
from .session import IgContext
from .theta import (CensusReport, SchutzDescriptor, ThetaEnv, ThetaResult, TripleChain,
                    dclass_census, green, ig_equal, schutzenberger, theta, theta_bar,
                    theta_bar_setwise, theta_setwise)
from .words import (EqualityVerdict, RFactorisation, RewriteStep, SeedWitness, WordEngine,
                    minimal_r_factorisation, oracle_equal, regularity_seed, rewrite_neighbors)

__version__ = "0.1.0"
