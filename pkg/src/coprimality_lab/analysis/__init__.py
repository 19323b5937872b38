"""Valuations, co-primeness, confinement, irreducibility and degree growth."""

from .confinement import (
    CONFINED,
    INCONCLUSIVE,
    UNCONFINED,
    ConfinementProfile,
    DiscoveredFactor,
    alternating_orders,
    classify,
    confinement_profile,
    confinement_table,
    discover_factor_entries,
    discover_factors,
    laurent_units,
)
from .coprime import PAIR_ORDER, CoprimeVerdict, coprime, coprime_pairs, separated
from .growth import DegreeGrowth, degree_growth, term_degree
from .irreducible import (
    IRREDUCIBLE,
    REDUCIBLE,
    UNKNOWN,
    Certificate,
    IrreducibilityVerdict,
    irreducible_certify,
    replay_certificate,
    subset_degrees,
)
from .valuation import valuation, valuation_table

__all__ = [
    "CONFINED",
    "INCONCLUSIVE",
    "IRREDUCIBLE",
    "PAIR_ORDER",
    "REDUCIBLE",
    "UNCONFINED",
    "UNKNOWN",
    "Certificate",
    "ConfinementProfile",
    "CoprimeVerdict",
    "DegreeGrowth",
    "DiscoveredFactor",
    "IrreducibilityVerdict",
    "alternating_orders",
    "classify",
    "confinement_profile",
    "confinement_table",
    "coprime",
    "coprime_pairs",
    "degree_growth",
    "discover_factor_entries",
    "discover_factors",
    "irreducible_certify",
    "laurent_units",
    "replay_certificate",
    "separated",
    "subset_degrees",
    "term_degree",
    "valuation",
    "valuation_table",
]
