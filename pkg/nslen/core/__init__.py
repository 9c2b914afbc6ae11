"""Core subpackage for nslen: constructions, words, radicals, lengths and Sylow subgroups.

This module re-exports the main entry points so callers can import from
``nslen.core`` directly (e.g. ``from nslen.core import lambda_p``).
"""

from .constructions import StructureMetadata, build, direct_product, standard_corpus, wreath_product
from .lengths import CanonicalSeries, canonical_series, lambda_, lambda_nonsoluble_direct, lambda_p, sigma
from .radicals import (
	FactorSystem,
	is_p_soluble,
	minimal_normals,
	p_kernel,
	p_soluble_radical,
	restricted_core,
	semisimple_socle,
	soluble_radical,
)
from .sylow import SylowResult, sylow_subgroup
from .words import ValueSet, Word, parse_word, value_set, verbal_exponent, verbal_subgroup, word_builder

__all__ = [
	"CanonicalSeries",
	"FactorSystem",
	"StructureMetadata",
	"SylowResult",
	"ValueSet",
	"Word",
	"build",
	"canonical_series",
	"direct_product",
	"is_p_soluble",
	"lambda_",
	"lambda_nonsoluble_direct",
	"lambda_p",
	"minimal_normals",
	"p_kernel",
	"p_soluble_radical",
	"parse_word",
	"restricted_core",
	"semisimple_socle",
	"sigma",
	"soluble_radical",
	"standard_corpus",
	"sylow_subgroup",
	"value_set",
	"verbal_exponent",
	"verbal_subgroup",
	"word_builder",
	"wreath_product",
]
