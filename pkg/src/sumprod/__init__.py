"""Exact sum-product statistics, energy certificates and dyadic decompositions."""
__version__ = "0.1.0"

from .core_sets import (EMPTY, FiniteSet, combine, dilate, inverse_set, make_set, parse_rational,
                        popular_slice, read_set_file, translate, write_set_file)
from .decompose import (DecompositionCertificate, ExtractionCertificate, cover_decompose,
                        decompose, fourth_cover_decompose, fourth_moment_extract,
                        partition_decompose, revalidate, third_moment_extract,
                        union_triangle_check)
from .energy import (RepHistogram, SigmaWitness, additive_energy, energy, katz_koester_check,
                     multiplicative_energy, popular_spectrum, rep_histogram, sigma_sup)
from .errors import (ConfigError, DomainError, InputError, InvalidWitnessError,
                     InvariantViolation, ResourceLimitError, SumProdError)
from .families import FamilySpec, generate
from .incidence import (Line, LineSet, PointSet, count_incidences, dstar_config, elekes_config,
                        st_bound)
from .report import EXPONENTS, Report, emit_report
from .structure_stats import (DUpperWitness, PoolConfig, chebyshev_tail, d_lower,
                              key_inequality_probe, sigma_bound_check, validate_D_witness)
