"""Edge curvature of simple graphs: Balanced Forman, exact Ollivier-Ricci, and
solver-free transfer bounds between the two."""

__version__ = "0.1.0"

from .batch import EdgeStats, edge_stats
from .bounds import (CurvatureRecord, EnvelopeTerms, bf_curvature, coverage_theta,
                     envelope_upper, jl_lower_lazy, jl_lower_nonlazy, lazy_transfer_lower)
from .errors import (ConnectivityError, CurvatureError, DomainError, GenerationError,
                     GraphFormatError, NormalizationError, ParameterError)
from .generators import ModelSpec, generate
from .graph import EdgeKey, Graph, load_edge_list, truncated_distances, write_edge_list
from .local_stats import (AlphaProfile, ComparisonModuli, LazyParams, LocalStats,
                          NeighborhoodPartition, c4_graph, comparison_moduli, lazy_params,
                          local_stats, partition)
from .moduli import (EdgeBundle, TransferBand, edge_bundle, graph_bundle, phi_bf_to_or,
                     phi_or_to_bf, psi_bf_to_or, psi_or_to_bf)
from .transport import (SparseMeasure, TransportPlan, lazy_measure, or0_curvature,
                        or_curvature, w1_exact)
from .analysis import EdgeReport, ReportOptions, SummaryStats, compute_edge_reports, emit, summarize
