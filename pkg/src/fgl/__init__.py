"""Exact fusion-graph construction and verification for PSL2(q), Sz(q), PSU3(q)."""

from .formulas import (IntersectionArray, InvalidQ, cn_graph_structure,
                       deza_pair, is_strict, krmu, p22_numbers,
                       predicted_chi_array, predicted_deza_params)
from .fusion import (PiSpec, build_fusion_graph, chi_graph,
                     common_neighbor_graph, phi_graph, pi_graph)
from .gf2 import FieldCtx, field_ctx
from .graphs import (DdgCert, DezaCert, Graph, antipodal_classes,
                     antipodal_cover3_certificate, common_neighbor_spectrum,
                     deza_check, ddg_check, diameter, distance_power,
                     distances_from, edge_regular_lambda, intersection_array,
                     recognize_clique_union, recognize_complete_multipartite)
from .groups import (GroupSpec, InvolutionClass, SzEvenExponent, element_order,
                     generators, involution_class, make_group, product_order,
                     sylow_partition)
from .pipeline import VerificationReport, run_verify

__version__ = "0.1.0"
