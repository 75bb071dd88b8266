"""
Decide whether two-view point correspondences admit a chiral projective
reconstruction, one with every world point in front of both cameras, and
construct a verified reconstruction or a certificate of impossibility.
"""

__copyright__ = """
Copyright (C) 2024 chirality contributors
"""

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

from .arithmetic import (
    ArithmeticContext, ExactArithmeticContext, FloatArithmeticContext, Scalar,
    ScalarLike, arithmetic_context, get_arithmetic_context,
    get_registered_arithmetic_contexts, get_thread_count, get_witness_budget,
    make_arithmetic_context, register_arithmetic_context,
    set_arithmetic_context, to_fraction)
from .census import (
    CensusStats, PerturbationReport, SampleConfig, census_run,
    perturbation_probe, sample_pairs)
from .decide import (
    ArrangementCertificate, CornerCertificate, Decision, DecisionStatus,
    SubsetCertificate, Witness, decide, decide_k4, decide_k5, decide_k_ge_6,
    decide_k_le_3)
from .double_six import (
    Conic, DegenerateConics, DegeneratePencil, DeterminantalRepresentation,
    DimensionError, DoubleSix, FactorizationError, IncidenceViolation,
    PencilDegenerate, RegionReport, SurfaceLine, determinantal_rep, fit_conic,
    fourth_intersection, region_boundary_report, residual_line,
    schlafli_verify, sixth_point_pair, wall_conic, wall_line)
from .epipolar import (
    Corner, DegenerateCorner, DegenerateWall, EpipolarViolation,
    FundamentalCandidate, GenericityReport, LPBasis, RankError, WallPencil,
    adjoint3, constrained_solutions, corner, data_matrix, genericity_check,
    irreducibility_hint_k4, is_p_regular, is_regular, kernels, lp_basis,
    smooth_point_check, wall_corner_parameters, wall_pencil)
from .feasibility import strictly_feasible_point
from .geometry import (
    Camera, GeometryError, InfiniteCamera, InfinitePoint, InvalidPairSet,
    PairSet, cone_member, cross, depth_sign, det3,
    homography_from_correspondences, projectively_equal, rank_of_points, skew)
from .inequalities import (
    D, ChiralSignTable, CornerReport, DegenerateInput, InconclusiveD,
    SignDisagreement, chirotope_match, corner_sign_test, corner_sign_tests, g,
    sign_agreement, sign_table)
from .pytest import (
    PytestArithmeticContextFactory, pytest_generate_tests_for_arithmetic_contexts,
    register_pytest_arithmetic_context_factory)
from .reconstruct import (
    ChiralCertificate, ChiralityConditions, IrregularPair, NotFeasible,
    Reconstruction, UpgradeInfeasible, chiral_upgrade, chirality_conditions,
    factor_fundamental, reconstruct_from_X, reconstruction_sign_agreement,
    triangulate, verify_chiral)


__all__ = (
        "ArithmeticContext", "ExactArithmeticContext", "FloatArithmeticContext",
        "Scalar", "ScalarLike", "to_fraction",
        "register_arithmetic_context", "get_registered_arithmetic_contexts",
        "make_arithmetic_context", "get_arithmetic_context",
        "set_arithmetic_context", "arithmetic_context",
        "get_thread_count", "get_witness_budget",

        "GeometryError", "InvalidPairSet", "InfinitePoint", "InfiniteCamera",
        "skew", "cross", "det3", "rank_of_points", "projectively_equal",
        "cone_member", "homography_from_correspondences",
        "Camera", "depth_sign", "PairSet",

        "strictly_feasible_point",

        "RankError", "EpipolarViolation", "DegenerateCorner", "DegenerateWall",
        "data_matrix", "constrained_solutions", "LPBasis", "lp_basis",
        "adjoint3", "kernels", "FundamentalCandidate",
        "is_regular", "is_p_regular",
        "WallPencil", "wall_pencil", "wall_corner_parameters",
        "Corner", "corner", "smooth_point_check",
        "GenericityReport", "genericity_check", "irreducibility_hint_k4",

        "DegenerateInput", "InconclusiveD", "SignDisagreement",
        "g", "ChiralSignTable", "sign_table", "D",
        "CornerReport", "corner_sign_test", "corner_sign_tests",
        "chirotope_match", "sign_agreement",

        "IrregularPair", "UpgradeInfeasible", "NotFeasible",
        "Reconstruction", "ChiralCertificate",
        "factor_fundamental", "triangulate", "verify_chiral", "chiral_upgrade",
        "reconstruct_from_X", "ChiralityConditions", "chirality_conditions",
        "reconstruction_sign_agreement",

        "DecisionStatus", "Witness", "Decision",
        "CornerCertificate", "ArrangementCertificate", "SubsetCertificate",
        "decide", "decide_k_le_3", "decide_k4", "decide_k5", "decide_k_ge_6",

        "DimensionError", "DegeneratePencil", "PencilDegenerate",
        "DegenerateConics", "FactorizationError", "IncidenceViolation",
        "DeterminantalRepresentation", "determinantal_rep",
        "Conic", "fit_conic", "wall_conic", "fourth_intersection",
        "sixth_point_pair", "SurfaceLine", "wall_line", "residual_line",
        "DoubleSix", "schlafli_verify", "RegionReport", "region_boundary_report",

        "SampleConfig", "sample_pairs", "CensusStats", "census_run",
        "PerturbationReport", "perturbation_probe",

        "PytestArithmeticContextFactory",
        "register_pytest_arithmetic_context_factory",
        "pytest_generate_tests_for_arithmetic_contexts",
        )


def _acf() -> ArithmeticContext:
    """A tiny undocumented function to pass to tests that take an
    ``actx_factory`` argument when running them from the command line.
    """
    return ExactArithmeticContext()

# vim: foldmethod=marker
