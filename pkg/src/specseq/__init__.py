"""Exact spectral sequences of (bi)filtered cochain complexes.

Eilenberg-Moore / Leray-Serre quartets of principal fibrations via the
normalized bar construction, with decalage, Tor tables over graded
algebras, and the degeneracy-criteria checkers, all in exact arithmetic
over Q or F_p.
"""

from .linalg import Field, GF2, GF3, GF5, QQ, Matrix, Subspace, field_by_name
from .complexes import (
    BifilteredComplex,
    CochainComplex,
    FilteredComplex,
    GradedSpace,
    cohomology_dims,
    gr,
    random_filtered_complex,
    tensor,
)
from .engine import (
    SpectralSequence,
    TriPage,
    check_decalage_relation,
    compute_spectral_sequence,
    decalage,
    degeneration_page,
    index_transform,
    zassenhaus_quartet,
)
from .dga import (
    AlgebraMorphism,
    DGAlgebra,
    DGModule,
    cohomology_dga,
    cohomology_morphism,
    free_cdga,
    group_cochain_dga,
    polynomial_dga,
    polynomial_quotient_dga,
    restrict_module,
    trivial_module,
    verify_dga,
)
from .bar import BarComplex, BarWord, build_bar, em_model
from .tor import (
    TorTable,
    analyze_morphism,
    check_freeness,
    is_regular_sequence,
    koszul_tor,
    steenrod_square,
    tor_via_bar,
    total_steenrod_square,
)
from .cw import CWModel, is_k_minimal
from .scenarios import Report, list_scenarios, run_scenario

__version__ = "0.1.0"
