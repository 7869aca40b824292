"""Kneser p-neighbors of even unimodular lattices.

Tools for the three interesting ranks: 8, 16, and 24.  Builds the
classical even unimodular lattices, classifies rank-24 lattices by their
root systems, enumerates and samples p-neighbors, assembles neighbor
matrices and graphs, and checks the modular-form identities those
matrices satisfy.
"""

from .lattice import (
    DiscriminantGroup,
    Lattice,
    canonical_basis,
    determinant,
    direct_sum,
    discriminant_group,
    is_even_unimodular,
    load_lattice,
    save_lattice,
    sublattice_index,
)
from .shortvec import degree2_count, theta_prefix, vectors_of_norm
from .roots import (
    NIEMEIER_CLASSES,
    NIEMEIER_LABELS,
    NiemeierClass,
    RootComponent,
    RootSystem,
    cartan_gram,
    classify_gram16,
    classify_gram24,
    decompose,
    is_equi_coxeter,
    niemeier_label,
)
from .neighbors import (
    MAX_PRIME,
    IsotropicLine,
    isotropic_lines,
    lift_isotropic,
    line_count,
    neighbor,
    sample_isotropic_line,
    sample_isotropic_lines,
)
from .catalog import (
    GOLAY_GENERATOR,
    GlueData,
    LatticeStore,
    build_Dn_plus,
    build_a1_24,
    build_d16_e8,
    build_e8_cubed,
    build_leech,
    discover_classes,
    glue,
    golay_codewords,
)
from .hecke import (
    RANK16_LABELS,
    LeechProbeReport,
    NeighborMatrix,
    build_e8_pair,
    fixture_adjacency24,
    graph_diameter,
    leech_criterion_probe,
    rank16_second_eigenvalue,
    rank16_theorem_matrix,
    sampled_adjacency24,
    tp_matrix_rank16,
    tp_row_rank24,
    verify_rank16,
)
from .modforms import (
    GENUS2_TABLE,
    Genus2EigenTable,
    QSeries,
    cuspform_basis,
    delta,
    dim_cuspforms,
    eigen_lookup,
    eigenform,
    harder_check,
    r_leech,
    tau,
    eisenstein,
)

__version__ = "0.1.0"

__all__ = [
    "Lattice",
    "DiscriminantGroup",
    "canonical_basis",
    "determinant",
    "direct_sum",
    "discriminant_group",
    "is_even_unimodular",
    "load_lattice",
    "save_lattice",
    "sublattice_index",
    "vectors_of_norm",
    "theta_prefix",
    "degree2_count",
    "RootComponent",
    "RootSystem",
    "NiemeierClass",
    "NIEMEIER_CLASSES",
    "NIEMEIER_LABELS",
    "cartan_gram",
    "decompose",
    "is_equi_coxeter",
    "niemeier_label",
    "classify_gram16",
    "classify_gram24",
    "IsotropicLine",
    "MAX_PRIME",
    "line_count",
    "isotropic_lines",
    "sample_isotropic_line",
    "sample_isotropic_lines",
    "lift_isotropic",
    "neighbor",
    "GOLAY_GENERATOR",
    "golay_codewords",
    "GlueData",
    "glue",
    "build_Dn_plus",
    "build_leech",
    "build_a1_24",
    "build_d16_e8",
    "build_e8_cubed",
    "LatticeStore",
    "discover_classes",
    "NeighborMatrix",
    "RANK16_LABELS",
    "build_e8_pair",
    "fixture_adjacency24",
    "tp_matrix_rank16",
    "rank16_theorem_matrix",
    "rank16_second_eigenvalue",
    "verify_rank16",
    "tp_row_rank24",
    "sampled_adjacency24",
    "graph_diameter",
    "LeechProbeReport",
    "leech_criterion_probe",
    "QSeries",
    "Genus2EigenTable",
    "GENUS2_TABLE",
    "delta",
    "tau",
    "eisenstein",
    "eigenform",
    "cuspform_basis",
    "dim_cuspforms",
    "eigen_lookup",
    "harder_check",
    "r_leech",
    "__version__",
]
