"""Exact-arithmetic homology of etale groupoids on totally disconnected
spaces: integer normal forms, finitely generated abelian groups, chain
complexes with the snake-lemma long exact sequence, SFT-groupoid invariants,
and the octagonal and Penrose tiling pipelines."""

from .zlinalg import (
    IntMatrix,
    smith_normal_form,
    hermite_normal_form,
    kernel_basis,
    cokernel,
    lattice_contains,
)
from .fgab import (
    FgAbGroup,
    GradedGroup,
    GroupHom,
    from_presentation,
    direct_sum,
    tensor,
    hom_kernel_image_cokernel,
)
from .chain import (
    ChainComplex,
    ChainMap,
    SubcomplexInclusion,
    FiniteTransformationGroupoid,
    homology,
    moore_complex,
    moore_homology,
    long_exact_sequence,
    kunneth_free,
)
from .exactseq import (
    ExactSequence,
    UndeterminedExtensionError,
    verify_exactness,
    rank_alternating_sum,
    solve_split,
)
from .sft import (
    DirectedGraph,
    SftPreconditionError,
    adjacency,
    sft_homology,
    doubled_graphs,
    factor_six_term,
    subgroupoid_six_term,
)
from .hyperplane import (
    QuadraticIrrational,
    QuadMod,
    OneDimSystem,
    H0Class,
    SignedParallelogram,
    one_dim_homology,
    interval_class,
    parallelogram_class,
    boundary_class,
    les_step,
    octagonal_pipeline,
    penrose_pipeline,
)

__version__ = "0.1.0"
