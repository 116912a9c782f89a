"""Catalytic randomness: how much randomness a quantum state or channel can
lend without being consumed, and the constructions that extract it."""
from catrand.bipartite import (
    BipartiteState,
    BlockType,
    DelocalizedCatalyticDecomposition,
    EssentialDecomposition,
    commutant,
    dcd,
    delocalized_catalytic_entropy,
    delocalized_entropy,
    dreo,
    dreo_spectrum,
    embed_ssr_as_extension,
    essential_decomposition,
    is_tq_tq,
    least_disordered_spectrum,
    refine_with_superselection,
)
from catrand.catalysis import (
    CatalysisPlan,
    ChainTrace,
    ClassicalPermutation,
    SuperunitaryPair,
    can_generate_randomness,
    classical_catalytic_check,
    construct_dreo_plan,
    dynamical_catalysis_apply,
    induced_map,
    is_catalytic_unitary,
    is_compatible,
    no_stealth_check,
    run_delocalized_catalysis,
    simulate_chain,
    superunitary_checks,
    verify_catalysis,
)
from catrand.channels import (
    QuantumChannel,
    channel_catalytic_entropy,
    choi_from_kraus,
    kraus_from_choi,
    make_depolarizing,
    make_measure_prepare,
    make_pinching,
    make_preparation,
    map_entropy,
    supertrace,
)
from catrand.errors import (
    CatrandError,
    ClassificationError,
    DimensionError,
    InvalidChannelError,
    InvalidObjectError,
    InvalidStateError,
    NotCatalyticError,
    ParseError,
    ResourceCapError,
)
from catrand.states import (
    CatalyticDecomposition,
    DensityOperator,
    SuperselectionStructure,
    catalytic_decomposition,
    catalytic_renyi_entropy,
    majorizes,
    renyi_entropy,
    reo,
    von_neumann_entropy,
)

__version__ = "0.1.0"
