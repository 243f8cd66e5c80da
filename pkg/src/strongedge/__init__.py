"""Strong list edge coloring of bounded-degree graphs and exact Combinatorial
Nullstellensatz coefficient computations for ``C_n^+`` configurations."""

from .errors import GenerationError, InputError, SequencingError
from .graph import (
    Configuration,
    ConflictGraph,
    Graph,
    build_graph,
    conflict_graph,
    edge_weight,
    gen_cnplus,
    gen_random_cubic,
    gen_random_weight6,
    girth,
    induced_config,
    sees,
)
from .coloring import (
    ListAssignment,
    StrongColoring,
    availability,
    extend_partial,
    solve_strong_k,
    solve_strong_list,
    strong_chromatic_index,
    verify,
)
from .polynomial import (
    CapVector,
    FactorProduct,
    Monomial,
    Polynomial,
    coefficient,
    eliminate_variable,
    eta_derivative_oracle,
    eta_of_product,
    eta_partial,
    expand_capped,
)
from .certifier import (
    Certificate,
    ClaimReport,
    build_claim2,
    build_p1,
    check_certificate,
    check_subproduct,
    search_monomial,
    soundness_trial,
    verify_claim1,
    verify_claim2_direct,
    verify_claim2_staged,
    verify_telescope_step,
)

__version__ = "0.1.0"
