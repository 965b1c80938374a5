"""Growth functions of Cayley graphs, the U-transform and isoperimetric lower bounds."""

from .cayley import (
    ElementCapExceeded,
    GrowthTable,
    InsufficientRadius,
    growth_table,
    inverse_growth,
    inverse_growth_strict,
    sphere_sizes,
    table_from_csv,
    table_to_csv,
)
from .groups import (
    DihedralGroup,
    FreeAbelianGroup,
    FreeGroup,
    Group,
    GroupSpec,
    GroupSpecError,
    HeisenbergGroup,
    LamplighterGroup,
    TableGroup,
    build_group,
    cyclic_spec,
)
from .isoperimetry import (
    BoundReport,
    FolnerResult,
    ResourceCapExceeded,
    bound_report,
    cheeger,
    cheeger_report,
    connected_profile,
    folner_phi,
    folner_value,
    laplacian_lambda1,
    profile,
    verify_main_inequality,
)
from .subsets import FiniteSubset, all_subsets, enumerate_connected, random_connected_subset
from .transform import (
    Custom,
    DomainError,
    Polynomial,
    StretchedExp,
    TransformResult,
    lambert_f,
    legendre,
    rho,
    strong_lower_bound,
    tau,
    tspg_check,
    u_continuous,
    u_discrete,
)

__version__ = "0.1.0"
