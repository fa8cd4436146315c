"""Exact verification of quasi-strongly-regular Cayley graphs Gamma_H(G)."""

from ._kernels import backend
from .cayley import (
    CayleyGraph,
    ConnectionSet,
    cayley_graph,
    component_graph,
    component_isomorphism_report,
    connection_set,
    connection_set_SH,
    gamma_graph,
    verify_alpha_isomorphism,
)
from .characters import abelian_cayley_spectrum, char_sum, character_table, decompose_abelian, fixed_dim_sum_check
from .closed_form import predicted_partial, predicted_spectrum
from .corpus import group_from_spec, parse_group_spec
from .errors import *  # noqa: F401,F403
from .groups import (
    FiniteGroup,
    SubgroupData,
    all_subgroups,
    cyclic_group,
    dihedral_group,
    direct_product,
    direct_square,
    group_from_table,
    make_subgroup,
    proper_nontrivial_subgroups,
    subgroup_generated,
    symmetric_group,
)
from .qsrg import QsrgParams, qsrg_parameters
from .spectrum import Approx, Spectrum, full_spectrum, is_integral, isospectral

__version__ = "0.1.0"
