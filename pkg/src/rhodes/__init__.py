"""Finite semigroups: Green structure, the Rhodes radical, triangularization, automata."""

from .automata import (
    Dfa,
    MarkedProductSpec,
    count_factorizations,
    counter_matrix,
    ds_sync_word,
    is_synchronizing,
    is_unambiguous,
    shortest_sync_word,
    syntactic_monoid,
    transition_monoid,
)
from .congruence import (
    Congruence,
    congruence_closure,
    enumerate_congruences,
    ggm_congruence,
    is_ggm,
    is_v_congruence,
    kernel_category_local_monoid,
    quotient,
)
from .linrep import (
    block_form,
    composition_flag,
    regular_representation,
    span_ideal_nilpotent,
    triangularize,
)
from .radical import (
    FieldSpec,
    augmentation_ideal_nilpotent,
    is_lg_k,
    malcev_member,
    parse_field,
    rhodes_radical,
    rhodes_radical_oracle,
    unipotent_radical,
)
from .semigroup import (
    FiniteSemigroup,
    adjoin_identity,
    from_cayley_table,
    from_transformations,
    greens,
    is_0_simple,
    is_local_group,
    is_simple,
    local_monoid,
    maximal_subgroup,
    minimal_ideal,
    power_ideals,
)
from .varieties import VarietyId, classify_representability, parse_variety, variety_member
