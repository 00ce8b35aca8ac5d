"""Full flags, total positivity and positivity of flag tuples in SL_d."""

from .eigen import ProxData, collar_quantities, eigen_data, eigenvalues
from .flag import (
    FullFlag,
    act,
    flag_from_columns,
    flag_from_point,
    opposite_flag,
    standard_flag,
    transverse,
)
from .positivity import (
    PositivityVerdict,
    build_positive_chain,
    in_diamond,
    normalizer,
    positive_chain,
    quad_positive,
    simultaneous_twist,
    simultaneous_twist_enumerated,
    triple_positive,
    tuple_positive,
    tuple_positive_direct,
    unipotent_param,
)
from .tp import (
    BOUNDARY,
    NOT_POSITIVE,
    TOTALLY_POSITIVE,
    TPVerdict,
    elementary,
    from_parameters,
    is_totally_positive,
    neville_multipliers,
    reduced_word,
    sign_vectors,
    superdiagonal_twist,
    tp_bruteforce,
    twist,
)
