"""Maximal tori of finite classical groups: q-character counts, Steinberg decompositions and brute-force checks."""

from torusinv.weyl import (
    Family,
    GroupSpec,
    SignedPermutation,
    WeylClassLabel,
    canonical_representative,
    centralizer_order,
    enumerate_classes,
    fixed_weight_count,
    induced_trivial_by_cosets,
    induced_trivial_character,
)
from torusinv.tori import (
    CanonicalTorus,
    block_exponent,
    build_canonical_torus,
    is_q_character,
    nondivisibility_check,
    orbit_char_multiplicity,
)
from torusinv.stdecomp import (
    ClassFunctionOnTori,
    VirtualUnipotentVector,
    epsilon_sign,
    hc_steinberg_vector,
    is_l_controlled,
    steinberg_inner,
    steinberg_vector,
    theorem_th5_report,
    unipotent_part,
)

__version__ = "0.1.0"
