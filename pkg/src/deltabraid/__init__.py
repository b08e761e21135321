"""Braid-word algebra, delta moves, and exact link invariants.

The package is organized as:

- ``braids``: words in B_k, the word problem, pure braid generators
- ``combing``: layered normal form of pure braids, commutator collection
- ``delta``: delta moves as relator insertions, marked words, alternating sums
- ``laurent``: exact integer Laurent polynomials
- ``invariants``: Kauffman bracket / Jones / Alexander and series expansions
- ``lab``: certified samplers and verification experiments
- ``cli``: command-line interface (``deltabraid`` entry point)
"""

from .braids import (
    ArtinAutomorphism,
    BraidError,
    BraidWord,
    NotPureError,
    Permutation,
    PureGenSpec,
    StrandMismatchError,
    artin_action,
    braid_connected_sum,
    braid_eq,
    braid_pow,
    commutator,
    compose,
    conjugate_shift,
    embed,
    format_braid,
    identity_braid,
    invert,
    parse_braid,
    permutation,
    pure_gen,
    shift_braid,
    standard_lift,
)
from .combing import (
    CombedForm,
    CommutatorDecomposition,
    CommutatorFactor,
    ExponentVector,
    comb,
    decompose_layer,
    expand,
    exponent_vector,
    is_in_p_prime,
)
from .delta import (
    AltSumReport,
    DeltaInsertion,
    DeltaScript,
    MarkedBraid,
    alt_sum,
    apply_insertions,
    delta_n_witness,
    delta_trivialize,
    marked_word_from_trivialization,
)
from .invariants import (
    ClosureNotKnotError,
    LinkingMatrix,
    SeriesExpansion,
    alexander,
    closure_components,
    conway_a2,
    jones,
    jones_in_t,
    jones_series,
    kauffman_bracket,
    linking_matrix,
)
from .lab import (
    CommNode,
    ConjNode,
    GammaCertificate,
    IdealProduct,
    PPrimeFactor,
    PPrimeLeaf,
    ProdNode,
    SlideState,
    connected_sum_normalize,
    expand_ideal_product,
    sample_derived,
    sample_gamma,
    sample_p_prime,
    slide_step,
    validate_certificate,
    verify_theorem_2_1_AC,
)
from .laurent import LaurentPoly

__all__ = [name for name in dir() if not name.startswith("_")]
