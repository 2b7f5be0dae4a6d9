"""Exact Kauffman bracket skein module computations from mixed braid words.

Two independent evaluation paths for links presented as mixed braid closures
in the solid torus: an algebraic one through the Markov trace on the type-B
Temperley-Lieb tower, and a diagrammatic one through the exhaustive bracket
state sum.  On top of both sit the band-move equation systems whose solution
presents the skein module of S^1 x S^2.
"""

from .coeffs import (
    LaurentPoly,
    LocalizedCoeff,
    MixedVariableError,
    SubstitutionRule,
    SUBSTITUTIONS,
    U_TO_A_SQUARED,
    U_TO_NEG_A_INV_SQUARED,
    loop_value,
    stabilization_trace_value,
    substitute,
)
from .basis import SkeinVector, coil_product, merge_components, parallel_power
from .braid import (
    BraidBandMove,
    Conjugation,
    LoopConjugation,
    LoopMonomial,
    MixedBraidWord,
    ParseError,
    Stabilization,
    apply_move,
    band_move_word,
    compare_monomials,
    compare_pairs,
    empty_word,
    expand_looping,
    exponent_sum,
    free_reduce,
    index_of,
    parse_word,
    t_power,
)
from .annular import (
    DEFAULT_STATE_CAP,
    MixedSignPassesError,
    SmoothingState,
    StateCapExceeded,
    TerminalState,
    evaluate_closure,
    merge_windings,
    smooth_states,
    trace_components,
)
from .tl import (
    AlgebraElement,
    TracePolynomial,
    UnsupportedWordError,
    algebra_class,
    bracket_invariant,
    convert_to_primed,
    expand_twisted_loop,
    linearize,
    loop_monomial,
    markov_trace,
    quadratic_reduce,
    reduce_to_coils,
    tl_ideal_element,
    trace_monomial,
    trace_of_element,
)
from .system import (
    EquationRow,
    Presentation,
    TwistEquation,
    SlideExpression,
    slide_image,
    build_presentation,
    eliminate_twist_system,
    equation_for,
    longitude_word,
    reduce_modulo_rows,
    longitude_power_class,
    torsion_ideal_comparison,
    twist_equation_for,
    slide_image_expansion,
)
from .cli import main, verify_suite

__all__ = [name for name in dir() if not name.startswith("_")]
