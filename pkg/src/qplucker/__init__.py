"""Non-commutative quasi-Plücker and flag coordinate algebras.

Presentations, quadratic duals, Gröbner bases, Hilbert series, the
differential on the k=2 dual, and an exact numerical oracle over the
rationals and the rational quaternions.
"""

__version__ = "0.1.0"

from .exactmath import Matrix, Quaternion
from .freealg import FreePoly, Gen, OrderSpec, parse_gen, parse_word, word_str
from .groebner import (
    RewriteSystem,
    check_nonhomogeneous_consistency,
    complete,
    count_normal_words,
    normal_form,
    normal_words,
    orient,
)
from .hilbert import closed_form_B2_coefficient, dims_by_enumeration, dims_by_transfer_matrix, series_reciprocal
from .presentations import (
    Presentation,
    build_B,
    build_C,
    build_F,
    build_F0,
    build_G,
    build_Q,
    build_Q0,
    build_Q_colimit,
    build_R,
    build_R0,
    build_R_colimit,
)
from .quaddual import quadratic_dual, verify_dual_matches
