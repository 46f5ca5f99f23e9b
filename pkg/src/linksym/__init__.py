"""Link symmetric functions and Poincare series of link homology, with checks
against Macdonald eigenoperators, all in exact arithmetic."""

from .macdonald import b_mu, delta, htilde, mac_expand, nabla, nabla_inv, pieri_d
from .poincare import (
    f_barred_fubini,
    f_recurrence,
    f_truncated_infinite,
    f_via_inner_product,
)
from .qt_arith import Poly, RatFunc, RationalQAT
from .symfunc import (
    SymFunc,
    basis_e,
    basis_h,
    basis_m,
    basis_p,
    hall_inner,
    link_sym,
    link_sym_normalized,
)
from .words import BarredWord, area, dinv, enumerate_barred_fubini

__version__ = "0.1.0"
