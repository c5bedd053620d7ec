"""Exact computations in the tautological ring of a Jacobian."""
from .corealg import Rational, count_partitions, enum_partitions, gen_binom
from .polyring import Monomial, Polynomial, format_poly, parse_poly
from .operators import op_D, op_D_power, op_e, op_f, op_h
from .quotient import dim_cR, dims, ideal_cell, member_of_I, mu, sl2_decomp
from .vdgk import conj_dim, conj_multiplicity, verify_conjecture
from .herbaut import gen_B, gen_C, psi, psi_zero_search
from .chowtaut import ChowPoly, DivisorSymbol, d_chow, herbaut_modrat

__version__ = "0.1.0"
