"""Exact computations in level-two degenerate cyclotomic Hecke algebras, their
pattern-avoiding quotients, and the fused permutations algebra."""

from .errors import *  # noqa: F401,F403
from .fused import DiagramElement, FusedPerm, enumerate_fused, multiply_diagrams, phi
from .hecke import HeckeElement, embed, jucys_murphy, mul
from .idempotents import CornerLabel, complete_family, corner_idempotent, f_tableau
from .quotients import build_reduction_table, reduce, spec_A, spec_A_cap
from .scalars import GENERIC, RatFunc, ScalarMode
from .seminormal import build_rep, evaluate
from .signed_words import AVOIDING, X1, avoiding_cap, enumerate_words
from .tableaux import StdBiTableau, bratteli, enumerate_bipartitions, enumerate_std

__version__ = "0.1.0"
