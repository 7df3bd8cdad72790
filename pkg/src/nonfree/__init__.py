"""Certified non-free rationals for the group generated by two opposite
parabolic matrices A = [[1, 1], [0, 1]] and B_q = [[1, 0], [q, 1]]."""

from .algebra import IntPoly, Mat2, Word, eval_word, eval_word_symbolic, free_reduce, word_concat, word_inverse
from .halfrel import Certificate, certify_half_relation, is_half_relation, phr_poly

__version__ = "0.1.0"
