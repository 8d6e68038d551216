"""Exact and Monte-Carlo toolkit for increasing-subsequence statistics in
random words, uniform permutations and riffle shuffles."""

from .distributions import (BudgetError, DistTable, dist_perm_stat,
                            dist_riffle, dist_word_stat, kolmogorov_distance,
                            stochastic_order_leq, tv_bound_general,
                            tv_bound_uniform, tv_distance)
from .empirics import (MCReport, clt_diagnostic, mc_run, normal_cdf,
                       schur_extremality_check, steele_degeneracy_diag)
from .exactarith import (TruncPoly, binomial, compositions, gen_binomial,
                         multinomial, series_coeff_cyc2, series_coeff_cyc3)
from .kernels import BACKEND, HAVE_EXT
from .moments import (AsympConstant, MomentValue, ProbVector,
                      bounds_second_moment_total_uniform, cyc2_coeff_closed,
                      cyc3_coeff_closed, inv_word_moments, leading_coeffs,
                      mean_inc_perm, mean_total_perm, mean_total_word_asymp,
                      mean_total_words, mean_weak_inc_general,
                      mean_weak_inc_uniform, second_moment_inc_perm,
                      second_moment_total_perm, second_moment_weak_inc_uniform,
                      steele_moments, var_asymp_const_perm,
                      var_asymp_const_word)
from .sampling import (CoupledPair, dominance_coupling,
                       dominance_coupling_batch, riffle_forward,
                       riffle_inverse, sample_uniform_perm, sample_word)
from .seqstats import (count_strict_inc_k, count_strict_inc_total,
                       count_weak_inc_k, count_weak_inc_total, inversions,
                       steele_similarity)

__version__ = "0.1.0"
