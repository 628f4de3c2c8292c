#pragma once

#include <cstdint>
#include <vector>

#include "zsq/report.hpp"

namespace zsq {

/// Explicit feasibility guards; exceeding one raises FeasibilityError rather
/// than silently truncating.
struct SearchLimits {
    int exhaustive_max_n = 5;        // enumeration-backed invariants and verifications
    int aut_max_n = kDefaultAutGuard;
    int mult_exhaustive_max_mn = 4;  // exhaustive tier of verify_multiplicative
    int fixedprop_max_n = 4;
    int hamidoune_max_n = 4;
    int threads = 1;                 // worker pool width; results are order-normalized
};

/// Least L such that every S over C_n + C_n with |S| >= L has a nontrivial
/// zero-sum subsequence of length <= ell. Computable range: ell in [n, 2n-1].
int compute_s_le(int n, int ell, const SearchLimits& limits = {});
SearchReport compute_s_le_report(int n, int ell, const SearchLimits& limits = {});

/// Davenport constant of C_n + C_n via zero-sum-free enumeration.
int compute_davenport(int n, const SearchLimits& limits = {});
SearchReport compute_davenport_report(int n, const SearchLimits& limits = {});

/// All S with |S| = 2n-2+k and no nontrivial zero-sum of length <= 2n-1-k,
/// one canonical representative per automorphism orbit, sorted.
std::vector<Sequence> enumerate_extremal(int n, int k, const SearchLimits& limits = {});
SearchReport enumerate_extremal_report(int n, int k, const SearchLimits& limits = {});

/// Match every extremal orbit representative against the conjectured forms.
SearchReport verify_conjecture(int n, int k, const SearchLimits& limits = {});

/// Two-tier check of the multiplicative reduction: a construction tier
/// (extremality + block decomposition + associated-sequence checks on the
/// conjectured sequence in C_mn + C_mn) and, for mn within the guard, a full
/// exhaustive tier.
SearchReport verify_multiplicative(int m, int n, int k_m, int k_n, const SearchLimits& limits = {});

/// Randomized exact check of the subsum lower bound
/// |Sigma_|G|(S)| >= |S| - |G| + k - 1 on instances passing its hypotheses.
/// `trials` counts instances that survive the filter and get evaluated.
SearchReport verify_hamidoune(int n, int trials, std::uint64_t seed,
                              const SearchLimits& limits = {});

/// Exhaustive dichotomy check for zero-sum S with |S| = sn-1 and no
/// nontrivial zero-sum of length <= n-1.
SearchReport verify_fixedprop(int n, int s, const SearchLimits& limits = {});

/// Both transfer directions between extremal levels k and k+1.
SearchReport round_trip_lemmas(int n, int k, const SearchLimits& limits = {});

}  // namespace zsq
