#pragma once

#include <map>

#include "skewlab/codes.hpp"

namespace skewlab {

enum class Decision { StructuredGsrsLike, RandomLike, Inconclusive };

const char* to_string(Decision d);

/// Outcome of a square-dimension comparison. decision is Inconclusive exactly
/// when the two closed-form expectations coincide at the (possibly shortened)
/// parameters; an observed dimension that matches neither expectation is also
/// reported Inconclusive, with a note.
struct Verdict {
  Decision decision = Decision::Inconclusive;
  std::uint64_t observed_dim = 0;
  std::uint64_t expected_structured = 0;
  std::uint64_t expected_random = 0;
  std::size_t shortening_used = 0;
  std::string note;
};

/// Closed-form expected square dimensions (structured, random) for a code of
/// length n and dimension k over a degree-m extension:
///   structured: min(k(k+1)/2, n) for k <= m, else min(k(m+1) - m(m+1)/2, n)
///   random:     min(k(k+1)/2, n)
std::pair<std::uint64_t, std::uint64_t> expected_square_dims(std::uint64_t n, std::uint64_t k,
                                                             std::uint64_t m);

/// Compares the observed square dimension against both expectations. Only
/// decisive for m+1 < k < n/(m+1) + m/2, which is exactly when the
/// expectations differ.
Verdict naive_distinguish(const Matrix& g, unsigned m);

/// Shortens at s coordinates (default s = k - m - 2, the always-viable choice
/// for m+1 < k < n - (m^2+3m)/2), then applies the naive comparison to the
/// (n-s, k-s) result. Shortening positions are the first s coordinates after
/// a deterministic column sort, so serialized inputs give reproducible
/// verdicts.
Verdict shortened_distinguish(const Matrix& g, unsigned m,
                              std::optional<std::size_t> s = std::nullopt);

/// Stacks M, D_a(M), ..., D_a^j(M) where D_a raises entries through theta and
/// multiplies columnwise by a (one evaluation parameter per column). Returns
/// the stacked matrix and its rank.
std::pair<Matrix, std::size_t> overbeck_stack(const Matrix& g, const Automorphism& aut,
                                              std::span<const FieldElement> a, unsigned j);

/// Dimension of C + sigma(C) with sigma the q-Frobenius applied entrywise.
std::size_t frobenius_sum_dim(const Matrix& g);

/// Square dimensions over independent trials: per trial a fresh random
/// automorphism (s != 0, gcd(s, m) = 1), random P-independent locators,
/// random nonzero multipliers and a random monomial disguise, plus a fresh
/// random code of the same size. Trials split deterministically from the seed
/// and may run on several threads; the histograms do not depend on the thread
/// count.
struct ExperimentRow {
  std::map<std::uint64_t, std::size_t> gsrs_dims;
  std::map<std::uint64_t, std::size_t> random_dims;
};
ExperimentRow experiment_row(std::uint64_t q, unsigned m, std::size_t n, std::size_t k,
                             std::size_t trials, std::uint64_t seed, unsigned threads = 1);

/// Splits a prime power q = p^e; throws DomainError otherwise.
std::pair<unsigned, unsigned> split_prime_power(std::uint64_t q);

}  // namespace skewlab
