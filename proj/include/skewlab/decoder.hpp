#pragma once

#include "skewlab/codes.hpp"

namespace skewlab {

/// Outcome of a bounded-distance decoding attempt. On success the error
/// weight is at most the requested radius and re-encoding the message
/// reproduces the codeword exactly; both are asserted before returning.
struct DecodeResult {
  bool success = false;
  std::string reason;                  // set on failure
  std::optional<SkewPolynomial> message;
  std::vector<FieldElement> codeword;
  std::vector<FieldElement> error;
};

/// Unique decoder for Hamming errors of weight at most t <= (n-k)/2.
///
/// Solves the key equation over F_{q^m}: find Q0 (deg <= k+t-1) and Q1
/// (deg <= t), not both zero, with
///     rem_eval(Q0, alpha_i) + op_eval(Q1, r_i lambda_i^{-1}, alpha_i) = 0
/// for every position i, then recovers the message as the exact left quotient
/// of -Q0 by Q1. Whenever some codeword lies within distance t of r, the
/// kernel is nontrivial, every nontrivial solution has Q1 != 0, the division
/// is exact, and the re-encoded word is that codeword. Failure is returned
/// (never a silent wrong answer) when any of these checks does not hold.
DecodeResult decode_gsrs(const GsrsSpec& spec, std::span<const FieldElement> received,
                         std::size_t t);

/// Exact nearest-codeword search by enumeration (test oracle). Refuses with
/// BudgetExceeded when order^k exceeds the budget.
DecodeResult brute_force_decode(const GsrsSpec& spec, std::span<const FieldElement> received,
                                std::size_t t, std::uint64_t budget = 1ull << 20);

/// Decodes a GLRS code by routing through its equal GSRS representation.
DecodeResult decode_glrs(const GlrsSpec& spec, std::span<const FieldElement> received,
                         std::size_t t);

}  // namespace skewlab
