#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skewlab/errors.hpp"
#include "skewlab/rng.hpp"

namespace skewlab {

/// Elements are their canonical integer encodings: enc(a) = sum_i c_i q^i with
/// c_i = sum_j d_ij p^j, a bijection onto [0, q^m).
using FieldElement = std::uint64_t;

using BigInt = boost::multiprecision::cpp_int;

/// The tower F_p in F_q = F_p^e in F_{q^m} with exact arithmetic.
///
/// A field handle is immutable after construction and may be shared read-only
/// across threads. Arithmetic uses full log/exp tables when the field order is
/// at or below `table_threshold`, digit-level schoolbook otherwise; the
/// representation choice never affects results.
class ExtField {
 public:
  static constexpr std::uint64_t kDefaultTableThreshold = 1ull << 20;
  static constexpr unsigned kMaxM = 48;

  /// Builds the tower. Empty moduli select the canonical ones: the monic
  /// irreducible of the right degree whose coefficient vector has the smallest
  /// integer encoding sum_i c_i q^i, which is deterministic across builds.
  /// Throws FieldConstructionError on a reducible modulus, naming a factor.
  ExtField(unsigned p, unsigned e, unsigned m,
           std::vector<std::uint64_t> inner_modulus = {},
           std::vector<FieldElement> outer_modulus = {},
           std::uint64_t table_threshold = kDefaultTableThreshold);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t order() const { return order_; }
  /// ceil(log2(order)): serialized width of one element in bits.
  unsigned bits_per_element() const { return bits_; }
  const std::vector<std::uint64_t>& inner_modulus() const { return inner_mod_; }
  const std::vector<FieldElement>& outer_modulus() const { return outer_mod_; }
  bool has_tables() const { return !exp_.empty(); }

  // ---- element arithmetic on encodings in [0, order) ----

  FieldElement add(FieldElement a, FieldElement b) const {
    return p_ == 2 ? (a ^ b) : add_slow(a, b);
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return p_ == 2 ? (a ^ b) : sub_slow(a, b);
  }
  FieldElement neg(FieldElement a) const { return p_ == 2 ? a : neg_slow(a); }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (has_tables()) {
      if (a == 0 || b == 0) return 0;
      return exp_[std::size_t(log_[a]) + log_[b]];
    }
    return mul_generic(a, b);
  }
  /// Multiplicative inverse; a = 0 throws DomainError.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t n) const;
  /// a^n with arbitrary-precision exponent (reduced mod order-1 for a != 0).
  FieldElement pow(FieldElement a, const BigInt& n) const;
  /// a^{q^j}; j is taken mod m.
  FieldElement frobenius_pow(FieldElement a, unsigned j) const;

  // ---- coordinates ----

  /// F_q coordinate i (monomial basis of the outer modulus), 0 <= i < m.
  std::uint64_t coeff(FieldElement a, unsigned i) const {
    return p2_ ? ((a >> (i * ebits_)) & qmask_) : ((a / qpow_[i]) % q_);
  }
  FieldElement from_coeffs(std::span<const std::uint64_t> c) const;
  /// Encoding of the basis element y^i.
  FieldElement basis_element(unsigned i) const { return qpow_[i]; }
  /// True when a lies in F_q (all coordinates above the constant one vanish).
  bool in_base_field(FieldElement a) const { return a < q_; }

  // ---- F_q subfield arithmetic on encodings in [0, q) ----

  std::uint64_t fq_add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t fq_sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t fq_neg(std::uint64_t a) const;
  std::uint64_t fq_mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    return qexp_[std::size_t(qlog_[a]) + qlog_[b]];
  }
  std::uint64_t fq_inv(std::uint64_t a) const;
  /// c * a with c in F_q, a in F_{q^m} (coordinate-wise scaling).
  FieldElement fq_scale(std::uint64_t c, FieldElement a) const;

  // ---- bulk row kernels (exact; optimized per representation) ----

  /// y[i] -= c * x[i] for i < len.
  void row_submul(FieldElement* y, const FieldElement* x, std::size_t len, FieldElement c) const;
  /// y[i] *= c for i < len.
  void row_scale(FieldElement* y, std::size_t len, FieldElement c) const;

  FieldElement random(Rng& rng) const { return rng.below(order_); }
  FieldElement random_nonzero(Rng& rng) const { return 1 + rng.below(order_ - 1); }

  /// Same tower (identical parameters and moduli).
  static bool same(const ExtField& a, const ExtField& b);
  std::string describe() const;

 private:
  FieldElement add_slow(FieldElement a, FieldElement b) const;
  FieldElement sub_slow(FieldElement a, FieldElement b) const;
  FieldElement neg_slow(FieldElement a) const;
  FieldElement mul_generic(FieldElement a, FieldElement b) const;
  void build_fq_tables();
  void build_reduction_rows();
  void build_full_tables();
  void build_frobenius_images();

  unsigned p_ = 0, e_ = 0, m_ = 0, bits_ = 0;
  std::uint64_t q_ = 0, order_ = 0;
  bool p2_ = false;
  unsigned ebits_ = 0;      // bits per F_q digit (p == 2)
  std::uint64_t qmask_ = 0; // q - 1 (p == 2)
  std::vector<std::uint64_t> inner_mod_;  // length e+1, F_p digits, monic
  std::vector<FieldElement> outer_mod_;   // length m+1, F_q encodings, monic
  std::vector<std::uint64_t> qpow_;       // q^i for i = 0..m
  std::vector<std::uint64_t> ppow_;       // p^i for i = 0..e
  // F_q log/exp (always present; q <= 2^16)
  std::vector<std::uint32_t> qlog_;  // size q
  std::vector<std::uint32_t> qexp_;  // size 2(q-1), doubled to absorb index sums
  // branchless variants: qlog0_[0] is a sentinel whose sums land in the
  // zero-filled tail of qexp0_
  std::vector<std::uint32_t> qlog0_;  // size q
  std::vector<std::uint32_t> qexp0_;  // size 4(q-1)+1
  std::uint32_t zlog_ = 0;            // 2(q-1)
  // full-field tables (order <= table threshold)
  std::vector<std::uint32_t> log_;  // size order
  std::vector<std::uint32_t> exp_;  // size 2(order-1)
  std::vector<std::uint64_t> qpow_mod_ord_;  // q^j mod (order-1), j = 0..m-1
  // generic-path machinery
  std::vector<std::vector<std::uint64_t>> red_rows_;  // y^{m+t} mod g as digit rows
  std::vector<FieldElement> red_packed_;              // p2: (m-1) x q packed rows
  std::vector<FieldElement> frob_img_;                // m x m basis images (y^i)^{q^j}
};

/// theta = sigma^s, the s-th power of the q-Frobenius x -> x^q.
class Automorphism {
 public:
  Automorphism(const ExtField& field, unsigned s);

  const ExtField& field() const { return *F_; }
  unsigned s() const { return s_; }
  /// True iff the fixed field of theta is exactly F_q (gcd(s, m) = 1).
  bool fixed_field_is_base() const;
  /// Multiplicative order of theta: m / gcd(s, m).
  unsigned order() const;
  Automorphism inverse() const { return Automorphism(*F_, (F_->m() - s_) % F_->m()); }
  bool same(const Automorphism& o) const {
    return ExtField::same(*F_, *o.F_) && s_ == o.s_;
  }

  FieldElement apply(FieldElement a) const { return F_->frobenius_pow(a, s_); }
  /// theta^i(a) = a^{q^{(i s) mod m}}; negative i gives powers of the inverse.
  FieldElement apply_pow(FieldElement a, long long i) const;
  /// N_theta(b) = prod_{j<m} theta^j(b) = b^{[[m]]}; lands in the fixed field.
  FieldElement norm(FieldElement b) const;
  /// a^c = theta(c) a c^{-1}; c = 0 throws DomainError.
  FieldElement conjugate(FieldElement a, FieldElement c) const;

 private:
  const ExtField* F_;
  unsigned s_;
};

/// [[i]] = sum_{j<i} q^{js} = q^{(i-1)s} + ... + q^s + 1, exact.
BigInt double_bracket(const Automorphism& theta, unsigned i);

/// Finds c != 0 with theta(c) a c^{-1} = target, or nullopt when a and target
/// are not theta-conjugate. Deterministic (first kernel vector of an F_q
/// linear system).
std::optional<FieldElement> conjugator(const Automorphism& theta, FieldElement a,
                                       FieldElement target);

/// Grouping of a vector by theta-conjugacy class: grouped[j] = alpha[perm[j]],
/// the first n - zero_count positions carry the nonzero classes in order of
/// first appearance, zero entries are flagged at the end. Within class i every
/// entry equals conjugate(reps[i], conjugators[j]); reps[i] is the class
/// member with minimal integer encoding among the entries present.
struct ConjugacyRepresentation {
  std::vector<std::size_t> perm;
  std::vector<FieldElement> reps;
  std::vector<FieldElement> conjugators;
  std::vector<std::size_t> partition;
  std::size_t zero_count = 0;
};
ConjugacyRepresentation conjugacy_representation(const Automorphism& theta,
                                                 std::span<const FieldElement> alpha);

/// Rank of a small matrix over F_q; entries are F_q encodings.
std::size_t fq_rank(const ExtField& field, std::vector<std::vector<std::uint64_t>> rows);
/// First kernel basis vector (by lowest free column) of the F_q matrix, or
/// nullopt when the kernel is trivial.
std::optional<std::vector<std::uint64_t>> fq_kernel_first(
    const ExtField& field, std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols);

/// Text form of the tower plus an automorphism exponent:
///   p e m s
///   inner modulus coefficients (decimal, low degree first)
///   outer modulus coefficients (decimal F_q encodings, low degree first)
void write_field_header(std::ostream& os, const ExtField& field, unsigned s);
struct ParsedFieldHeader {
  std::shared_ptr<const ExtField> field;
  unsigned s = 0;
};
ParsedFieldHeader read_field_header(std::istream& is);

}  // namespace skewlab
