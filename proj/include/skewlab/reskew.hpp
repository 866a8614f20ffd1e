#pragma once

#include "skewlab/decoder.hpp"

namespace skewlab {

/// Parameter set (q, m, s, n, k, t) with q = p^e. The decoding radius is
/// pinned to t = floor((n-k)/2), the largest weight the secret code decodes
/// uniquely.
struct ReskewParams {
  unsigned p = 0, e = 0, m = 0, s = 0;
  std::size_t n = 0, k = 0, t = 0;

  std::uint64_t q() const;
  /// Throws DomainError when any constraint fails (m > 1, 0 < s < m with
  /// gcd(s, m) = 1, n <= m(q-1), k < n, t = floor((n-k)/2)).
  void validate() const;
  std::shared_ptr<const ExtField> make_field() const;

  /// Built-in sets: reskew-1, reskew-1-bin, reskew-3, reskew-3-bin, reskew-5,
  /// reskew-5-bin, plus the fast test sets toy-9 and toy-256.
  static ReskewParams named(const std::string& name);
  static std::vector<std::string> names();
  /// The six production sets (excludes the toy sets).
  static std::vector<std::string> production_names();

  bool operator==(const ReskewParams&) const = default;
};

/// Niederreiter-style public key: the nonidentity block T of the systematic
/// parity check matrix (I_{n-k} | T).
struct PublicKey {
  ReskewParams params;
  std::shared_ptr<const ExtField> field;
  Matrix t_block;  // (n-k) x k
};

/// Secret code parameters: locators b (P-independent) and multipliers lambda.
struct SecretKey {
  ReskewParams params;
  std::shared_ptr<const ExtField> field;
  std::vector<FieldElement> b;
  std::vector<FieldElement> lambda;

  GsrsSpec code_spec() const;
};

struct Ciphertext {
  ReskewParams params;
  std::shared_ptr<const ExtField> field;
  std::vector<FieldElement> c;  // length n-k
};

struct Keypair {
  PublicKey pk;
  SecretKey sk;
  unsigned resamples = 0;  // systematic-form retries (0 in practice)
};

/// Samples a secret code, computes its systematic form and publishes
/// T = -U^T. Resamples on SystematicFormUnavailable, up to a bounded retry
/// count reported in the result.
Keypair keygen(const ReskewParams& params, Rng& rng);

/// c = msg * H_pub^T for a message of Hamming weight exactly t.
Ciphertext encrypt(const PublicKey& pk, std::span<const FieldElement> msg);

/// Appends k zeros to the syndrome, decodes at radius t with the secret code
/// and returns the error vector. Throws DecryptionError when decoding fails
/// or the recovered message is not of weight t.
std::vector<FieldElement> decrypt(const SecretKey& sk, const Ciphertext& ct);

/// Uniform weight-t message: uniform support, uniform nonzero values.
std::vector<FieldElement> sample_message(const ReskewParams& params, const ExtField& field,
                                         Rng& rng);

/// Payload sizes in bytes: ceil(count * ceil(log2 q^m) / 8) for
/// count = k(n-k), 2n, n-k respectively.
struct SizeTriple {
  std::uint64_t pk_bytes = 0, sk_bytes = 0, ct_bytes = 0;
  bool operator==(const SizeTriple&) const = default;
};
SizeTriple sizes(const ReskewParams& params);

/// log2 of the expected number of information-set permutations,
/// log2(C(n, t) / C(n-k, t)), with exact big-integer binomials. Returns
/// +infinity when t > n-k (the denominator vanishes).
double prange_log2(std::uint64_t n, std::uint64_t k, std::uint64_t t);

// ---- binary serialization ----
//
// Header (big-endian): magic "RSKW", version 0x01, kind byte (0x01 pk,
// 0x02 sk, 0x03 ct), p:u16 e:u8 m:u8 s:u8 n:u16 k:u16 t:u16, inner modulus
// (e+1 u16 words), outer modulus (m+1 u16 words). Payload: elements as
// fixed-width big-endian bit fields of ceil(log2 q^m) bits, packed MSB first,
// final byte zero-padded; pk = T row-major, sk = b then lambda, ct = the
// syndrome. The payload length is exactly sizes().

void write_public_key(std::ostream& os, const PublicKey& pk);
void write_secret_key(std::ostream& os, const SecretKey& sk);
void write_ciphertext(std::ostream& os, const Ciphertext& ct);
PublicKey read_public_key(std::istream& is);
SecretKey read_secret_key(std::istream& is);
Ciphertext read_ciphertext(std::istream& is);

/// Payload-only byte count of the serialized form (excludes the header).
std::uint64_t payload_bytes(const ReskewParams& params, std::uint64_t element_count);
/// Header byte count for a parameter set.
std::uint64_t header_bytes(const ReskewParams& params);

/// Message text format: n space-separated decimal encodings on one line.
void write_message(std::ostream& os, std::span<const FieldElement> msg);
std::vector<FieldElement> read_message(std::istream& is, const ExtField& field, std::size_t n);

}  // namespace skewlab
