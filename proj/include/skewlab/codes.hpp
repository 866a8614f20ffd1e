#pragma once

#include "skewlab/linalg.hpp"

namespace skewlab {

/// Parameters of a generalized skew Reed-Solomon code: P-independent code
/// locators alpha, nonzero column multipliers lambda, dimension k. Codewords
/// are the remainder evaluations of the skew polynomials of degree < k,
/// scaled columnwise by lambda.
struct GsrsSpec {
  Automorphism aut;
  std::vector<FieldElement> alpha;
  std::vector<FieldElement> lambda;
  std::size_t k;

  /// Validates all invariants; throws DomainError when violated.
  GsrsSpec(const Automorphism& aut, std::vector<FieldElement> alpha,
           std::vector<FieldElement> lambda, std::size_t k);

  std::size_t n() const { return alpha.size(); }
};

/// Parameters of a generalized linearized Reed-Solomon code: blockwise
/// locators b (each block F_q-independent), one evaluation parameter per block
/// from pairwise distinct nontrivial conjugacy classes, nonzero multipliers.
struct GlrsSpec {
  Automorphism aut;
  std::vector<std::size_t> partition;
  std::vector<FieldElement> b;
  std::vector<FieldElement> a;  // one representative per block
  std::vector<FieldElement> lambda;
  std::size_t k;

  GlrsSpec(const Automorphism& aut, std::vector<std::size_t> partition,
           std::vector<FieldElement> b, std::vector<FieldElement> a,
           std::vector<FieldElement> lambda, std::size_t k);

  std::size_t n() const { return b.size(); }
  std::size_t blocks() const { return partition.size(); }
  /// The evaluation parameters expanded to an n-vector (constant per block).
  std::vector<FieldElement> expanded_a() const;
};

/// One component of a GRS-subcode decomposition. Locators may repeat; the
/// `repeated_locators` flag warns downstream consumers that the component is
/// not a proper GRS code in that case.
struct GrsComponent {
  std::vector<FieldElement> locators;
  std::vector<FieldElement> multipliers;
  std::size_t dim = 0;
  bool repeated_locators = false;

  /// dim x n generator: row r is locators^r * multipliers.
  Matrix generator(const ExtField& field) const;
};

/// k x n generator V_k(alpha) diag(lambda); row r is alpha^{[[r]]} * lambda.
Matrix gsrs_generator(const GsrsSpec& spec);
/// k x n generalized Moore generator; row r is theta^r(b) a^{[[r]]} * lambda.
Matrix glrs_generator(const GlrsSpec& spec);

/// Encode a message polynomial of degree < k.
std::vector<FieldElement> gsrs_encode(const GsrsSpec& spec, const SkewPolynomial& f);

/// Equal-code transformation: locators become the conjugates a^b, multipliers
/// pick up the factor b.
GsrsSpec glrs_to_gsrs(const GlrsSpec& spec);

/// Equal-code transformation after grouping coordinates by conjugacy class;
/// the grouping permutation is returned explicitly (grouped[j] =
/// original[perm[j]]).
struct GsrsToGlrs {
  std::vector<std::size_t> perm;
  GlrsSpec glrs;
};
GsrsToGlrs gsrs_to_glrs(const GsrsSpec& spec);

/// Dual code parameters (a GSRS code for the inverse automorphism, dimension
/// n-k). Throws DualHypothesisFailed when the derived locators are not
/// P-independent for the inverse automorphism.
GsrsSpec gsrs_dual(const GsrsSpec& spec);

/// Dual code parameters (a GLRS code for the inverse automorphism). Throws
/// DualHypothesisFailed when the derived locator vector does not have full
/// sum-rank weight.
GlrsSpec glrs_dual(const GlrsSpec& spec);

/// Component dimensions of the GRS-subcode decomposition: the first (k mod m)
/// entries are ceil(k/m), the rest floor(k/m); they sum to k.
std::vector<std::size_t> k_profile(std::size_t k, std::size_t m);

/// GRS-subcode decomposition; components with zero dimension are dropped, so
/// for k <= m there are exactly k one-dimensional components.
std::vector<GrsComponent> decompose(const GsrsSpec& spec);
std::vector<GrsComponent> decompose(const GlrsSpec& spec);

// ---- parameter sampling ----

/// Uniform automorphism exponent s with s != 0 and gcd(s, m) = 1.
Automorphism sample_automorphism(const ExtField& field, Rng& rng);
/// Random P-independent vector of length n; built classwise (representatives
/// of distinct classes, F_q-independent conjugator blocks), never by
/// rejection on raw vectors. For s = 0 this samples distinct nonzero
/// elements.
std::vector<FieldElement> sample_p_independent(const Automorphism& aut, std::size_t n, Rng& rng);
std::vector<FieldElement> sample_nonzero_vector(const ExtField& field, std::size_t n, Rng& rng);
GsrsSpec sample_gsrs(const Automorphism& aut, std::size_t n, std::size_t k, Rng& rng);
/// Random GLRS parameters; the partition is sampled when not provided.
GlrsSpec sample_glrs(const Automorphism& aut, std::size_t n, std::size_t k, Rng& rng,
                     std::vector<std::size_t> partition = {});

// ---- named special cases ----

/// Classical generalized Reed-Solomon code as a GSRS code: identity
/// automorphism, distinct nonzero locators.
GsrsSpec grs_as_gsrs(const ExtField& field, std::vector<FieldElement> locators,
                     std::vector<FieldElement> multipliers, std::size_t k);
/// Gabidulin code with F_q-independent locators b as a GSRS code for the
/// Frobenius: locators b^{q-1}, multipliers b.
GsrsSpec gabidulin_as_gsrs(const ExtField& field, std::vector<FieldElement> b, std::size_t k);
/// Gabidulin code as a GLRS code: one block, evaluation parameter 1, trivial
/// multipliers.
GlrsSpec gabidulin_as_glrs(const ExtField& field, std::vector<FieldElement> b, std::size_t k);

/// True when the parameters have the exact Gabidulin multiplier shape: theta
/// is the Frobenius, every locator is a (q-1)-th power, and lambda_j^{q-1} is
/// proportional to alpha_j with one shared constant.
bool has_gabidulin_multiplier_shape(const GsrsSpec& spec);

/// Text format for code specs: field header, then a tag line
/// `GSRS|GLRS n k`, then the parameter vectors as decimal encodings.
void write_gsrs(std::ostream& os, const GsrsSpec& spec);
void write_glrs(std::ostream& os, const GlrsSpec& spec);
struct ParsedCodeSpec {
  std::shared_ptr<const ExtField> field;
  std::optional<GsrsSpec> gsrs;
  std::optional<GlrsSpec> glrs;
};
ParsedCodeSpec read_code_spec(std::istream& is);

}  // namespace skewlab
