#include "skewlab/codes.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

namespace skewlab {

namespace {

void check_automorphism_for_codes(const Automorphism& aut) {
  if (aut.s() != 0 && !aut.fixed_field_is_base())
    throw DomainError("code constructors need s = 0 or gcd(s, m) = 1");
}

std::uint64_t max_p_independent_length(const Automorphism& aut) {
  const ExtField& F = aut.field();
  // s = 0: classes are singletons, so any distinct nonzero vector works;
  // otherwise each of the q-1 nontrivial classes contributes at most m
  // F_q-independent conjugators.
  return aut.s() == 0 ? F.order() - 1 : std::uint64_t(F.m()) * (F.q() - 1);
}

void check_multipliers(const std::vector<FieldElement>& lambda, std::size_t n) {
  if (lambda.size() != n) throw DomainError("multiplier vector length mismatch");
  for (auto v : lambda)
    if (v == 0) throw DomainError("column multipliers must be nonzero");
}

// product of theta^j over j < order(theta); collapses to the identity map for
// s = 0 and to the full norm for gcd(s, m) = 1
FieldElement relative_norm(const Automorphism& aut, FieldElement x) {
  const ExtField& F = aut.field();
  FieldElement acc = x, t = x;
  for (unsigned j = 1; j < aut.order(); ++j) {
    t = aut.apply(t);
    acc = F.mul(acc, t);
  }
  return acc;
}

std::vector<FieldElement> elementwise_inverse(const ExtField& F,
                                              const std::vector<FieldElement>& v) {
  std::vector<FieldElement> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.inv(v[i]);
  return out;
}

}  // namespace

GsrsSpec::GsrsSpec(const Automorphism& aut_, std::vector<FieldElement> alpha_,
                   std::vector<FieldElement> lambda_, std::size_t k_)
    : aut(aut_), alpha(std::move(alpha_)), lambda(std::move(lambda_)), k(k_) {
  check_automorphism_for_codes(aut);
  const std::size_t nn = alpha.size();
  if (nn == 0) throw DomainError("empty locator vector");
  if (k == 0 || k > nn) throw DomainError("dimension must satisfy 1 <= k <= n");
  if (nn > max_p_independent_length(aut))
    throw DomainError("length exceeds the maximum for P-independent locators");
  check_multipliers(lambda, nn);
  if (!is_p_independent(aut, alpha)) throw DomainError("code locators are not P-independent");
}

GlrsSpec::GlrsSpec(const Automorphism& aut_, std::vector<std::size_t> partition_,
                   std::vector<FieldElement> b_, std::vector<FieldElement> a_,
                   std::vector<FieldElement> lambda_, std::size_t k_)
    : aut(aut_),
      partition(std::move(partition_)),
      b(std::move(b_)),
      a(std::move(a_)),
      lambda(std::move(lambda_)),
      k(k_) {
  check_automorphism_for_codes(aut);
  const std::size_t nn = b.size();
  if (nn == 0) throw DomainError("empty locator vector");
  if (k == 0 || k > nn) throw DomainError("dimension must satisfy 1 <= k <= n");
  std::size_t total = 0;
  for (auto len : partition) {
    if (len == 0) throw DomainError("empty block in partition");
    // a block supports at most [F_{q^m} : fixed(theta)] independent locators
    if (len > aut.order())
      throw DomainError("block longer than the degree over the fixed field");
    total += len;
  }
  if (total != nn) throw DomainError("partition does not sum to the length");
  if (a.size() != partition.size())
    throw DomainError("one evaluation parameter per block is required");
  check_multipliers(lambda, nn);
  for (auto v : a)
    if (v == 0) throw DomainError("evaluation parameters must come from nontrivial classes");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (conjugator(aut, a[i], a[j]))
        throw DomainError("evaluation parameters must lie in distinct conjugacy classes");
  if (sum_rank_weight(aut.field(), b, partition) != nn)
    throw DomainError("locator blocks must be F_q-linearly independent");
}

std::vector<FieldElement> GlrsSpec::expanded_a() const {
  std::vector<FieldElement> out;
  out.reserve(n());
  for (std::size_t i = 0; i < partition.size(); ++i)
    out.insert(out.end(), partition[i], a[i]);
  return out;
}

Matrix gsrs_generator(const GsrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  const std::size_t n = spec.n();
  Matrix g(F, spec.k, n);
  std::vector<FieldElement> pw(n, 1);  // alpha^{[[r]]}
  for (std::size_t r = 0; r < spec.k; ++r) {
    for (std::size_t j = 0; j < n; ++j) g.at(r, j) = F.mul(pw[j], spec.lambda[j]);
    if (r + 1 < spec.k)
      for (std::size_t j = 0; j < n; ++j)
        pw[j] = F.mul(spec.aut.apply(pw[j]), spec.alpha[j]);
  }
  return g;
}

Matrix glrs_generator(const GlrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  const std::size_t n = spec.n();
  const auto a = spec.expanded_a();
  Matrix g(F, spec.k, n);
  std::vector<FieldElement> moore(spec.b);  // theta^r(b) a^{[[r]]}
  for (std::size_t r = 0; r < spec.k; ++r) {
    for (std::size_t j = 0; j < n; ++j) g.at(r, j) = F.mul(moore[j], spec.lambda[j]);
    if (r + 1 < spec.k)
      for (std::size_t j = 0; j < n; ++j) moore[j] = F.mul(spec.aut.apply(moore[j]), a[j]);
  }
  return g;
}

std::vector<FieldElement> gsrs_encode(const GsrsSpec& spec, const SkewPolynomial& f) {
  if (f.degree() >= static_cast<int>(spec.k))
    throw DomainError("message degree exceeds the code dimension");
  if (!f.automorphism().same(spec.aut)) throw DomainError("automorphism mismatch");
  auto ev = rem_eval(f, spec.alpha);
  return star(spec.aut.field(), ev, spec.lambda);
}

GsrsSpec glrs_to_gsrs(const GlrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  const auto a = spec.expanded_a();
  std::vector<FieldElement> alpha(spec.n()), lambda(spec.n());
  for (std::size_t j = 0; j < spec.n(); ++j) {
    alpha[j] = spec.aut.conjugate(a[j], spec.b[j]);
    lambda[j] = F.mul(spec.lambda[j], spec.b[j]);
  }
  return GsrsSpec(spec.aut, std::move(alpha), std::move(lambda), spec.k);
}

GsrsToGlrs gsrs_to_glrs(const GsrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  auto rep = conjugacy_representation(spec.aut, spec.alpha);
  // locators are P-independent, so no zero class exists
  std::vector<FieldElement> lambda(spec.n());
  for (std::size_t j = 0; j < spec.n(); ++j)
    lambda[j] = F.mul(spec.lambda[rep.perm[j]], F.inv(rep.conjugators[j]));
  GlrsSpec glrs(spec.aut, rep.partition, rep.conjugators, rep.reps, std::move(lambda), spec.k);
  return GsrsToGlrs{std::move(rep.perm), std::move(glrs)};
}

namespace {

// nonzero kernel vector of the (n, n-1) code generated under the same
// parameters, normalized so its first entry is one
std::vector<FieldElement> parity_vector(const Matrix& gen_full) {
  const ExtField& F = gen_full.field();
  Matrix k = kernel_basis(gen_full);
  if (k.rows() != 1) throw DomainError("expected a one-dimensional dual of the (n, n-1) code");
  std::vector<FieldElement> v = k.row_copy(0);
  if (v[0] == 0) {
    // normalize at the first nonzero entry instead
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    F.row_scale(v.data(), v.size(), F.inv(v[i]));
  } else {
    F.row_scale(v.data(), v.size(), F.inv(v[0]));
  }
  return v;
}

}  // namespace

GsrsSpec gsrs_dual(const GsrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  const std::size_t n = spec.n();
  if (spec.k >= n) throw DomainError("dual of the full-space code has dimension zero");
  GsrsSpec hull(spec.aut, spec.alpha, spec.lambda, n - 1);
  const auto v = parity_vector(gsrs_generator(hull));
  for (auto x : v)
    if (x == 0)
      throw DualHypothesisFailed("parity vector of the (n, n-1) code has a zero entry");

  const Automorphism inv_aut = spec.aut.inverse();
  std::vector<FieldElement> locators(n);
  for (std::size_t j = 0; j < n; ++j) {
    const FieldElement c = F.mul(v[j], spec.lambda[j]);
    locators[j] = inv_aut.conjugate(inv_aut.apply(spec.alpha[j]), c);
  }
  if (!is_p_independent(inv_aut, locators))
    throw DualHypothesisFailed(
        "derived dual locators are not P-independent for the inverse automorphism");
  return GsrsSpec(inv_aut, std::move(locators), v, n - spec.k);
}

GlrsSpec glrs_dual(const GlrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  const std::size_t n = spec.n();
  if (spec.k >= n) throw DomainError("dual of the full-space code has dimension zero");
  GlrsSpec hull(spec.aut, spec.partition, spec.b, spec.a, spec.lambda, n - 1);
  const auto v = parity_vector(glrs_generator(hull));

  std::vector<FieldElement> locators = star(F, v, spec.lambda);
  if (sum_rank_weight(F, locators, spec.partition) != n)
    throw DualHypothesisFailed("derived dual locators do not have full sum-rank weight");

  const Automorphism inv_aut = spec.aut.inverse();
  std::vector<FieldElement> a_inv(spec.a.size());
  for (std::size_t i = 0; i < spec.a.size(); ++i) a_inv[i] = spec.aut.apply_pow(spec.a[i], -1);
  try {
    return GlrsSpec(inv_aut, spec.partition, std::move(locators), std::move(a_inv),
                    elementwise_inverse(F, spec.lambda), n - spec.k);
  } catch (const DomainError& e) {
    throw DualHypothesisFailed(std::string("derived dual parameters are invalid: ") + e.what());
  }
}

std::vector<std::size_t> k_profile(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw DomainError("k_profile needs positive arguments");
  std::vector<std::size_t> out(m, k / m);
  for (std::size_t i = 0; i < k % m; ++i) ++out[i];
  return out;
}

namespace {

std::vector<GrsComponent> decompose_impl(const Automorphism& aut,
                                         const std::vector<FieldElement>& alpha_like,
                                         const std::vector<FieldElement>& lambda,
                                         const std::vector<FieldElement>* moore_b,
                                         std::size_t k) {
  const ExtField& F = aut.field();
  const std::size_t n = alpha_like.size();
  const std::size_t m_eff = aut.order();
  const auto profile = k_profile(k, m_eff);

  std::vector<FieldElement> locators(n);
  for (std::size_t j = 0; j < n; ++j) locators[j] = relative_norm(aut, alpha_like[j]);
  const bool repeated =
      std::set<FieldElement>(locators.begin(), locators.end()).size() < n;

  std::vector<GrsComponent> out;
  std::vector<FieldElement> pw(n, 1);         // alpha^{[[i]]}
  std::vector<FieldElement> tb;               // theta^i(b) for the Moore case
  if (moore_b) tb = *moore_b;
  for (std::size_t i = 0; i < m_eff; ++i) {
    if (profile[i] >= 1) {
      GrsComponent comp;
      comp.locators = locators;
      comp.dim = profile[i];
      comp.repeated_locators = repeated;
      comp.multipliers.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        FieldElement v = F.mul(pw[j], lambda[j]);
        if (moore_b) v = F.mul(v, tb[j]);
        comp.multipliers[j] = v;
      }
      out.push_back(std::move(comp));
    }
    if (i + 1 < m_eff) {
      for (std::size_t j = 0; j < n; ++j) {
        pw[j] = F.mul(aut.apply(pw[j]), alpha_like[j]);
        if (moore_b) tb[j] = aut.apply(tb[j]);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<GrsComponent> decompose(const GsrsSpec& spec) {
  return decompose_impl(spec.aut, spec.alpha, spec.lambda, nullptr, spec.k);
}

std::vector<GrsComponent> decompose(const GlrsSpec& spec) {
  const auto a = spec.expanded_a();
  return decompose_impl(spec.aut, a, spec.lambda, &spec.b, spec.k);
}

Matrix GrsComponent::generator(const ExtField& field) const {
  Matrix g(field, dim, locators.size());
  std::vector<FieldElement> pw(locators.size(), 1);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t j = 0; j < locators.size(); ++j) g.at(r, j) = field.mul(pw[j], multipliers[j]);
    if (r + 1 < dim)
      for (std::size_t j = 0; j < locators.size(); ++j) pw[j] = field.mul(pw[j], locators[j]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

Automorphism sample_automorphism(const ExtField& field, Rng& rng) {
  std::vector<unsigned> candidates;
  for (unsigned s = 1; s < field.m(); ++s)
    if (std::gcd(s, field.m()) == 1) candidates.push_back(s);
  if (candidates.empty())
    throw DomainError("no nontrivial automorphism with base fixed field exists for m = " +
                      std::to_string(field.m()));
  return Automorphism(field, candidates[rng.below(candidates.size())]);
}

namespace {

// composition of n into `blocks` parts, each within [1, cap], uniform per digit
std::vector<std::size_t> sample_composition(std::size_t n, std::size_t blocks, std::size_t cap,
                                            Rng& rng) {
  std::vector<std::size_t> out(blocks);
  std::size_t rest = n;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t left = blocks - i - 1;
    const std::size_t lo = rest > left * cap ? rest - left * cap : 1;
    const std::size_t hi = std::min(cap, rest - left);
    out[i] = lo + rng.below(hi - lo + 1);
    rest -= out[i];
  }
  return out;
}

// F_q-linearly independent random elements (block of a locator vector)
std::vector<FieldElement> sample_independent_block(const ExtField& F, std::size_t len, Rng& rng) {
  for (;;) {
    std::vector<FieldElement> block(len);
    for (auto& v : block) v = F.random_nonzero(rng);
    std::vector<std::vector<std::uint64_t>> rows(F.m(), std::vector<std::uint64_t>(len, 0));
    for (std::size_t j = 0; j < len; ++j)
      for (unsigned r = 0; r < F.m(); ++r) rows[r][j] = F.coeff(block[j], r);
    if (fq_rank(F, std::move(rows)) == len) return block;
  }
}

// representatives of `count` pairwise distinct nontrivial conjugacy classes
std::vector<FieldElement> sample_class_representatives(const Automorphism& aut, std::size_t count,
                                                       Rng& rng) {
  const ExtField& F = aut.field();
  std::vector<FieldElement> reps;
  std::set<FieldElement> seen_norms;
  while (reps.size() < count) {
    const FieldElement a = F.random_nonzero(rng);
    if (seen_norms.insert(aut.norm(a)).second) reps.push_back(a);
  }
  return reps;
}

}  // namespace

std::vector<FieldElement> sample_p_independent(const Automorphism& aut, std::size_t n, Rng& rng) {
  const ExtField& F = aut.field();
  if (n > max_p_independent_length(aut))
    throw DomainError("no P-independent vector of the requested length exists");
  if (aut.s() == 0) {
    std::set<FieldElement> chosen;
    while (chosen.size() < n) chosen.insert(F.random_nonzero(rng));
    std::vector<FieldElement> out(chosen.begin(), chosen.end());
    rng.shuffle(out);
    return out;
  }
  if (!aut.fixed_field_is_base())
    throw DomainError("sampling requires s = 0 or gcd(s, m) = 1");
  const std::size_t m = F.m();
  const std::size_t lo = (n + m - 1) / m;
  const std::size_t hi = std::min<std::size_t>(n, F.q() - 1);
  const std::size_t blocks = lo + rng.below(hi - lo + 1);
  const auto partition = sample_composition(n, blocks, m, rng);
  const auto reps = sample_class_representatives(aut, blocks, rng);
  std::vector<FieldElement> alpha;
  alpha.reserve(n);
  for (std::size_t i = 0; i < blocks; ++i) {
    const auto block = sample_independent_block(F, partition[i], rng);
    for (auto b : block) alpha.push_back(aut.conjugate(reps[i], b));
  }
  return alpha;
}

std::vector<FieldElement> sample_nonzero_vector(const ExtField& field, std::size_t n, Rng& rng) {
  std::vector<FieldElement> out(n);
  for (auto& v : out) v = field.random_nonzero(rng);
  return out;
}

GsrsSpec sample_gsrs(const Automorphism& aut, std::size_t n, std::size_t k, Rng& rng) {
  return GsrsSpec(aut, sample_p_independent(aut, n, rng),
                  sample_nonzero_vector(aut.field(), n, rng), k);
}

GlrsSpec sample_glrs(const Automorphism& aut, std::size_t n, std::size_t k, Rng& rng,
                     std::vector<std::size_t> partition) {
  const ExtField& F = aut.field();
  if (aut.s() == 0) {
    // identity case: unit blocks, distinct nonzero parameters, locator 1
    if (partition.empty()) partition.assign(n, 1);
    auto a = sample_p_independent(aut, n, rng);
    return GlrsSpec(aut, std::move(partition), std::vector<FieldElement>(n, 1), std::move(a),
                    sample_nonzero_vector(F, n, rng), k);
  }
  if (partition.empty()) {
    const std::size_t m = F.m();
    const std::size_t lo = (n + m - 1) / m;
    const std::size_t hi = std::min<std::size_t>(n, F.q() - 1);
    if (lo > hi) throw DomainError("no valid block partition for this length");
    const std::size_t blocks = lo + rng.below(hi - lo + 1);
    partition = sample_composition(n, blocks, m, rng);
  }
  auto reps = sample_class_representatives(aut, partition.size(), rng);
  std::vector<FieldElement> b;
  b.reserve(n);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const auto block = sample_independent_block(F, partition[i], rng);
    b.insert(b.end(), block.begin(), block.end());
  }
  return GlrsSpec(aut, std::move(partition), std::move(b), std::move(reps),
                  sample_nonzero_vector(F, n, rng), k);
}

GsrsSpec grs_as_gsrs(const ExtField& field, std::vector<FieldElement> locators,
                     std::vector<FieldElement> multipliers, std::size_t k) {
  return GsrsSpec(Automorphism(field, 0), std::move(locators), std::move(multipliers), k);
}

GsrsSpec gabidulin_as_gsrs(const ExtField& field, std::vector<FieldElement> b, std::size_t k) {
  Automorphism sigma(field, 1 % field.m());
  std::vector<FieldElement> locators(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) locators[j] = field.pow(b[j], field.q() - 1);
  return GsrsSpec(sigma, std::move(locators), std::move(b), k);
}

GlrsSpec gabidulin_as_glrs(const ExtField& field, std::vector<FieldElement> b, std::size_t k) {
  Automorphism sigma(field, 1 % field.m());
  const std::size_t n = b.size();
  return GlrsSpec(sigma, {n}, std::move(b), {1}, std::vector<FieldElement>(n, 1), k);
}

bool has_gabidulin_multiplier_shape(const GsrsSpec& spec) {
  const ExtField& F = spec.aut.field();
  if (spec.aut.s() != 1 % F.m()) return false;
  // locators must be (q-1)-th powers, i.e. conjugates of 1
  for (auto a : spec.alpha)
    if (spec.aut.norm(a) != 1) return false;
  // lambda_j^{q-1} / alpha_j must be one shared constant
  FieldElement ratio = 0;
  for (std::size_t j = 0; j < spec.n(); ++j) {
    const FieldElement r = F.div(F.pow(spec.lambda[j], F.q() - 1), spec.alpha[j]);
    if (j == 0)
      ratio = r;
    else if (r != ratio)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// text io
// ---------------------------------------------------------------------------

namespace {

void write_vector_line(std::ostream& os, std::span<const FieldElement> v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  os << '\n';
}

std::vector<FieldElement> read_vector_line(std::istream& is, std::size_t n,
                                           std::uint64_t order) {
  std::vector<FieldElement> v(n);
  for (auto& x : v) {
    if (!(is >> x)) throw ParseError("truncated parameter vector");
    if (x >= order) throw ParseError("parameter encoding exceeds the field order");
  }
  return v;
}

}  // namespace

void write_gsrs(std::ostream& os, const GsrsSpec& spec) {
  write_field_header(os, spec.aut.field(), spec.aut.s());
  os << (spec.aut.s() == 0 ? "GRS " : "GSRS ") << spec.n() << ' ' << spec.k << '\n';
  write_vector_line(os, spec.alpha);
  write_vector_line(os, spec.lambda);
}

void write_glrs(std::ostream& os, const GlrsSpec& spec) {
  write_field_header(os, spec.aut.field(), spec.aut.s());
  os << "GLRS " << spec.n() << ' ' << spec.k << '\n';
  for (std::size_t i = 0; i < spec.partition.size(); ++i)
    os << (i ? " " : "") << spec.partition[i];
  os << '\n';
  write_vector_line(os, spec.b);
  write_vector_line(os, spec.a);
  write_vector_line(os, spec.lambda);
}

ParsedCodeSpec read_code_spec(std::istream& is) {
  ParsedFieldHeader h = read_field_header(is);
  std::string tag;
  std::size_t n = 0, k = 0;
  if (!(is >> tag >> n >> k)) throw ParseError("malformed code spec tag line");
  ParsedCodeSpec out;
  out.field = h.field;
  const ExtField& F = *out.field;
  Automorphism aut(F, h.s);
  try {
    if (tag == "GSRS" || tag == "GRS") {
      if (tag == "GRS" && h.s != 0) throw ParseError("GRS tag requires the identity automorphism");
      auto alpha = read_vector_line(is, n, F.order());
      auto lambda = read_vector_line(is, n, F.order());
      out.gsrs.emplace(aut, std::move(alpha), std::move(lambda), k);
    } else if (tag == "GAB") {
      if (h.s != 1 % F.m()) throw ParseError("GAB tag requires the Frobenius automorphism");
      auto b = read_vector_line(is, n, F.order());
      out.gsrs.emplace(gabidulin_as_gsrs(F, std::move(b), k));
    } else if (tag == "GLRS") {
      std::vector<std::size_t> partition;
      std::size_t total = 0;
      while (total < n) {
        std::size_t len = 0;
        if (!(is >> len)) throw ParseError("truncated partition line");
        partition.push_back(len);
        total += len;
      }
      auto b = read_vector_line(is, n, F.order());
      auto a = read_vector_line(is, partition.size(), F.order());
      auto lambda = read_vector_line(is, n, F.order());
      out.glrs.emplace(aut, std::move(partition), std::move(b), std::move(a), std::move(lambda),
                       k);
    } else {
      throw ParseError("unknown code tag " + tag);
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid code parameters: ") + e.what());
  }
  return out;
}

}  // namespace skewlab
