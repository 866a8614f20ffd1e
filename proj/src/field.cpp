#include "skewlab/field.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace skewlab {

namespace {

// fixed-m kernel of y -= c*x for p = 2 towers; the compile-time digit count
// lets the whole digit product stay in registers
template <unsigned MM>
void axpy_p2(FieldElement* y, const FieldElement* x, std::size_t len, const std::uint32_t* lc,
             const std::uint32_t* qlog0, const std::uint32_t* exp0,
             const FieldElement* red_packed, std::uint64_t q, unsigned eb, std::uint64_t qmask) {
  std::uint32_t lx[MM];
  std::uint32_t acc[2 * MM - 1];
  for (std::size_t t = 0; t < len; ++t) {
    const std::uint64_t xv = x[t];
    if (!xv) continue;
    for (unsigned i = 0; i + 1 < 2 * MM; ++i) acc[i] = 0;
    for (unsigned j = 0; j < MM; ++j) lx[j] = qlog0[(xv >> (j * eb)) & qmask];
    for (unsigned i = 0; i < MM; ++i) {
      const std::uint32_t l = lc[i];
      for (unsigned j = 0; j < MM; ++j) acc[i + j] ^= exp0[l + lx[j]];
    }
    FieldElement r = 0;
    for (unsigned i = 0; i < MM; ++i) r |= std::uint64_t(acc[i]) << (i * eb);
    for (unsigned u = 0; u + 1 < MM; ++u)
      if (acc[MM + u]) r ^= red_packed[u * q + acc[MM + u]];
    y[t] ^= r;
  }
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Coefficient arithmetic handle used for construction-time polynomial work
// over F_p or F_q. Not performance relevant.
struct CoefField {
  std::uint64_t size;
  std::function<std::uint64_t(std::uint64_t, std::uint64_t)> add, mul;
  std::function<std::uint64_t(std::uint64_t)> neg, inv;
};

using Poly = std::vector<std::uint64_t>;  // low degree first, trimmed

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const CoefField& K, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
  }
  poly_trim(r);
  return r;
}

Poly poly_sub(const CoefField& K, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = K.add(a[i], K.neg(b[i]));
  poly_trim(a);
  return a;
}

Poly poly_mod(const CoefField& K, Poly a, const Poly& g) {
  const int dg = poly_deg(g);
  const std::uint64_t lead_inv = K.inv(g.back());
  while (poly_deg(a) >= dg) {
    const int shift = poly_deg(a) - dg;
    const std::uint64_t c = K.mul(a.back(), lead_inv);
    for (int i = 0; i <= dg; ++i)
      a[shift + i] = K.add(a[shift + i], K.neg(K.mul(c, g[i])));
    poly_trim(a);
  }
  return a;
}

Poly poly_gcd_monic(const CoefField& K, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t li = K.inv(a.back());
    for (auto& c : a) c = K.mul(c, li);
  }
  return a;
}

Poly poly_powmod(const CoefField& K, Poly base, std::uint64_t n, const Poly& g) {
  Poly r = {1};
  base = poly_mod(K, std::move(base), g);
  while (n) {
    if (n & 1) r = poly_mod(K, poly_mul(K, r, base), g);
    base = poly_mod(K, poly_mul(K, base, base), g);
    n >>= 1;
  }
  return r;
}

std::string poly_to_string(const Poly& f);

struct IrreducibilityResult {
  bool irreducible = false;
  std::optional<Poly> factor;  // set when reducible and a factor was located
  unsigned degree_bound = 0;   // reducible without explicit factor: every
                               // irreducible factor degree divides this
};

// Trial division by all monic polynomials of degree dividing `bound`, capped
// so pathological inputs cannot stall construction.
std::optional<Poly> enumerate_factor(const CoefField& K, const Poly& f, unsigned bound) {
  constexpr std::uint64_t kCap = 1ull << 20;
  for (unsigned j = 1; j <= bound; ++j) {
    if (bound % j != 0) continue;
    std::uint64_t count = 1;
    bool too_big = false;
    for (unsigned t = 0; t < j; ++t) {
      count *= K.size;
      if (count > kCap) {
        too_big = true;
        break;
      }
    }
    if (too_big) continue;
    Poly g(j + 1, 0);
    g.back() = 1;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t v = c;
      for (unsigned t = 0; t < j; ++t) {
        g[t] = v % K.size;
        v /= K.size;
      }
      if (poly_mod(K, f, g).empty()) return g;
    }
  }
  return std::nullopt;
}

// Exact irreducibility test for monic f of degree >= 2. Sweeps
// gcd(f, x^{size^i} - x) for i up to deg(f)/2; every reducible polynomial has
// an irreducible factor of degree <= deg(f)/2, so either some gcd is a proper
// factor or x^{size^i} - x vanishes mod f, which certifies reducibility with
// all factor degrees dividing i.
IrreducibilityResult check_irreducible(const CoefField& K, const Poly& f, bool want_factor) {
  const int d = poly_deg(f);
  Poly h = {0, 1};  // x
  for (int i = 1; 2 * i <= d; ++i) {
    h = poly_powmod(K, h, K.size, f);
    Poly diff = poly_sub(K, h, Poly{0, 1});
    if (diff.empty()) {
      IrreducibilityResult r;
      r.degree_bound = static_cast<unsigned>(i);
      if (want_factor) r.factor = enumerate_factor(K, f, r.degree_bound);
      return r;
    }
    Poly g = poly_gcd_monic(K, f, diff);
    if (poly_deg(g) > 0 && poly_deg(g) < d) {
      IrreducibilityResult r;
      r.factor = std::move(g);
      return r;
    }
  }
  IrreducibilityResult r;
  r.irreducible = true;
  return r;
}

[[noreturn]] void throw_reducible(const std::string& which, const IrreducibilityResult& r) {
  if (r.factor)
    throw FieldConstructionError(which + " modulus is reducible; factor " +
                                 poly_to_string(*r.factor));
  throw FieldConstructionError(which +
                               " modulus is reducible; every irreducible factor has degree "
                               "dividing " +
                               std::to_string(r.degree_bound));
}

// Monic irreducible polynomial of the given degree with the smallest
// coefficient-vector encoding (sum_i c_i size^i).
Poly lex_smallest_irreducible(const CoefField& K, unsigned deg) {
  if (deg == 1) return {0, 1};
  Poly f(deg + 1, 0);
  f.back() = 1;
  for (;;) {
    if (f[0] != 0 && check_irreducible(K, f, false).irreducible) return f;
    // increment the coefficient counter (base `size`, low digit first)
    for (unsigned i = 0; i < deg; ++i) {
      if (++f[i] < K.size) break;
      f[i] = 0;
      if (i + 1 == deg)
        throw FieldConstructionError("no irreducible polynomial found (degree " +
                                     std::to_string(deg) + ")");
    }
  }
}

std::string poly_to_string(const Poly& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(f[i]);
  }
  return s + "]";
}

// Smallest primitive element (by encoding) of a field given its multiplication.
std::uint64_t find_primitive(std::uint64_t size,
                             const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul) {
  if (size == 2) return 1;
  const std::uint64_t g_ord = size - 1;
  const auto primes = prime_factors(g_ord);
  auto powmod = [&](std::uint64_t a, std::uint64_t n) {
    std::uint64_t r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  };
  for (std::uint64_t g = 2; g < size; ++g) {
    bool ok = true;
    for (auto r : primes)
      if (powmod(g, g_ord / r) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw FieldConstructionError("no primitive element found");
}

}  // namespace

ExtField::ExtField(unsigned p, unsigned e, unsigned m,
                   std::vector<std::uint64_t> inner_modulus,
                   std::vector<FieldElement> outer_modulus,
                   std::uint64_t table_threshold) {
  if (!is_prime_u64(p)) throw FieldConstructionError("p = " + std::to_string(p) + " is not prime");
  if (e == 0 || m == 0) throw FieldConstructionError("extension degrees must be positive");
  if (m > kMaxM) throw FieldConstructionError("extension degree m too large");
  p_ = p;
  e_ = e;
  m_ = m;
  p2_ = (p == 2);

  // q = p^e, order = q^m, with overflow guards
  q_ = 1;
  for (unsigned i = 0; i < e; ++i) {
    q_ *= p;
    if (q_ > 65536) throw FieldConstructionError("q = p^e must be at most 2^16");
  }
  order_ = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (order_ > (1ull << 62) / q_) throw FieldConstructionError("field order q^m too large");
    order_ *= q_;
  }
  bits_ = 0;
  while ((1ull << bits_) < order_) ++bits_;

  if (p2_) {
    ebits_ = 0;
    while ((1u << ebits_) < q_) ++ebits_;
    qmask_ = q_ - 1;
  }
  ppow_.resize(e_ + 1);
  ppow_[0] = 1;
  for (unsigned i = 1; i <= e_; ++i) ppow_[i] = ppow_[i - 1] * p_;
  qpow_.resize(m_ + 1);
  qpow_[0] = 1;
  for (unsigned i = 1; i <= m_; ++i) qpow_[i] = qpow_[i - 1] * q_;

  // ---- inner modulus over F_p ----
  CoefField Kp{p_,
               [this](std::uint64_t a, std::uint64_t b) { return (a + b) % p_; },
               [this](std::uint64_t a, std::uint64_t b) { return (a * b) % p_; },
               [this](std::uint64_t a) { return a == 0 ? 0 : p_ - a; },
               [this](std::uint64_t a) {
                 if (a == 0) throw DomainError("inverse of zero");
                 std::uint64_t r = 1, x = a, n = p_ - 2;
                 while (n) {
                   if (n & 1) r = (r * x) % p_;
                   x = (x * x) % p_;
                   n >>= 1;
                 }
                 return r;
               }};
  if (inner_modulus.empty()) {
    inner_mod_ = (e_ == 1) ? Poly{0, 1} : lex_smallest_irreducible(Kp, e_);
  } else {
    inner_mod_ = std::move(inner_modulus);
    if (inner_mod_.size() != e_ + 1 || inner_mod_.back() != 1)
      throw FieldConstructionError("inner modulus must be monic of degree e");
    for (auto c : inner_mod_)
      if (c >= p_) throw FieldConstructionError("inner modulus coefficient out of range");
    if (e_ >= 2) {
      auto res = check_irreducible(Kp, inner_mod_, true);
      if (!res.irreducible) throw_reducible("inner", res);
    }
  }

  build_fq_tables();

  // ---- outer modulus over F_q ----
  CoefField Kq{q_,
               [this](std::uint64_t a, std::uint64_t b) { return fq_add(a, b); },
               [this](std::uint64_t a, std::uint64_t b) { return fq_mul(a, b); },
               [this](std::uint64_t a) { return fq_neg(a); },
               [this](std::uint64_t a) { return fq_inv(a); }};
  if (outer_modulus.empty()) {
    outer_mod_ = (m_ == 1) ? Poly{0, 1} : lex_smallest_irreducible(Kq, m_);
  } else {
    outer_mod_ = std::move(outer_modulus);
    if (outer_mod_.size() != m_ + 1 || outer_mod_.back() != 1)
      throw FieldConstructionError("outer modulus must be monic of degree m");
    for (auto c : outer_mod_)
      if (c >= q_) throw FieldConstructionError("outer modulus coefficient out of range");
    if (m_ >= 2) {
      auto res = check_irreducible(Kq, outer_mod_, true);
      if (!res.irreducible) throw_reducible("outer", res);
    }
  }

  build_reduction_rows();

  if (order_ <= table_threshold && order_ <= (1ull << 31)) {
    build_full_tables();
  } else {
    build_frobenius_images();
  }
}

void ExtField::build_fq_tables() {
  // F_q multiplication for table construction: polynomial arithmetic over F_p
  // in base-p digit encodings, reduced by the inner modulus.
  auto fq_mul_slow = [this](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
    if (a == 0 || b == 0) return 0;
    std::uint64_t acc[2 * kMaxM] = {0};
    for (unsigned i = 0; i < e_; ++i) {
      const std::uint64_t ai = (a / ppow_[i]) % p_;
      if (!ai) continue;
      for (unsigned j = 0; j < e_; ++j) {
        const std::uint64_t bj = (b / ppow_[j]) % p_;
        acc[i + j] = (acc[i + j] + ai * bj) % p_;
      }
    }
    // reduce by the monic inner modulus
    for (int t = int(2 * e_ - 2); t >= int(e_); --t) {
      const std::uint64_t c = acc[t];
      if (!c) continue;
      acc[t] = 0;
      for (unsigned i = 0; i < e_; ++i)
        acc[t - e_ + i] = (acc[t - e_ + i] + c * (p_ - inner_mod_[i])) % p_;
    }
    std::uint64_t r = 0;
    for (unsigned i = 0; i < e_; ++i) r += acc[i] * ppow_[i];
    return r;
  };

  const std::uint64_t g = find_primitive(q_, fq_mul_slow);
  qexp_.assign(2 * (q_ - 1), 1);
  qlog_.assign(q_, 0);
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    qexp_[i] = static_cast<std::uint32_t>(v);
    qexp_[i + (q_ - 1)] = static_cast<std::uint32_t>(v);
    qlog_[v] = static_cast<std::uint32_t>(i);
    v = fq_mul_slow(v, g);
  }
  if (v != 1) throw FieldConstructionError("primitive element of F_q has wrong order");

  zlog_ = static_cast<std::uint32_t>(2 * (q_ - 1));
  qlog0_.assign(q_, zlog_);
  for (std::uint64_t x = 1; x < q_; ++x) qlog0_[x] = qlog_[x];
  qexp0_.assign(std::size_t(2) * zlog_ + 1, 0);
  for (std::size_t i = 0; i <= 2 * (q_ - 2); ++i) qexp0_[i] = qexp_[i];
}

void ExtField::build_reduction_rows() {
  // red_rows_[t] = y^{m+t} mod g as a digit row, t = 0..m-2
  red_rows_.assign(m_ >= 1 ? m_ - 1 : 0, std::vector<std::uint64_t>(m_, 0));
  std::vector<std::uint64_t> cur(m_, 0);
  // y^m mod g = -(g_0 + g_1 y + ... + g_{m-1} y^{m-1})
  for (unsigned i = 0; i < m_; ++i) cur[i] = fq_neg(outer_mod_[i]);
  for (unsigned t = 0; t + 1 < m_; ++t) {
    red_rows_[t] = cur;
    // multiply by y, reduce the overflowing top digit
    std::uint64_t top = cur[m_ - 1];
    for (unsigned i = m_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top) {
      for (unsigned i = 0; i < m_; ++i)
        cur[i] = fq_add(cur[i], fq_mul(top, fq_neg(outer_mod_[i])));
    }
  }
  if (p2_) {
    red_packed_.assign((m_ >= 1 ? m_ - 1 : 0) * q_, 0);
    for (unsigned t = 0; t + 1 < m_; ++t) {
      for (std::uint64_t c = 1; c < q_; ++c) {
        FieldElement packed = 0;
        for (unsigned i = 0; i < m_; ++i)
          packed |= std::uint64_t(fq_mul(c, red_rows_[t][i])) << (i * ebits_);
        red_packed_[t * q_ + c] = packed;
      }
    }
  }
}

void ExtField::build_full_tables() {
  const std::uint64_t g =
      find_primitive(order_, [this](std::uint64_t a, std::uint64_t b) { return mul_generic(a, b); });
  exp_.assign(2 * (order_ - 1), 1);
  log_.assign(order_, 0);
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < order_ - 1; ++i) {
    exp_[i] = static_cast<std::uint32_t>(v);
    exp_[i + (order_ - 1)] = static_cast<std::uint32_t>(v);
    log_[v] = static_cast<std::uint32_t>(i);
    v = mul_generic(v, g);
  }
  if (v != 1) throw FieldConstructionError("primitive element of F_{q^m} has wrong order");
  qpow_mod_ord_.resize(m_);
  for (unsigned j = 0; j < m_; ++j) qpow_mod_ord_[j] = qpow_[j] % (order_ - 1);
}

void ExtField::build_frobenius_images() {
  frob_img_.assign(std::size_t(m_) * m_, 0);
  for (unsigned j = 0; j < m_; ++j)
    for (unsigned i = 0; i < m_; ++i) {
      // (y^i)^{q^j) via plain exponentiation; construction-time only
      FieldElement b = basis_element(i), r = 1;
      std::uint64_t n = qpow_[j];
      while (n) {
        if (n & 1) r = mul_generic(r, b);
        b = mul_generic(b, b);
        n >>= 1;
      }
      frob_img_[std::size_t(j) * m_ + i] = r;
    }
}

FieldElement ExtField::add_slow(FieldElement a, FieldElement b) const {
  // base-p digit-wise addition; the encoding is a base-p digit string of
  // length e*m
  FieldElement r = 0;
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < e_ * m_; ++i) {
    const std::uint64_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    std::uint64_t d = da + db;
    if (d >= p_) d -= p_;
    r += d * stride;
    stride *= p_;
  }
  return r;
}

FieldElement ExtField::sub_slow(FieldElement a, FieldElement b) const {
  return add_slow(a, neg_slow(b));
}

FieldElement ExtField::neg_slow(FieldElement a) const {
  FieldElement r = 0;
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < e_ * m_; ++i) {
    const std::uint64_t d = a % p_;
    a /= p_;
    r += (d == 0 ? 0 : p_ - d) * stride;
    stride *= p_;
  }
  return r;
}

FieldElement ExtField::mul_generic(FieldElement a, FieldElement b) const {
  if (a == 0 || b == 0) return 0;
  if (p2_) {
    std::uint32_t acc[2 * kMaxM] = {0};
    std::uint32_t lb[kMaxM];
    std::uint64_t bd[kMaxM];
    for (unsigned j = 0; j < m_; ++j) {
      bd[j] = (b >> (j * ebits_)) & qmask_;
      if (bd[j]) lb[j] = qlog_[bd[j]];
    }
    for (unsigned i = 0; i < m_; ++i) {
      const std::uint64_t ai = (a >> (i * ebits_)) & qmask_;
      if (!ai) continue;
      const std::uint32_t la = qlog_[ai];
      for (unsigned j = 0; j < m_; ++j)
        if (bd[j]) acc[i + j] ^= qexp_[la + lb[j]];
    }
    FieldElement r = 0;
    for (unsigned i = 0; i < m_; ++i) r |= std::uint64_t(acc[i]) << (i * ebits_);
    for (unsigned t = 0; t + 1 < m_; ++t)
      if (acc[m_ + t]) r ^= red_packed_[t * q_ + acc[m_ + t]];
    return r;
  }
  // generic odd-characteristic schoolbook
  std::uint64_t acc[2 * kMaxM] = {0};
  std::uint64_t ad[kMaxM], bd[kMaxM];
  for (unsigned i = 0; i < m_; ++i) {
    ad[i] = (a / qpow_[i]) % q_;
    bd[i] = (b / qpow_[i]) % q_;
  }
  for (unsigned i = 0; i < m_; ++i) {
    if (!ad[i]) continue;
    for (unsigned j = 0; j < m_; ++j)
      if (bd[j]) acc[i + j] = fq_add(acc[i + j], fq_mul(ad[i], bd[j]));
  }
  for (unsigned t = 0; t + 1 < m_; ++t) {
    const std::uint64_t c = acc[m_ + t];
    if (!c) continue;
    for (unsigned i = 0; i < m_; ++i)
      acc[i] = fq_add(acc[i], fq_mul(c, red_rows_[t][i]));
  }
  FieldElement r = 0;
  for (unsigned i = 0; i < m_; ++i) r += acc[i] * qpow_[i];
  return r;
}

FieldElement ExtField::inv(FieldElement a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (has_tables()) return exp_[(order_ - 1) - log_[a]];
  return pow(a, order_ - 2);
}

FieldElement ExtField::pow(FieldElement a, std::uint64_t n) const {
  if (a == 0) return n == 0 ? 1 : 0;
  if (has_tables()) {
    const std::uint64_t l =
        static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * (n % (order_ - 1))) %
                                   (order_ - 1));
    return exp_[l];
  }
  FieldElement r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

FieldElement ExtField::pow(FieldElement a, const BigInt& n) const {
  if (a == 0) return n == 0 ? 1 : 0;
  const BigInt r = n % (order_ - 1);
  return pow(a, r.convert_to<std::uint64_t>());
}

FieldElement ExtField::frobenius_pow(FieldElement a, unsigned j) const {
  j %= m_;
  if (j == 0 || a == 0 || a == 1) return a;
  if (has_tables()) {
    const std::uint64_t l = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(log_[a]) * qpow_mod_ord_[j]) % (order_ - 1));
    return exp_[l];
  }
  // F_q-linear map through precomputed basis images
  FieldElement r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint64_t c = coeff(a, i);
    if (c) r = add(r, fq_scale(c, frob_img_[std::size_t(j) * m_ + i]));
  }
  return r;
}

FieldElement ExtField::from_coeffs(std::span<const std::uint64_t> c) const {
  if (c.size() != m_) throw DomainError("coordinate vector must have length m");
  FieldElement r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    if (c[i] >= q_) throw DomainError("coordinate out of range");
    r += c[i] * qpow_[i];
  }
  return r;
}

std::uint64_t ExtField::fq_add(std::uint64_t a, std::uint64_t b) const {
  if (p2_) return a ^ b;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint64_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    a /= p_;
    b /= p_;
    r += d * ppow_[i];
  }
  return r;
}

std::uint64_t ExtField::fq_sub(std::uint64_t a, std::uint64_t b) const {
  return p2_ ? (a ^ b) : fq_add(a, fq_neg(b));
}

std::uint64_t ExtField::fq_neg(std::uint64_t a) const {
  if (p2_) return a;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    const std::uint64_t d = a % p_;
    a /= p_;
    r += (d == 0 ? 0 : p_ - d) * ppow_[i];
  }
  return r;
}

std::uint64_t ExtField::fq_inv(std::uint64_t a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return qexp_[(q_ - 1) - qlog_[a]];
}

FieldElement ExtField::fq_scale(std::uint64_t c, FieldElement a) const {
  if (c == 0 || a == 0) return 0;
  if (c == 1) return a;
  const std::uint32_t lc = qlog_[c];
  FieldElement r = 0;
  if (p2_) {
    for (unsigned i = 0; i < m_; ++i) {
      const std::uint64_t d = (a >> (i * ebits_)) & qmask_;
      if (d) r |= std::uint64_t(qexp_[lc + qlog_[d]]) << (i * ebits_);
    }
  } else {
    for (unsigned i = 0; i < m_; ++i) {
      const std::uint64_t d = (a / qpow_[i]) % q_;
      if (d) r += std::uint64_t(qexp_[lc + qlog_[d]]) * qpow_[i];
    }
  }
  return r;
}

void ExtField::row_submul(FieldElement* y, const FieldElement* x, std::size_t len,
                          FieldElement c) const {
  if (c == 0) return;
  if (has_tables()) {
    const std::uint64_t lc = log_[c];
    if (p2_) {
      for (std::size_t i = 0; i < len; ++i)
        if (x[i]) y[i] ^= exp_[lc + log_[x[i]]];
    } else {
      for (std::size_t i = 0; i < len; ++i)
        if (x[i]) y[i] = sub_slow(y[i], exp_[lc + log_[x[i]]]);
    }
    return;
  }
  if (p2_) {
    // prepared digit logs of the scalar; sentinel logs make the inner loop
    // branchless (sums involving a zero digit index the zero tail of qexp0_)
    std::uint32_t lc[kMaxM];
    const unsigned mm = m_, eb = ebits_;
    for (unsigned i = 0; i < mm; ++i) lc[i] = qlog0_[(c >> (i * eb)) & qmask_];
    const std::uint32_t* exp0 = qexp0_.data();
    const std::uint32_t* log0 = qlog0_.data();
    const FieldElement* red = red_packed_.data();
    switch (mm) {
      case 1: return axpy_p2<1>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 2: return axpy_p2<2>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 3: return axpy_p2<3>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 4: return axpy_p2<4>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 5: return axpy_p2<5>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 6: return axpy_p2<6>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 7: return axpy_p2<7>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      case 8: return axpy_p2<8>(y, x, len, lc, log0, exp0, red, q_, eb, qmask_);
      default: break;
    }
    std::uint32_t acc[2 * kMaxM];
    std::uint32_t lx[kMaxM];
    for (std::size_t t = 0; t < len; ++t) {
      const std::uint64_t xv = x[t];
      if (!xv) continue;
      for (unsigned i = 0; i + 1 < 2 * mm; ++i) acc[i] = 0;
      for (unsigned j = 0; j < mm; ++j) lx[j] = qlog0_[(xv >> (j * eb)) & qmask_];
      for (unsigned i = 0; i < mm; ++i) {
        const std::uint32_t l = lc[i];
        for (unsigned j = 0; j < mm; ++j) acc[i + j] ^= exp0[l + lx[j]];
      }
      FieldElement r = 0;
      for (unsigned i = 0; i < mm; ++i) r |= std::uint64_t(acc[i]) << (i * eb);
      for (unsigned u = 0; u + 1 < mm; ++u)
        if (acc[mm + u]) r ^= red_packed_[u * q_ + acc[mm + u]];
      y[t] ^= r;
    }
    return;
  }
  for (std::size_t i = 0; i < len; ++i)
    if (x[i]) y[i] = sub_slow(y[i], mul_generic(c, x[i]));
}

void ExtField::row_scale(FieldElement* y, std::size_t len, FieldElement c) const {
  if (c == 1) return;
  for (std::size_t i = 0; i < len; ++i) y[i] = mul(y[i], c);
}

bool ExtField::same(const ExtField& a, const ExtField& b) {
  if (&a == &b) return true;
  return a.p_ == b.p_ && a.e_ == b.e_ && a.m_ == b.m_ && a.inner_mod_ == b.inner_mod_ &&
         a.outer_mod_ == b.outer_mod_;
}

std::string ExtField::describe() const {
  std::ostringstream os;
  os << "GF(" << q_;
  if (m_ > 1) os << "^" << m_;
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Automorphism
// ---------------------------------------------------------------------------

Automorphism::Automorphism(const ExtField& field, unsigned s) : F_(&field), s_(s) {
  if (s >= field.m())
    throw DomainError("automorphism exponent s must satisfy 0 <= s < m");
}

bool Automorphism::fixed_field_is_base() const {
  return std::gcd<unsigned>(s_, F_->m()) == 1;
}

unsigned Automorphism::order() const { return F_->m() / std::gcd<unsigned>(s_, F_->m()); }

FieldElement Automorphism::apply_pow(FieldElement a, long long i) const {
  const long long mm = F_->m();
  const unsigned j = static_cast<unsigned>(((i % mm) + mm) % mm);
  return F_->frobenius_pow(a, static_cast<unsigned>((std::uint64_t(j) * s_) % F_->m()));
}

FieldElement Automorphism::norm(FieldElement b) const {
  if (b == 0) return 0;
  FieldElement acc = b, t = b;
  for (unsigned j = 1; j < F_->m(); ++j) {
    t = apply(t);
    acc = F_->mul(acc, t);
  }
  return acc;
}

FieldElement Automorphism::conjugate(FieldElement a, FieldElement c) const {
  if (c == 0) throw DomainError("conjugating element must be nonzero");
  return F_->mul(F_->mul(apply(c), a), F_->inv(c));
}

BigInt double_bracket(const Automorphism& theta, unsigned i) {
  BigInt acc = 0, term = 1;
  BigInt qs = 1;
  for (unsigned j = 0; j < theta.s(); ++j) qs *= theta.field().q();
  for (unsigned j = 0; j < i; ++j) {
    acc += term;
    term *= qs;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// F_q linear algebra (small, construction/analysis paths)
// ---------------------------------------------------------------------------

namespace {

// In-place RREF over F_q; returns pivot columns.
std::vector<std::size_t> fq_rref(const ExtField& F, std::vector<std::vector<std::uint64_t>>& rows,
                                 std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    const std::uint64_t pi = F.fq_inv(rows[r][col]);
    for (std::size_t j = col; j < ncols; ++j) rows[r][j] = F.fq_mul(rows[r][j], pi);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const std::uint64_t c = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        rows[i][j] = F.fq_sub(rows[i][j], F.fq_mul(c, rows[r][j]));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t fq_rank(const ExtField& field, std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  return fq_rref(field, rows, rows[0].size()).size();
}

std::optional<std::vector<std::uint64_t>> fq_kernel_first(
    const ExtField& field, std::vector<std::vector<std::uint64_t>> rows, std::size_t ncols) {
  const auto pivots = fq_rref(field, rows, ncols);
  if (pivots.size() == ncols) return std::nullopt;
  // first free column
  std::size_t free_col = 0;
  {
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    while (free_col < ncols && is_pivot[free_col]) ++free_col;
  }
  std::vector<std::uint64_t> v(ncols, 0);
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] < free_col) v[pivots[i]] = field.fq_neg(rows[i][free_col]);
  }
  return v;
}

std::optional<FieldElement> conjugator(const Automorphism& theta, FieldElement a,
                                       FieldElement target) {
  const ExtField& F = theta.field();
  if (a == 0) {
    if (target == 0) return FieldElement(1);
    return std::nullopt;
  }
  if (target == 0) return std::nullopt;
  // Solve theta(c) a - target c = 0, an F_q-linear condition on c.
  const unsigned m = F.m();
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(m, 0));
  for (unsigned i = 0; i < m; ++i) {
    const FieldElement img =
        F.sub(F.mul(theta.apply(F.basis_element(i)), a), F.mul(target, F.basis_element(i)));
    for (unsigned r = 0; r < m; ++r) rows[r][i] = F.coeff(img, r);
  }
  auto v = fq_kernel_first(F, std::move(rows), m);
  if (!v) return std::nullopt;
  return F.from_coeffs(*v);
}

ConjugacyRepresentation conjugacy_representation(const Automorphism& theta,
                                                 std::span<const FieldElement> alpha) {
  struct Class {
    FieldElement probe;  // first member seen
    FieldElement norm;
    std::vector<std::size_t> members;
  };
  std::vector<Class> classes;
  std::vector<std::size_t> zeros;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const FieldElement v = alpha[j];
    if (v == 0) {
      zeros.push_back(j);
      continue;
    }
    const FieldElement nv = theta.norm(v);
    bool placed = false;
    for (auto& cls : classes) {
      if (cls.norm != nv) continue;  // equal norm is necessary for conjugacy
      if (conjugator(theta, cls.probe, v)) {
        cls.members.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back(Class{v, nv, {j}});
  }

  ConjugacyRepresentation rep;
  for (const auto& cls : classes) {
    FieldElement r = alpha[cls.members[0]];
    for (auto j : cls.members) r = std::min(r, alpha[j]);
    rep.reps.push_back(r);
    rep.partition.push_back(cls.members.size());
    for (auto j : cls.members) {
      rep.perm.push_back(j);
      auto b = conjugator(theta, r, alpha[j]);
      rep.conjugators.push_back(*b);
    }
  }
  rep.zero_count = zeros.size();
  for (auto j : zeros) rep.perm.push_back(j);
  return rep;
}

// ---------------------------------------------------------------------------
// text header
// ---------------------------------------------------------------------------

void write_field_header(std::ostream& os, const ExtField& field, unsigned s) {
  os << field.p() << ' ' << field.e() << ' ' << field.m() << ' ' << s << '\n';
  for (std::size_t i = 0; i < field.inner_modulus().size(); ++i)
    os << (i ? " " : "") << field.inner_modulus()[i];
  os << '\n';
  for (std::size_t i = 0; i < field.outer_modulus().size(); ++i)
    os << (i ? " " : "") << field.outer_modulus()[i];
  os << '\n';
}

ParsedFieldHeader read_field_header(std::istream& is) {
  std::uint64_t p = 0;
  unsigned e = 0, m = 0, s = 0;
  if (!(is >> p >> e >> m >> s)) throw ParseError("malformed field header line");
  if (e == 0 || m == 0 || e > 64 || m > ExtField::kMaxM)
    throw ParseError("field header degrees out of range");
  std::vector<std::uint64_t> inner(e + 1), outer(m + 1);
  for (auto& c : inner)
    if (!(is >> c)) throw ParseError("truncated inner modulus");
  for (auto& c : outer)
    if (!(is >> c)) throw ParseError("truncated outer modulus");
  ParsedFieldHeader out;
  try {
    out.field = std::make_shared<const ExtField>(static_cast<unsigned>(p), e, m, std::move(inner),
                                                 std::move(outer));
  } catch (const Error& err) {
    throw ParseError(std::string("invalid field header: ") + err.what());
  }
  if (s >= m) throw ParseError("automorphism exponent out of range");
  out.s = s;
  return out;
}

}  // namespace skewlab
