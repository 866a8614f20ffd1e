#include "skewlab/reskew.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

namespace skewlab {

std::uint64_t ReskewParams::q() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) v *= p;
  return v;
}

void ReskewParams::validate() const {
  if (m <= 1) throw DomainError("m > 1 is required");
  if (s == 0 || s >= m || std::gcd(s, m) != 1)
    throw DomainError("0 < s < m with gcd(s, m) = 1 is required");
  if (n == 0 || k == 0 || k >= n) throw DomainError("0 < k < n is required");
  if (n > std::uint64_t(m) * (q() - 1))
    throw DomainError("n exceeds the maximum length m(q-1)");
  if (t != (n - k) / 2) throw DomainError("t must equal floor((n-k)/2)");
  if (t == 0) throw DomainError("t must be positive");
}

std::shared_ptr<const ExtField> ReskewParams::make_field() const {
  return std::make_shared<const ExtField>(p, e, m);
}

ReskewParams ReskewParams::named(const std::string& name) {
  // q m s n k t
  struct Entry {
    const char* name;
    unsigned p, e, m, s;
    std::size_t n, k, t;
  };
  static const Entry table[] = {
      {"reskew-1", 233, 1, 2, 1, 427, 325, 51},
      {"reskew-1-bin", 2, 8, 2, 1, 427, 325, 51},
      {"reskew-3", 331, 1, 2, 1, 627, 465, 81},
      {"reskew-3-bin", 2, 9, 2, 1, 626, 464, 81},
      {"reskew-5", 457, 1, 2, 1, 842, 624, 109},
      {"reskew-5-bin", 2, 9, 2, 1, 842, 624, 109},
      {"toy-9", 3, 2, 2, 1, 12, 8, 2},
      {"toy-256", 2, 4, 2, 1, 24, 16, 4},
  };
  for (const auto& entry : table) {
    if (name == entry.name) {
      ReskewParams out;
      out.p = entry.p;
      out.e = entry.e;
      out.m = entry.m;
      out.s = entry.s;
      out.n = entry.n;
      out.k = entry.k;
      out.t = entry.t;
      out.validate();
      return out;
    }
  }
  throw DomainError("unknown parameter set " + name);
}

std::vector<std::string> ReskewParams::names() {
  return {"reskew-1",     "reskew-3",     "reskew-5",     "reskew-1-bin",
          "reskew-3-bin", "reskew-5-bin", "toy-9",        "toy-256"};
}

std::vector<std::string> ReskewParams::production_names() {
  return {"reskew-1", "reskew-1-bin", "reskew-3", "reskew-3-bin", "reskew-5", "reskew-5-bin"};
}

GsrsSpec SecretKey::code_spec() const {
  return GsrsSpec(Automorphism(*field, params.s), b, lambda, params.k);
}

Keypair keygen(const ReskewParams& params, Rng& rng) {
  params.validate();
  auto field = params.make_field();
  const Automorphism th(*field, params.s);
  constexpr unsigned kMaxRetries = 64;
  for (unsigned attempt = 0; attempt < kMaxRetries; ++attempt) {
    auto b = sample_p_independent(th, params.n, rng);
    auto lambda = sample_nonzero_vector(*field, params.n, rng);
    GsrsSpec spec(th, b, lambda, params.k);
    // sampling an exactly Gabidulin-shaped pair is a measure-zero event;
    // flag it in debug builds rather than paying for the check in release
    assert(!has_gabidulin_multiplier_shape(spec));
    Matrix g = gsrs_generator(spec);
    Matrix u(*field, 0, 0);
    try {
      u = systematic_right(g);
    } catch (const SystematicFormUnavailable&) {
      continue;  // resample the whole code
    }
    // T = -U^T, so that H_pub = (I | T) checks the secret code
    Matrix t_block = transpose(u);
    for (std::size_t i = 0; i < t_block.rows(); ++i)
      for (std::size_t j = 0; j < t_block.cols(); ++j)
        t_block.at(i, j) = field->neg(t_block.at(i, j));
    Keypair kp{PublicKey{params, field, std::move(t_block)},
               SecretKey{params, field, std::move(b), std::move(lambda)}, attempt};
    return kp;
  }
  throw Error("key generation exhausted its retry budget");
}

Ciphertext encrypt(const PublicKey& pk, std::span<const FieldElement> msg) {
  const ExtField& F = *pk.field;
  const std::size_t n = pk.params.n, k = pk.params.k, r = n - k;
  if (msg.size() != n) throw DomainError("message length must be n");
  std::size_t w = 0;
  for (auto v : msg) w += (v != 0);
  if (w != pk.params.t) throw DomainError("message weight must be exactly t");

  // c = msg * (I | T)^T: the identity part contributes the first n-k
  // coordinates, the T part folds in the trailing k.
  std::vector<FieldElement> c(msg.begin(), msg.begin() + r);
  for (std::size_t j = 0; j < k; ++j) {
    const FieldElement v = msg[r + j];
    if (v == 0) continue;
    for (std::size_t i = 0; i < r; ++i)
      c[i] = F.add(c[i], F.mul(pk.t_block.at(i, j), v));
  }
  return Ciphertext{pk.params, pk.field, std::move(c)};
}

std::vector<FieldElement> decrypt(const SecretKey& sk, const Ciphertext& ct) {
  const ExtField& F = *sk.field;
  if (!(ct.params == sk.params)) throw DomainError("ciphertext and key parameters differ");
  if (ct.c.size() != sk.params.n - sk.params.k) throw DomainError("ciphertext length mismatch");

  std::vector<FieldElement> c0(sk.params.n, 0);
  std::copy(ct.c.begin(), ct.c.end(), c0.begin());
  const GsrsSpec spec = sk.code_spec();
  DecodeResult res = decode_gsrs(spec, c0, sk.params.t);
  if (!res.success) throw DecryptionError("bounded-distance decoding failed: " + res.reason);
  std::vector<FieldElement> msg(sk.params.n);
  for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = F.sub(c0[i], res.codeword[i]);
  std::size_t w = 0;
  for (auto v : msg) w += (v != 0);
  if (w != sk.params.t) throw DecryptionError("recovered message weight differs from t");
  return msg;
}

std::vector<FieldElement> sample_message(const ReskewParams& params, const ExtField& field,
                                         Rng& rng) {
  std::vector<std::size_t> idx(params.n);
  for (std::size_t i = 0; i < params.n; ++i) idx[i] = i;
  rng.shuffle(idx);
  std::vector<FieldElement> msg(params.n, 0);
  for (std::size_t i = 0; i < params.t; ++i) msg[idx[i]] = field.random_nonzero(rng);
  return msg;
}

namespace {

unsigned element_bits(const ReskewParams& params) {
  std::uint64_t order = 1;
  for (unsigned i = 0; i < params.m; ++i) order *= params.q();
  unsigned bits = 0;
  while ((1ull << bits) < order) ++bits;
  return bits;
}

}  // namespace

std::uint64_t payload_bytes(const ReskewParams& params, std::uint64_t element_count) {
  return (element_count * element_bits(params) + 7) / 8;
}

SizeTriple sizes(const ReskewParams& params) {
  const std::uint64_t r = params.n - params.k;
  return SizeTriple{payload_bytes(params, std::uint64_t(params.k) * r),
                    payload_bytes(params, 2 * std::uint64_t(params.n)),
                    payload_bytes(params, r)};
}

double prange_log2(std::uint64_t n, std::uint64_t k, std::uint64_t t) {
  if (t > n) throw DomainError("error weight exceeds the length");
  if (t > n - k) return std::numeric_limits<double>::infinity();  // no valid permutation exists
  auto binom = [](std::uint64_t nn, std::uint64_t kk) {
    BigInt b = 1;
    for (std::uint64_t i = 0; i < kk; ++i) {
      b *= (nn - i);
      b /= (i + 1);
    }
    return b;
  };
  auto log2_big = [](const BigInt& b) {
    if (b <= 0) throw DomainError("log of a nonpositive value");
    const auto bits = boost::multiprecision::msb(b);  // floor(log2 b)
    if (bits <= 52) return std::log2(b.convert_to<double>());
    const BigInt top = b >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
  };
  const BigInt num = binom(n, t), den = binom(n - k, t);
  if (num == den) return 0.0;
  return log2_big(num) - log2_big(den);
}

// ---------------------------------------------------------------------------
// binary serialization
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'R', 'S', 'K', 'W'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kKindPk = 0x01, kKindSk = 0x02, kKindCt = 0x03;

void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

void put_u16(std::ostream& os, std::uint16_t v) {
  os.put(static_cast<char>(v >> 8));
  os.put(static_cast<char>(v & 0xff));
}

std::uint8_t get_u8(std::istream& is) {
  const int c = is.get();
  if (c == EOF) throw ParseError("truncated header");
  return static_cast<std::uint8_t>(c);
}

std::uint16_t get_u16(std::istream& is) {
  const std::uint16_t hi = get_u8(is);
  return static_cast<std::uint16_t>((hi << 8) | get_u8(is));
}

class BitWriter {
 public:
  explicit BitWriter(std::ostream& os) : os_(os) {}
  void put(std::uint64_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) {
      buf_ = static_cast<std::uint8_t>((buf_ << 1) | ((value >> i) & 1));
      if (++fill_ == 8) {
        os_.put(static_cast<char>(buf_));
        buf_ = 0;
        fill_ = 0;
      }
    }
  }
  void flush() {
    if (fill_) {
      os_.put(static_cast<char>(buf_ << (8 - fill_)));
      buf_ = 0;
      fill_ = 0;
    }
  }

 private:
  std::ostream& os_;
  std::uint8_t buf_ = 0;
  unsigned fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::istream& is) : is_(is) {}
  std::uint64_t get(unsigned bits) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < bits; ++i) {
      if (fill_ == 0) {
        const int c = is_.get();
        if (c == EOF) throw ParseError("truncated payload");
        buf_ = static_cast<std::uint8_t>(c);
        fill_ = 8;
      }
      v = (v << 1) | ((buf_ >> (fill_ - 1)) & 1);
      --fill_;
    }
    return v;
  }

 private:
  std::istream& is_;
  std::uint8_t buf_ = 0;
  unsigned fill_ = 0;
};

void write_header(std::ostream& os, std::uint8_t kind, const ReskewParams& params,
                  const ExtField& field) {
  os.write(kMagic, 4);
  put_u8(os, kVersion);
  put_u8(os, kind);
  put_u16(os, static_cast<std::uint16_t>(params.p));
  put_u8(os, static_cast<std::uint8_t>(params.e));
  put_u8(os, static_cast<std::uint8_t>(params.m));
  put_u8(os, static_cast<std::uint8_t>(params.s));
  put_u16(os, static_cast<std::uint16_t>(params.n));
  put_u16(os, static_cast<std::uint16_t>(params.k));
  put_u16(os, static_cast<std::uint16_t>(params.t));
  for (auto c : field.inner_modulus()) put_u16(os, static_cast<std::uint16_t>(c));
  for (auto c : field.outer_modulus()) put_u16(os, static_cast<std::uint16_t>(c));
}

void write_payload(std::ostream& os, const ExtField& field,
                   std::span<const FieldElement> elements) {
  BitWriter bw(os);
  const unsigned bits = field.bits_per_element();
  for (auto v : elements) bw.put(v, bits);
  bw.flush();
}

struct ParsedHeader {
  ReskewParams params;
  std::shared_ptr<const ExtField> field;
};

ParsedHeader read_header(std::istream& is, std::uint8_t expected_kind) {
  char magic[4];
  if (!is.read(magic, 4)) throw ParseError("truncated header");
  if (!std::equal(magic, magic + 4, kMagic)) throw ParseError("bad magic");
  if (get_u8(is) != kVersion) throw ParseError("unsupported version");
  const std::uint8_t kind = get_u8(is);
  if (kind != expected_kind) throw ParseError("unexpected payload kind");
  ParsedHeader out;
  out.params.p = get_u16(is);
  out.params.e = get_u8(is);
  out.params.m = get_u8(is);
  out.params.s = get_u8(is);
  out.params.n = get_u16(is);
  out.params.k = get_u16(is);
  out.params.t = get_u16(is);
  try {
    out.params.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("inconsistent parameters: ") + e.what());
  }
  std::vector<std::uint64_t> inner(out.params.e + 1);
  for (auto& c : inner) c = get_u16(is);
  std::vector<FieldElement> outer(out.params.m + 1);
  for (auto& c : outer) c = get_u16(is);
  try {
    out.field = std::make_shared<const ExtField>(out.params.p, out.params.e, out.params.m,
                                                 std::move(inner), std::move(outer));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid field description: ") + e.what());
  }
  return out;
}

std::vector<FieldElement> read_payload(std::istream& is, const ExtField& field,
                                       std::uint64_t count) {
  BitReader br(is);
  const unsigned bits = field.bits_per_element();
  std::vector<FieldElement> out(count);
  for (auto& v : out) {
    v = br.get(bits);
    if (v >= field.order()) throw ParseError("element encoding exceeds the field order");
  }
  if (is.peek() != EOF) throw ParseError("trailing bytes after the payload");
  return out;
}

}  // namespace

void write_public_key(std::ostream& os, const PublicKey& pk) {
  write_header(os, kKindPk, pk.params, *pk.field);
  std::vector<FieldElement> elems;
  elems.reserve(pk.t_block.rows() * pk.t_block.cols());
  for (std::size_t i = 0; i < pk.t_block.rows(); ++i)
    for (std::size_t j = 0; j < pk.t_block.cols(); ++j) elems.push_back(pk.t_block.at(i, j));
  write_payload(os, *pk.field, elems);
}

void write_secret_key(std::ostream& os, const SecretKey& sk) {
  write_header(os, kKindSk, sk.params, *sk.field);
  std::vector<FieldElement> elems(sk.b);
  elems.insert(elems.end(), sk.lambda.begin(), sk.lambda.end());
  write_payload(os, *sk.field, elems);
}

void write_ciphertext(std::ostream& os, const Ciphertext& ct) {
  write_header(os, kKindCt, ct.params, *ct.field);
  write_payload(os, *ct.field, ct.c);
}

PublicKey read_public_key(std::istream& is) {
  ParsedHeader h = read_header(is, kKindPk);
  const std::size_t r = h.params.n - h.params.k;
  auto elems = read_payload(is, *h.field, std::uint64_t(r) * h.params.k);
  Matrix t_block(*h.field, r, h.params.k);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < h.params.k; ++j) t_block.at(i, j) = elems[pos++];
  return PublicKey{h.params, h.field, std::move(t_block)};
}

SecretKey read_secret_key(std::istream& is) {
  ParsedHeader h = read_header(is, kKindSk);
  auto elems = read_payload(is, *h.field, 2 * std::uint64_t(h.params.n));
  std::vector<FieldElement> b(elems.begin(), elems.begin() + h.params.n);
  std::vector<FieldElement> lambda(elems.begin() + h.params.n, elems.end());
  SecretKey sk{h.params, h.field, std::move(b), std::move(lambda)};
  try {
    sk.code_spec();  // validates P-independence and nonzero multipliers
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid secret key material: ") + e.what());
  }
  return sk;
}

Ciphertext read_ciphertext(std::istream& is) {
  ParsedHeader h = read_header(is, kKindCt);
  auto c = read_payload(is, *h.field, h.params.n - h.params.k);
  return Ciphertext{h.params, h.field, std::move(c)};
}

std::uint64_t header_bytes(const ReskewParams& params) {
  return 4 + 1 + 1 + 2 + 1 + 1 + 1 + 2 + 2 + 2 + 2 * (std::uint64_t(params.e) + 1) +
         2 * (std::uint64_t(params.m) + 1);
}

void write_message(std::ostream& os, std::span<const FieldElement> msg) {
  for (std::size_t i = 0; i < msg.size(); ++i) os << (i ? " " : "") << msg[i];
  os << '\n';
}

std::vector<FieldElement> read_message(std::istream& is, const ExtField& field, std::size_t n) {
  std::vector<FieldElement> msg(n);
  for (auto& v : msg) {
    if (!(is >> v)) throw ParseError("truncated message file");
    if (v >= field.order()) throw ParseError("message entry exceeds the field order");
  }
  return msg;
}

}  // namespace skewlab
