#include "skewlab/decoder.hpp"

#include <algorithm>

namespace skewlab {

namespace {

DecodeResult failure(std::string reason) {
  DecodeResult r;
  r.reason = std::move(reason);
  return r;
}

std::size_t hamming_distance(const ExtField& F, std::span<const FieldElement> a,
                             std::span<const FieldElement> b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (F.sub(a[i], b[i]) != 0);
  return d;
}

DecodeResult finish(const GsrsSpec& spec, std::span<const FieldElement> received,
                    std::size_t t, SkewPolynomial message) {
  const ExtField& F = spec.aut.field();
  DecodeResult out;
  out.codeword = gsrs_encode(spec, message);
  out.error.resize(received.size());
  for (std::size_t i = 0; i < received.size(); ++i)
    out.error[i] = F.sub(received[i], out.codeword[i]);
  std::size_t w = 0;
  for (auto v : out.error) w += (v != 0);
  if (w > t) return failure("re-encoded candidate lies outside the decoding radius");
  out.success = true;
  out.message = std::move(message);
  return out;
}

}  // namespace

DecodeResult decode_gsrs(const GsrsSpec& spec, std::span<const FieldElement> received,
                         std::size_t t) {
  const ExtField& F = spec.aut.field();
  const Automorphism& th = spec.aut;
  const std::size_t n = spec.n(), k = spec.k;
  if (received.size() != n) throw DomainError("received word length mismatch");
  if (2 * t > n - k) throw DomainError("radius exceeds the unique-decoding bound");

  // interpolation system: columns are the coefficients of Q0 (k+t of them)
  // followed by the coefficients of Q1 (t+1); row i encodes
  // rem_eval(Q0, alpha_i) + op_eval(Q1, y_i, alpha_i) = 0 with y_i = r_i / lambda_i
  const std::size_t c0 = k + t, c1 = t + 1;
  Matrix sys(F, n, c0 + c1);
  for (std::size_t i = 0; i < n; ++i) {
    const FieldElement a = spec.alpha[i];
    const FieldElement y = F.div(received[i], spec.lambda[i]);
    FieldElement pw = 1;  // a^{[[j]]}
    FieldElement tb = y;  // theta^j(y)
    for (std::size_t j = 0; j < std::max(c0, c1); ++j) {
      if (j < c0) sys.at(i, j) = pw;
      if (j < c1) sys.at(i, c0 + j) = F.mul(tb, pw);
      pw = F.mul(th.apply(pw), a);
      tb = th.apply(tb);
    }
  }

  Matrix ker = kernel_basis(sys);
  if (ker.rows() == 0) return failure("no solution");

  auto sol = ker.row_copy(0);
  SkewPolynomial q0(th, {sol.begin(), sol.begin() + c0});
  SkewPolynomial q1(th, {sol.begin() + c0, sol.end()});
  if (q1.is_zero()) return failure("locator polynomial vanished");

  auto div = divide(-q0, q1, DivisionSide::Left);
  if (!div.remainder.is_zero()) return failure("key equation division is inexact");
  if (div.quotient.degree() >= static_cast<int>(k))
    return failure("recovered message degree too large");
  return finish(spec, received, t, std::move(div.quotient));
}

DecodeResult brute_force_decode(const GsrsSpec& spec, std::span<const FieldElement> received,
                                std::size_t t, std::uint64_t budget) {
  const ExtField& F = spec.aut.field();
  const std::size_t n = spec.n(), k = spec.k;
  if (received.size() != n) throw DomainError("received word length mismatch");
  if (2 * t > n - k) throw DomainError("radius exceeds the unique-decoding bound");

  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (count > budget / F.order()) throw BudgetExceeded("message enumeration too large");
    count *= F.order();
  }

  Matrix g = gsrs_generator(spec);
  std::size_t best = n + 1;
  std::vector<FieldElement> best_msg(k, 0);
  std::vector<FieldElement> cw(n);
  for (std::uint64_t msg = 0; msg < count; ++msg) {
    std::fill(cw.begin(), cw.end(), 0);
    std::uint64_t v = msg;
    for (std::size_t r = 0; r < k; ++r) {
      const FieldElement x = v % F.order();
      v /= F.order();
      if (x == 0) continue;
      auto src = g.row(r);
      for (std::size_t j = 0; j < n; ++j)
        if (src[j]) cw[j] = F.add(cw[j], F.mul(x, src[j]));
    }
    const std::size_t d = hamming_distance(F, cw, received);
    if (d < best) {
      best = d;
      std::uint64_t w = msg;
      for (std::size_t r = 0; r < k; ++r) {
        best_msg[r] = w % F.order();
        w /= F.order();
      }
    }
  }
  if (best > t) return failure("no codeword within the decoding radius");
  return finish(spec, received, t, SkewPolynomial(spec.aut, best_msg));
}

DecodeResult decode_glrs(const GlrsSpec& spec, std::span<const FieldElement> received,
                         std::size_t t) {
  return decode_gsrs(glrs_to_gsrs(spec), received, t);
}

}  // namespace skewlab
