#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skewlab/decoder.hpp"

using namespace skewlab;

namespace {

SkewPolynomial random_message(const GsrsSpec& spec, Rng& rng) {
  std::vector<FieldElement> c(spec.k);
  for (auto& v : c) v = spec.aut.field().random(rng);
  return SkewPolynomial(spec.aut, std::move(c));
}

std::vector<FieldElement> add_error(const GsrsSpec& spec, std::span<const FieldElement> cw,
                                    std::span<const std::size_t> support,
                                    std::span<const FieldElement> values) {
  std::vector<FieldElement> r(cw.begin(), cw.end());
  const ExtField& F = spec.aut.field();
  for (std::size_t i = 0; i < support.size(); ++i)
    r[support[i]] = F.add(r[support[i]], values[i]);
  return r;
}

GsrsSpec tiny_grs9(Rng& rng, const ExtField& F9) {
  std::vector<FieldElement> pts = {1, 2, 3, 4, 5, 6};
  return GsrsSpec(Automorphism(F9, 0), pts, sample_nonzero_vector(F9, 6, rng), 2);
}

}  // namespace

TEST_CASE("error-free words decode to their message") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(1);
  for (int it = 0; it < 20; ++it) {
    auto spec = sample_gsrs(th, 12, 5, rng);
    auto f = random_message(spec, rng);
    auto cw = gsrs_encode(spec, f);
    auto res = decode_gsrs(spec, cw, 3);
    REQUIRE(res.success);
    CHECK(*res.message == f);
    CHECK(res.codeword == cw);
    for (auto v : res.error) CHECK(v == 0);
  }
}

TEST_CASE("planted errors up to the radius are corrected") {
  ExtField F(2, 4, 2);  // GF(2^8)
  Automorphism th(F, 1);
  Rng rng(2);
  const std::size_t n = 20, k = 8, t = 6;
  for (int it = 0; it < 50; ++it) {
    auto spec = sample_gsrs(th, n, k, rng);
    auto f = random_message(spec, rng);
    auto cw = gsrs_encode(spec, f);
    // random support of size t, nonzero values
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    rng.shuffle(idx);
    idx.resize(t);
    std::vector<FieldElement> vals(t);
    for (auto& v : vals) v = F.random_nonzero(rng);
    auto r = add_error(spec, cw, idx, vals);
    auto res = decode_gsrs(spec, r, t);
    REQUIRE(res.success);
    CHECK(*res.message == f);
    CHECK(res.codeword == cw);
  }
}

TEST_CASE("exhaustive oracle agreement on a tiny code") {
  ExtField F9(3, 1, 2);
  Rng rng(3);
  const std::size_t t = 2;
  for (int mi = 0; mi < 5; ++mi) {
    auto spec = tiny_grs9(rng, F9);
    auto f = random_message(spec, rng);
    auto cw = gsrs_encode(spec, f);

    auto check_pattern = [&](std::span<const std::size_t> support,
                             std::span<const FieldElement> values) {
      auto r = add_error(spec, cw, support, values);
      auto fast = decode_gsrs(spec, r, t);
      auto slow = brute_force_decode(spec, r, t);
      REQUIRE(fast.success == slow.success);
      if (fast.success) {
        CHECK(*fast.message == *slow.message);
        CHECK(fast.codeword == slow.codeword);
        CHECK(*fast.message == f);
      }
    };

    // weight 0
    check_pattern({}, {});
    // weight 1: 6 positions x 8 values
    for (std::size_t i = 0; i < 6; ++i)
      for (FieldElement v = 1; v < 9; ++v) {
        std::size_t sup[] = {i};
        FieldElement val[] = {v};
        check_pattern(sup, val);
      }
    // weight 2: 15 supports x 64 value pairs
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        for (FieldElement v = 1; v < 9; ++v)
          for (FieldElement w = 1; w < 9; ++w) {
            std::size_t sup[] = {i, j};
            FieldElement val[] = {v, w};
            check_pattern(sup, val);
          }
  }
}

TEST_CASE("beyond-radius errors never produce a silent wrong success") {
  ExtField F9(3, 1, 2);
  Rng rng(4);
  auto spec = tiny_grs9(rng, F9);
  auto f = random_message(spec, rng);
  auto cw = gsrs_encode(spec, f);
  const std::size_t t = 2;

  int agreements = 0;
  for (int it = 0; it < 300; ++it) {
    // weight-3 error
    std::vector<std::size_t> idx = {0, 1, 2, 3, 4, 5};
    rng.shuffle(idx);
    idx.resize(3);
    std::vector<FieldElement> vals(3);
    for (auto& v : vals) v = F9.random_nonzero(rng);
    auto r = add_error(spec, cw, idx, vals);

    auto fast = decode_gsrs(spec, r, t);
    auto slow = brute_force_decode(spec, r, t);
    CHECK(fast.success == slow.success);
    if (fast.success) {
      // a different codeword within radius t; soundness still holds
      std::size_t d = 0;
      for (std::size_t i = 0; i < 6; ++i) d += (F9.sub(r[i], fast.codeword[i]) != 0);
      CHECK(d <= t);
      CHECK(fast.codeword == slow.codeword);
      ++agreements;
    }
  }
  (void)agreements;
}

TEST_CASE("distance t+1 from the code is a failure") {
  ExtField F9(3, 1, 2);
  Rng rng(5);
  auto spec = tiny_grs9(rng, F9);
  const std::size_t t = 2;
  // search a vector at distance exactly 3 from the code via the oracle
  for (int it = 0; it < 200; ++it) {
    std::vector<FieldElement> r(6);
    for (auto& v : r) v = F9.random(rng);
    auto g = gsrs_generator(spec);
    std::size_t dist = 7;
    for (std::uint64_t msg = 0; msg < 81; ++msg) {
      std::vector<FieldElement> cw(6, 0);
      std::uint64_t v = msg;
      for (std::size_t row = 0; row < 2; ++row) {
        const FieldElement x = v % 9;
        v /= 9;
        for (std::size_t j = 0; j < 6; ++j)
          cw[j] = F9.add(cw[j], F9.mul(x, g.at(row, j)));
      }
      std::size_t d = 0;
      for (std::size_t j = 0; j < 6; ++j) d += (F9.sub(cw[j], r[j]) != 0);
      dist = std::min(dist, d);
    }
    if (dist != t + 1) continue;
    CHECK_FALSE(brute_force_decode(spec, r, t).success);
    CHECK_FALSE(decode_gsrs(spec, r, t).success);
    return;
  }
  FAIL("no vector at distance t+1 found");
}

TEST_CASE("the kernel is nontrivial at the full radius for even n-k") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(6);
  auto spec = sample_gsrs(th, 10, 4, rng);  // n-k = 6 even, t = 3
  for (int it = 0; it < 50; ++it) {
    std::vector<FieldElement> r(10);
    for (auto& v : r) v = F.random(rng);
    auto res = decode_gsrs(spec, r, 3);
    // k + 2t + 1 = n + 1 unknowns versus n equations: a solution always
    // exists, so the only failure modes are the post-checks
    CHECK(res.reason != "no solution");
  }
}

TEST_CASE("status and output agree with the oracle on arbitrary received words") {
  // success/failure status must match exactly: a success is a codeword within
  // radius t (soundness), and within that radius the codeword is unique
  ExtField F16(2, 2, 2);
  Automorphism th(F16, 1);
  Rng rng(14);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 4 + rng.below(3);  // 4..6
    const std::size_t k = 1 + rng.below(n - 1);
    const std::size_t t = (n - k) / 2;
    auto spec = sample_gsrs(th, n, k, rng);
    std::vector<FieldElement> r(n);
    for (auto& v : r) v = F16.random(rng);
    auto fast = decode_gsrs(spec, r, t);
    auto slow = brute_force_decode(spec, r, t);
    CHECK(fast.success == slow.success);
    if (fast.success) {
      CHECK(*fast.message == *slow.message);
      CHECK(fast.codeword == slow.codeword);
      CHECK(fast.error == slow.error);
    }
  }
}

TEST_CASE("radius validation") {
  ExtField F9(3, 1, 2);
  Rng rng(7);
  auto spec = tiny_grs9(rng, F9);
  std::vector<FieldElement> r(6, 0);
  CHECK_THROWS_AS(decode_gsrs(spec, r, 3), DomainError);   // 2t > n-k
  CHECK_THROWS_AS(brute_force_decode(spec, r, 3), DomainError);
  std::vector<FieldElement> short_r(5, 0);
  CHECK_THROWS_AS(decode_gsrs(spec, short_r, 2), DomainError);
}

TEST_CASE("enumeration budget refusal") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(8);
  auto spec = sample_gsrs(th, 12, 4, rng);
  std::vector<FieldElement> r(12, 0);
  CHECK_THROWS_AS(brute_force_decode(spec, r, 4, 1 << 10), BudgetExceeded);
}

TEST_CASE("linearized codes decode through their skew representation") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(10);
  for (int it = 0; it < 20; ++it) {
    auto spec = sample_glrs(th, 10, 4, rng);
    const std::size_t t = 3;
    // plant a codeword plus a weight-t error
    std::vector<FieldElement> coeffs(4);
    for (auto& v : coeffs) v = F.random(rng);
    SkewPolynomial f(th, coeffs);
    auto cw = star(F, op_eval(f, spec.b, spec.expanded_a()), spec.lambda);
    std::vector<std::size_t> idx = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng.shuffle(idx);
    auto r = cw;
    for (std::size_t i = 0; i < t; ++i) r[idx[i]] = F.add(r[idx[i]], F.random_nonzero(rng));
    auto res = decode_glrs(spec, r, t);
    REQUIRE(res.success);
    CHECK(res.codeword == cw);
  }
}

TEST_CASE("key equation core identity on instrumented instances") {
  // With Q1 the minimal vanishing polynomial of the conjugates at the error
  // positions and Q0 = -(Q1 f), the interpolation condition holds at every
  // position. This is the existence half of the decoder contract.
  ExtField F(2, 2, 2);
  Automorphism th(F, 1);
  Rng rng(9);
  for (int it = 0; it < 100; ++it) {
    auto spec = sample_gsrs(th, 6, 2, rng);
    auto f = random_message(spec, rng);
    auto cw = gsrs_encode(spec, f);
    const std::size_t t = 2;
    std::vector<std::size_t> idx = {0, 1, 2, 3, 4, 5};
    rng.shuffle(idx);
    const std::size_t w = rng.below(t + 1);
    idx.resize(w);
    std::vector<FieldElement> vals(w);
    for (auto& v : vals) v = F.random_nonzero(rng);
    auto r = add_error(spec, cw, idx, vals);

    std::vector<FieldElement> pts;
    for (std::size_t i = 0; i < w; ++i)
      pts.push_back(th.conjugate(spec.alpha[idx[i]], F.div(vals[i], spec.lambda[idx[i]])));
    // conjugate points may coincide or be P-dependent, so the locator degree
    // can drop below the error weight; it never exceeds it
    auto q1 = minimal_vanishing(th, pts);
    CHECK(q1.degree() <= static_cast<int>(w));
    auto q0 = -(q1 * f);
    for (std::size_t i = 0; i < 6; ++i) {
      const FieldElement y = F.div(r[i], spec.lambda[i]);
      const FieldElement cond =
          F.add(rem_eval(q0, spec.alpha[i]), op_eval(q1, y, spec.alpha[i]));
      CHECK(cond == 0);
    }
  }
}
