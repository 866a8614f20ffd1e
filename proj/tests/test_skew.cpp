#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "skewlab/skew.hpp"

using namespace skewlab;

namespace {

SkewPolynomial random_poly(const Automorphism& th, int deg, Rng& rng) {
  if (deg < 0) return SkewPolynomial::zero(th);
  std::vector<FieldElement> c(deg + 1);
  for (auto& v : c) v = th.field().random(rng);
  c[deg] = th.field().random_nonzero(rng);
  return SkewPolynomial(th, std::move(c));
}

// independent oracle: remainder of the right division by (x - a)
FieldElement rem_eval_by_division(const SkewPolynomial& f, FieldElement a) {
  auto d = divide(f, SkewPolynomial::x_minus(f.automorphism(), a), DivisionSide::Right);
  return d.remainder.coeff(0);
}

}  // namespace

TEST_CASE("twisted multiplication") {
  ExtField F4(2, 1, 2);
  Automorphism th(F4, 1);
  const FieldElement alpha = 2;

  // x * a = theta(a) * x
  auto x = SkewPolynomial::monomial(th, 1, 1);
  auto a = SkewPolynomial(th, {alpha});
  auto xa = x * a;
  CHECK(xa.coeff(0) == 0);
  CHECK(xa.coeff(1) == th.apply(alpha));

  // (x + alpha)^2 = x^2 + (alpha^2 + alpha) x + alpha^2
  auto f = SkewPolynomial(th, {alpha, 1});
  auto sq = f * f;
  const FieldElement a2 = F4.mul(alpha, alpha);
  CHECK(sq.coeff(2) == 1);
  CHECK(sq.coeff(1) == F4.add(a2, alpha));
  CHECK(sq.coeff(0) == a2);

  // identity automorphism reduces to the commutative product
  ExtField F16(2, 2, 2);
  Automorphism id(F16, 0);
  Rng rng(2);
  for (int it = 0; it < 50; ++it) {
    auto u = random_poly(id, 3, rng), v = random_poly(id, 4, rng);
    CHECK(u * v == v * u);
  }
}

TEST_CASE("automorphism mismatch is rejected") {
  ExtField F16(2, 2, 2);
  Automorphism th0(F16, 0), th1(F16, 1);
  auto f = SkewPolynomial::one(th0);
  auto g = SkewPolynomial::one(th1);
  CHECK_THROWS_AS(f * g, DomainError);
  CHECK_THROWS_AS(f + g, DomainError);
}

TEST_CASE("degrees are additive (no zero divisors)") {
  for (auto [p, e, m, s] : {std::array<unsigned, 4>{2, 2, 2, 1}, {3, 1, 2, 1}}) {
    ExtField F(p, e, m);
    Automorphism th(F, s);
    Rng rng(3);
    for (int it = 0; it < 500; ++it) {
      auto f = random_poly(th, static_cast<int>(rng.below(6)), rng);
      auto g = random_poly(th, static_cast<int>(rng.below(6)), rng);
      CHECK((f * g).degree() == f.degree() + g.degree());
    }
  }
}

TEST_CASE("division reconstructs") {
  ExtField F16(2, 4, 1);
  Automorphism id(F16, 0);
  SUBCASE("x^2 / x") {
    auto x2 = SkewPolynomial::monomial(id, 1, 2);
    auto x = SkewPolynomial::monomial(id, 1, 1);
    auto d = divide(x2, x, DivisionSide::Right);
    CHECK(d.quotient == x);
    CHECK(d.remainder.is_zero());
  }
  ExtField F(2, 2, 2);
  Automorphism th(F, 1);
  SUBCASE("f / f for monic f") {
    Rng rng(5);
    auto f = random_poly(th, 4, rng).monic();
    for (auto side : {DivisionSide::Left, DivisionSide::Right}) {
      auto d = divide(f, f, side);
      CHECK(d.quotient == SkewPolynomial::one(th));
      CHECK(d.remainder.is_zero());
    }
  }
  SUBCASE("random reconstruction, both sides") {
    Rng rng(6);
    for (int it = 0; it < 300; ++it) {
      auto f = random_poly(th, static_cast<int>(rng.below(7)), rng);
      auto g = random_poly(th, static_cast<int>(rng.below(4)), rng);
      if (g.is_zero()) {
        CHECK_THROWS_AS(divide(f, g, DivisionSide::Right), DomainError);
        continue;
      }
      auto r = divide(f, g, DivisionSide::Right);
      CHECK(r.remainder.degree() < g.degree());
      CHECK(r.quotient * g + r.remainder == f);
      auto l = divide(f, g, DivisionSide::Left);
      CHECK(l.remainder.degree() < g.degree());
      CHECK(g * l.quotient + l.remainder == f);
    }
  }
}

TEST_CASE("lclm and gcrd") {
  ExtField F9(3, 1, 2);
  Automorphism th(F9, 1);
  Rng rng(7);

  auto f = random_poly(th, 3, rng);
  CHECK(gcrd(f, f) == f.monic());
  auto xa = SkewPolynomial::x_minus(th, 5);
  CHECK(lclm(xa, xa) == xa);

  SUBCASE("degree identity and divisibility") {
    for (int it = 0; it < 200; ++it) {
      auto a = random_poly(th, 1 + static_cast<int>(rng.below(4)), rng);
      auto b = random_poly(th, 1 + static_cast<int>(rng.below(4)), rng);
      auto g = gcrd(a, b);
      auto l = lclm(a, b);
      CHECK(g.is_monic());
      CHECK(l.is_monic());
      CHECK(divide(a, g, DivisionSide::Right).remainder.is_zero());
      CHECK(divide(b, g, DivisionSide::Right).remainder.is_zero());
      CHECK(divide(l, a, DivisionSide::Right).remainder.is_zero());
      CHECK(divide(l, b, DivisionSide::Right).remainder.is_zero());
      CHECK(l.degree() + g.degree() == a.degree() + b.degree());
    }
  }

  SUBCASE("distinct conjugacy classes give degree 2") {
    // norms distinguish classes under s = 1
    FieldElement a = 0, b = 0;
    for (FieldElement x = 1; x < 9 && (a == 0 || b == 0); ++x) {
      if (a == 0) {
        a = x;
      } else if (th.norm(x) != th.norm(a)) {
        b = x;
      }
    }
    REQUIRE(b != 0);
    auto l = lclm(SkewPolynomial::x_minus(th, a), SkewPolynomial::x_minus(th, b));
    CHECK(l.degree() == 2);
  }
}

TEST_CASE("remainder evaluation") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(9);

  for (int it = 0; it < 200; ++it) {
    auto f = random_poly(th, static_cast<int>(rng.below(6)), rng);
    FieldElement a = F.random(rng);
    CHECK(rem_eval(f, a) == rem_eval_by_division(f, a));
  }

  FieldElement a = F.random_nonzero(rng);
  CHECK(rem_eval(SkewPolynomial::x_minus(th, a), a) == 0);
  CHECK(rem_eval(SkewPolynomial(th, {7}), a) == 7);
  // x^2 evaluates to a^{1 + q^s}
  auto x2 = SkewPolynomial::monomial(th, 1, 2);
  CHECK(rem_eval(x2, a) == F.pow(a, double_bracket(th, 2)));
  CHECK(double_bracket(th, 2) == 1 + 16);
}

TEST_CASE("generalized operator evaluation") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(10);

  auto f = random_poly(th, 4, rng);
  FieldElement a = F.random(rng);
  CHECK(op_eval(f, 0, a) == 0);

  auto x = SkewPolynomial::monomial(th, 1, 1);
  FieldElement b = F.random_nonzero(rng);
  CHECK(op_eval(x, b, a) == F.mul(th.apply(b), a));

  // op_eval(f, b, a) = rem_eval(f, a^b) * b for b != 0
  for (int it = 0; it < 200; ++it) {
    auto g = random_poly(th, static_cast<int>(rng.below(6)), rng);
    FieldElement aa = F.random(rng), bb = F.random_nonzero(rng);
    CHECK(op_eval(g, bb, aa) == F.mul(rem_eval(g, th.conjugate(aa, bb)), bb));
  }
}

TEST_CASE("product rule for remainder evaluation") {
  for (auto [p, e, m, s] : {std::array<unsigned, 4>{2, 2, 2, 1}, {3, 1, 2, 1}, {2, 1, 4, 3}}) {
    ExtField F(p, e, m);
    Automorphism th(F, s);
    Rng rng(11);
    for (int it = 0; it < 500; ++it) {
      auto f = random_poly(th, static_cast<int>(rng.below(5)), rng);
      auto g = random_poly(th, static_cast<int>(rng.below(5)), rng);
      FieldElement a = F.random(rng);
      const FieldElement ga = rem_eval(g, a);
      const FieldElement lhs = rem_eval(f * g, a);
      if (ga == 0) {
        CHECK(lhs == 0);
      } else {
        CHECK(lhs == F.mul(rem_eval(f, th.conjugate(a, ga)), ga));
      }
    }
  }
}

TEST_CASE("minimal vanishing polynomials") {
  ExtField F9(3, 1, 2);
  Automorphism th(F9, 1);

  std::vector<FieldElement> one_pt = {4};
  CHECK(minimal_vanishing(th, one_pt) == SkewPolynomial::x_minus(th, 4));
  std::vector<FieldElement> rep_pt = {4, 4};
  CHECK(minimal_vanishing(th, rep_pt) == SkewPolynomial::x_minus(th, 4));

  // distinct nonzero points of GF(9) under the identity: classes are
  // singletons, so the minimal polynomial has full degree
  Automorphism id(F9, 0);
  std::vector<FieldElement> pts = {1, 2, 3, 4, 5, 6, 7, 8};
  auto mv = minimal_vanishing(id, pts);
  CHECK(mv.degree() == 8);
  for (auto a : pts) CHECK(rem_eval(mv, a) == 0);

  // vanishing property under a nontrivial automorphism
  std::vector<FieldElement> mixed = {1, 2, 3, 5};
  auto mv2 = minimal_vanishing(th, mixed);
  for (auto a : mixed) CHECK(rem_eval(mv2, a) == 0);
  CHECK(mv2.degree() <= 4);
}

TEST_CASE("skew polynomial text round trip") {
  ExtField F(2, 4, 2);
  Automorphism th(F, 1);
  Rng rng(12);
  auto f = random_poly(th, 5, rng);
  std::stringstream ss;
  write_skew_polynomial(ss, f);
  auto parsed = read_skew_polynomial(ss);
  CHECK(ExtField::same(*parsed.field, F));
  REQUIRE(parsed.poly.has_value());
  CHECK(parsed.poly->coeffs() == f.coeffs());
  CHECK(parsed.poly->automorphism().s() == 1);

  std::stringstream zs;
  write_skew_polynomial(zs, SkewPolynomial::zero(th));
  auto zero = read_skew_polynomial(zs);
  REQUIRE(zero.poly.has_value());
  CHECK(zero.poly->is_zero());
}

TEST_CASE("P-independence") {
  ExtField F9(3, 1, 2);
  Automorphism th(F9, 1);

  std::vector<FieldElement> with_zero = {1, 0, 2};
  CHECK_FALSE(is_p_independent(th, with_zero));
  std::vector<FieldElement> repeated = {5, 5};
  CHECK_FALSE(is_p_independent(th, repeated));

  // Gabidulin-style locators b^{q-1} for F_q-independent b
  ExtField F256(2, 1, 8);
  Automorphism sigma(F256, 1);
  std::vector<FieldElement> b, bq1;
  for (unsigned i = 0; i < 8; ++i) b.push_back(F256.basis_element(i));
  for (auto v : b) bq1.push_back(F256.pow(v, F256.q() - 1));
  CHECK(is_p_independent(sigma, bq1));

  SUBCASE("lclm-degree route agrees with the class/block-rank route") {
    for (auto [p, e, m, s] : {std::array<unsigned, 4>{3, 1, 2, 1}, {2, 2, 2, 1}}) {
      ExtField F(p, e, m);
      Automorphism theta(F, s);
      Rng rng(13);
      for (int it = 0; it < 200; ++it) {
        const std::size_t n = 1 + rng.below(4);
        std::vector<FieldElement> alpha(n);
        for (auto& v : alpha) v = F.random(rng);

        bool expected;
        {
          // criterion: nonzero entries, and each class block of the
          // conjugacy representation has F_q-independent conjugators
          expected = true;
          for (auto v : alpha)
            if (v == 0) expected = false;
          if (expected) {
            auto rep = conjugacy_representation(theta, alpha);
            std::size_t pos = 0;
            for (std::size_t c = 0; c < rep.reps.size() && expected; ++c) {
              std::vector<std::vector<std::uint64_t>> block(
                  F.m(), std::vector<std::uint64_t>(rep.partition[c], 0));
              for (std::size_t i = 0; i < rep.partition[c]; ++i, ++pos)
                for (unsigned r = 0; r < F.m(); ++r)
                  block[r][i] = F.coeff(rep.conjugators[pos], r);
              expected = fq_rank(F, block) == rep.partition[c];
            }
          }
        }
        CHECK(is_p_independent(theta, alpha) == expected);
      }
    }
  }
}
