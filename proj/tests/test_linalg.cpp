#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "skewlab/linalg.hpp"

using namespace skewlab;

namespace {

// skew Vandermonde ladder: row 0 = multipliers, row r+1 = theta(row r) * alpha
Matrix vandermonde(const Automorphism& th, std::span<const FieldElement> alpha,
                   std::span<const FieldElement> lambda, std::size_t k) {
  const ExtField& F = th.field();
  Matrix g(F, k, alpha.size());
  std::vector<FieldElement> pw(alpha.size(), 1);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < alpha.size(); ++j) g.at(r, j) = F.mul(pw[j], lambda[j]);
    for (std::size_t j = 0; j < alpha.size(); ++j) pw[j] = F.mul(th.apply(pw[j]), alpha[j]);
  }
  return g;
}

std::vector<FieldElement> ones(std::size_t n) { return std::vector<FieldElement>(n, 1); }

std::vector<FieldElement> distinct_nonzero(std::size_t n) {
  std::vector<FieldElement> v;
  for (FieldElement x = 1; v.size() < n; ++x) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("rref basics") {
  ExtField F9(3, 1, 2);
  auto id = Matrix::identity(F9, 4);
  auto r = rref(id);
  CHECK(r.rank == 4);
  CHECK(r.reduced == id);

  Matrix z(F9, 3, 5);
  CHECK(rref(z).rank == 0);
  CHECK(rref(z).reduced == z);

  // skew Vandermonde of P-independent points has full rank
  Automorphism id9(F9, 0);
  auto pts = distinct_nonzero(6);
  auto g = vandermonde(id9, pts, ones(6), 3);
  CHECK(rank(g) == 3);
}

TEST_CASE("systematic form with trailing identity block") {
  ExtField F16(2, 2, 2);
  Rng rng(1);
  Matrix a(F16, 3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = F16.random(rng);

  // G = (A | I)
  Matrix g(F16, 3, 7);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) g.at(i, j) = a.at(i, j);
    g.at(i, 4 + i) = 1;
  }
  CHECK(systematic_right(g) == a);

  // duplicated columns inside the trailing block
  Matrix bad = g;
  for (std::size_t i = 0; i < 3; ++i) bad.at(i, 5) = bad.at(i, 6);
  CHECK_THROWS_AS(systematic_right(bad), SystematicFormUnavailable);
}

TEST_CASE("dual bases") {
  ExtField F9(3, 1, 2);
  Rng rng(2);

  SUBCASE("standard form") {
    Matrix a(F9, 2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) a.at(i, j) = F9.random(rng);
    Matrix g(F9, 2, 5);
    for (std::size_t i = 0; i < 2; ++i) {
      g.at(i, i) = 1;
      for (std::size_t j = 0; j < 3; ++j) g.at(i, 2 + j) = a.at(i, j);
    }
    Matrix h_expect(F9, 3, 5);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) h_expect.at(i, j) = F9.neg(a.at(j, i));
      h_expect.at(i, 2 + i) = 1;
    }
    Matrix h = dual_basis(g);
    CHECK(h.rows() == 3);
    CHECK(is_zero_matrix(mul(g, transpose(h))));
    CHECK(same_row_space(h, h_expect));
  }

  SUBCASE("full space has empty dual") {
    Matrix g = Matrix::identity(F9, 4);
    CHECK(dual_basis(g).rows() == 0);
  }

  SUBCASE("random codes: orthogonality and involution") {
    for (int it = 0; it < 30; ++it) {
      Matrix g = random_code(F9, 6, 3, rng);
      Matrix h = dual_basis(g);
      CHECK(h.rows() == 3);
      CHECK(rank(h) == 3);
      CHECK(is_zero_matrix(mul(g, transpose(h))));
      CHECK(same_row_space(dual_basis(h), g));
    }
  }
}

TEST_CASE("puncture and shorten") {
  ExtField F9(3, 1, 2);
  Automorphism id9(F9, 0);
  Rng rng(3);

  auto pts = distinct_nonzero(7);
  std::vector<FieldElement> lam(7);
  for (auto& v : lam) v = F9.random_nonzero(rng);
  Matrix g = vandermonde(id9, pts, lam, 3);  // MDS

  SUBCASE("empty index set keeps the code") {
    std::vector<std::size_t> none;
    CHECK(same_row_space(puncture(g, none), g));
    CHECK(same_row_space(shorten(g, none), g));
  }

  SUBCASE("shortening an MDS code drops length and dimension by one") {
    std::vector<std::size_t> one = {2};
    Matrix s = shorten(g, one);
    CHECK(s.cols() == 6);
    CHECK(s.rows() == 2);
    CHECK(rank(s) == 2);
  }

  SUBCASE("out of range index") {
    std::vector<std::size_t> bad = {7};
    CHECK_THROWS_AS(puncture(g, bad), DomainError);
  }

  SUBCASE("duality: shorten(C)^perp = puncture(C^perp)") {
    for (int it = 0; it < 25; ++it) {
      Matrix c = random_code(F9, 8, 4, rng);
      std::vector<std::size_t> idx = {1, 5};
      Matrix lhs = dual_basis(shorten(c, idx));
      Matrix rhs = puncture(dual_basis(c), idx);
      CHECK(same_row_space(lhs, rhs));
    }
  }
}

TEST_CASE("square dimensions") {
  ExtField F16(2, 2, 2);
  Rng rng(4);

  SUBCASE("one-dimensional codes square to dimension one") {
    Matrix g(F16, 1, 5);
    for (std::size_t j = 0; j < 5; ++j) g.at(0, j) = F16.random_nonzero(rng);
    CHECK(square_dim(g) == 1);
  }

  SUBCASE("classical generalized Reed-Solomon squares hit 2k-1") {
    Automorphism id16(F16, 0);
    auto pts = distinct_nonzero(11);
    std::vector<FieldElement> lam(11);
    for (auto& v : lam) v = F16.random_nonzero(rng);
    for (std::size_t k : {2, 3, 4, 5}) {
      Matrix g = vandermonde(id16, pts, lam, k);
      CHECK(square_dim(g) == 2 * k - 1);
    }
  }

  SUBCASE("random code over a large field saturates") {
    ExtField F(2, 4, 4);  // GF(2^16)
    Rng r2(5);
    Matrix g = random_code(F, 60, 14, r2);
    CHECK(square_dim(g) == 60);
    Matrix g2 = random_code(F, 60, 10, r2);
    CHECK(square_dim(g2) == 55);
  }

  SUBCASE("dimension bound") {
    for (int it = 0; it < 20; ++it) {
      const std::size_t n = 4 + rng.below(8);
      const std::size_t k = 1 + rng.below(n);
      Matrix g = random_code(F16, n, k, rng);
      CHECK(square_dim(g) <= std::min(k * (k + 1) / 2, n));
    }
  }

  SUBCASE("monomial disguising preserves the square dimension") {
    Matrix g = random_code(F16, 9, 3, rng);
    const std::size_t d = square_dim(g);
    for (int it = 0; it < 10; ++it) {
      Monomial mono = random_monomial(F16, 9, rng);
      CHECK(square_dim(apply_monomial(g, mono)) == d);
    }
  }
}

TEST_CASE("random-square saturation across moderate parameter rows") {
  // the two sub-2^20 field rows; the larger rows run in the acceptance suite
  struct Row {
    unsigned p, e, m;
    std::size_t n, k;
  };
  const Row rows[] = {
      {2, 4, 4, 60, 10}, {2, 4, 4, 60, 13}, {2, 4, 4, 60, 14},
      {2, 6, 2, 126, 32}, {2, 6, 2, 126, 42}, {2, 6, 2, 126, 43},
  };
  for (const auto& row : rows) {
    ExtField F(row.p, row.e, row.m);
    Rng rng(1000 + row.k);
    const std::size_t expect = std::min(row.k * (row.k + 1) / 2, row.n);
    std::size_t hits = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t)
      hits += square_dim(random_code(F, row.n, row.k, rng)) == expect;
    CHECK(hits >= 95);
  }
}

TEST_CASE("monomial transforms") {
  ExtField F16(2, 2, 2);
  Rng rng(6);
  Matrix g = random_code(F16, 8, 3, rng);

  SUBCASE("identity monomial") {
    Monomial mono;
    mono.diag = ones(8);
    mono.perm.resize(8);
    for (std::size_t i = 0; i < 8; ++i) mono.perm[i] = i;
    CHECK(apply_monomial(g, mono) == g);
  }

  SUBCASE("matrix route agrees and weights are preserved") {
    Monomial mono = random_monomial(F16, 8, rng);
    Matrix gm = apply_monomial(g, mono);
    CHECK(gm == mul(g, mono.to_matrix(F16)));
    for (int it = 0; it < 100; ++it) {
      std::vector<FieldElement> x(3);
      for (auto& v : x) v = F16.random(rng);
      std::vector<FieldElement> cw(8, 0), cwm(8, 0);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t j = 0; j < 8; ++j) {
          cw[j] = F16.add(cw[j], F16.mul(x[r], g.at(r, j)));
          cwm[j] = F16.add(cwm[j], F16.mul(x[r], gm.at(r, j)));
        }
      CHECK(weight(F16, cw, WeightSpec::hamming()) == weight(F16, cwm, WeightSpec::hamming()));
    }
  }
}

TEST_CASE("weights") {
  ExtField F(2, 2, 2);
  Automorphism th(F, 1);
  Rng rng(7);

  std::vector<FieldElement> zero(6, 0);
  CHECK(weight(F, zero, WeightSpec::hamming()) == 0);
  CHECK(weight(F, zero, WeightSpec::rank_metric()) == 0);
  CHECK(weight(F, zero, WeightSpec::sum_rank({3, 3})) == 0);

  std::vector<FieldElement> all1(5, 1);
  CHECK(weight(F, all1, WeightSpec::hamming()) == 5);
  CHECK(weight(F, all1, WeightSpec::rank_metric()) == 1);

  SUBCASE("sum-rank with unit blocks is the Hamming weight") {
    std::vector<std::size_t> units(6, 1);
    for (int it = 0; it < 100; ++it) {
      std::vector<FieldElement> v(6);
      for (auto& x : v) x = F.random(rng);
      CHECK(weight(F, v, WeightSpec::sum_rank(units)) == weight(F, v, WeightSpec::hamming()));
    }
  }

  SUBCASE("single-block sum-rank is the rank weight") {
    for (int it = 0; it < 100; ++it) {
      std::vector<FieldElement> v(4);
      for (auto& x : v) x = F.random(rng);
      CHECK(weight(F, v, WeightSpec::sum_rank({4})) == weight(F, v, WeightSpec::rank_metric()));
    }
  }

  SUBCASE("rank weight counts independent coordinates") {
    std::vector<FieldElement> v = {1, F.basis_element(1)};
    CHECK(weight(F, v, WeightSpec::rank_metric()) == 2);
  }

  SUBCASE("skew weight of a weight-one vector is one") {
    std::vector<FieldElement> alpha = {1, th.conjugate(1, F.basis_element(1))};
    REQUIRE(is_p_independent(th, alpha));
    auto spec = WeightSpec::skew(th, alpha);
    std::vector<FieldElement> v = {0, 3};
    CHECK(weight(F, v, spec) == 1);
    CHECK(weight(F, std::vector<FieldElement>{0, 0}, spec) == 0);
  }

  SUBCASE("partition mismatch is rejected") {
    std::vector<FieldElement> v(5, 1);
    CHECK_THROWS_AS(weight(F, v, WeightSpec::sum_rank({2, 2})), DomainError);
  }
}

TEST_CASE("brute force minimum distance") {
  ExtField F9(3, 1, 2);
  Automorphism id9(F9, 0);
  Rng rng(8);

  SUBCASE("full space has distance one") {
    auto g = Matrix::identity(F9, 3);
    CHECK(min_distance_bruteforce(g, WeightSpec::hamming()) == 1);
  }

  SUBCASE("tiny MDS evaluation code") {
    auto pts = distinct_nonzero(6);
    std::vector<FieldElement> lam(6);
    for (auto& v : lam) v = F9.random_nonzero(rng);
    Matrix g = vandermonde(id9, pts, lam, 2);
    CHECK(min_distance_bruteforce(g, WeightSpec::hamming()) == 5);
  }

  SUBCASE("budget refusal") {
    ExtField F(2, 4, 2);
    Matrix g = random_code(F, 8, 4, rng);
    CHECK_THROWS_AS(min_distance_bruteforce(g, WeightSpec::hamming(), 1 << 10), BudgetExceeded);
  }
}

TEST_CASE("random codes") {
  ExtField F16(2, 2, 2);
  Rng rng(9);
  Matrix g = random_code(F16, 5, 5, rng);
  CHECK(rank(g) == 5);
}

TEST_CASE("elimination self-consistency on random shapes") {
  for (auto [p, e, m] : {std::array<unsigned, 3>{3, 1, 2}, {2, 4, 2}}) {
    ExtField F(p, e, m);
    Rng rng(77);
    for (int it = 0; it < 200; ++it) {
      const std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(8);
      Matrix g(F, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          // bias towards zeros and duplicated rows to stress pivoting
          g.at(i, j) = rng.below(3) == 0 ? 0 : F.random(rng);
      if (rows >= 2 && rng.below(2) == 0)
        std::copy(g.row(0).begin(), g.row(0).end(), g.row(rows - 1).begin());

      RrefResult r = rref(g);
      CHECK(rank(g) == r.rank);
      CHECK(rref(r.reduced).reduced == r.reduced);
      CHECK(same_row_space(g, row_basis(g)));
      Matrix ker = kernel_basis(g);
      CHECK(ker.rows() == cols - r.rank);
      if (ker.rows() > 0) CHECK(is_zero_matrix(mul(g, transpose(ker))));
      CHECK(rank(ker) == ker.rows());
    }
  }
}

TEST_CASE("matrix text round trip") {
  ExtField F(2, 4, 2);
  Rng rng(10);
  Matrix g = random_code(F, 7, 3, rng);
  std::stringstream ss;
  write_matrix(ss, g, 1);
  ParsedMatrix p = read_matrix(ss);
  CHECK(ExtField::same(*p.field, F));
  CHECK(p.s == 1);
  CHECK(p.to_matrix() == Matrix::from_rows(F, p.rows));
  CHECK(Matrix::from_rows(*p.field, p.rows) == g);

  SUBCASE("corrupt payload is rejected") {
    std::stringstream bad;
    write_matrix(bad, g, 1);
    std::string s = bad.str();
    s.resize(s.size() / 2);
    std::stringstream in(s);
    CHECK_THROWS_AS(read_matrix(in), ParseError);
  }
}
