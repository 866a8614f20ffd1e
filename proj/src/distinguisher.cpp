#include "skewlab/distinguisher.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace skewlab {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::StructuredGsrsLike:
      return "StructuredGsrsLike";
    case Decision::RandomLike:
      return "RandomLike";
    case Decision::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::pair<std::uint64_t, std::uint64_t> expected_square_dims(std::uint64_t n, std::uint64_t k,
                                                             std::uint64_t m) {
  if (k == 0 || n == 0 || m == 0 || k > n) throw DomainError("bad square-dimension parameters");
  const std::uint64_t random = std::min(k * (k + 1) / 2, n);
  std::uint64_t structured;
  if (k <= m) {
    structured = random;
  } else {
    structured = std::min(k * (m + 1) - m * (m + 1) / 2, n);
  }
  return {structured, random};
}

namespace {

Verdict judge(std::uint64_t observed, std::uint64_t n, std::uint64_t k, unsigned m,
              std::size_t s_used) {
  auto [es, er] = expected_square_dims(n, k, m);
  Verdict v;
  v.observed_dim = observed;
  v.expected_structured = es;
  v.expected_random = er;
  v.shortening_used = s_used;
  if (es == er) {
    v.decision = Decision::Inconclusive;
    v.note = "expectations coincide at these parameters";
  } else if (observed == es) {
    v.decision = Decision::StructuredGsrsLike;
  } else if (observed == er) {
    v.decision = Decision::RandomLike;
  } else {
    v.decision = Decision::Inconclusive;
    v.note = "observed dimension matches neither expectation";
  }
  return v;
}

}  // namespace

Verdict naive_distinguish(const Matrix& g, unsigned m) {
  if (m == 0) throw DomainError("extension degree must be positive");
  return judge(square_dim(g), g.cols(), g.rows(), m, 0);
}

Verdict shortened_distinguish(const Matrix& g, unsigned m, std::optional<std::size_t> s_opt) {
  if (m == 0) throw DomainError("extension degree must be positive");
  const std::size_t n = g.cols(), k = g.rows();
  std::size_t s;
  if (s_opt) {
    s = *s_opt;
    if (s >= k) throw DomainError("cannot shorten away the whole dimension");
  } else {
    // default from the viability analysis; requires m+1 < k < n - (m^2+3m)/2
    if (k <= m + 2) return judge(square_dim(g), n, k, m, 0);
    if (2 * k + std::size_t(m) * m + 3 * m >= 2 * n) {
      Verdict v;
      auto [es, er] = expected_square_dims(n, k, m);
      v.observed_dim = square_dim(g);
      v.expected_structured = es;
      v.expected_random = er;
      v.decision = Decision::Inconclusive;
      v.note = "k is at or beyond the boundary n - (m^2+3m)/2; no viable shortening";
      return v;
    }
    s = k - m - 2;
  }
  if (s == 0) return naive_distinguish(g, m);

  // deterministic shortening set: the first s coordinates after sorting the
  // columns lexicographically by their entry encodings
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < k; ++r) {
      if (g.at(r, a) != g.at(r, b)) return g.at(r, a) < g.at(r, b);
    }
    return a < b;
  });
  order.resize(s);
  Matrix sh = shorten(g, order);
  Verdict v = judge(square_dim(sh), sh.cols(), sh.rows(), m, s);
  return v;
}

std::pair<Matrix, std::size_t> overbeck_stack(const Matrix& g, const Automorphism& aut,
                                              std::span<const FieldElement> a, unsigned j) {
  if (a.size() != g.cols())
    throw DomainError("evaluation parameter vector does not match the column partition");
  const ExtField& F = g.field();
  Matrix stacked(F, g.rows() * (std::size_t(j) + 1), g.cols());
  Matrix cur = g;
  for (unsigned level = 0; level <= j; ++level) {
    for (std::size_t r = 0; r < g.rows(); ++r)
      std::copy(cur.row(r).begin(), cur.row(r).end(),
                stacked.row(std::size_t(level) * g.rows() + r).begin());
    if (level < j) {
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
          cur.at(r, c) = F.mul(aut.apply(cur.at(r, c)), a[c]);
    }
  }
  const std::size_t rk = rank(stacked);
  return {std::move(stacked), rk};
}

std::size_t frobenius_sum_dim(const Matrix& g) {
  const ExtField& F = g.field();
  Matrix fr(F, g.rows(), g.cols());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) fr.at(r, c) = F.frobenius_pow(g.at(r, c), 1);
  return rank(vstack(g, fr));
}

std::pair<unsigned, unsigned> split_prime_power(std::uint64_t q) {
  if (q < 2) throw DomainError("not a prime power");
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned e = 0;
  std::uint64_t v = q;
  while (v > 1) {
    if (v % p != 0) throw DomainError(std::to_string(q) + " is not a prime power");
    v /= p;
    ++e;
  }
  return {static_cast<unsigned>(p), e};
}

ExperimentRow experiment_row(std::uint64_t q, unsigned m, std::size_t n, std::size_t k,
                             std::size_t trials, std::uint64_t seed, unsigned threads) {
  auto [p, e] = split_prime_power(q);
  const ExtField F(p, e, m);
  if (n > std::uint64_t(m) * (q - 1))
    throw DomainError("length exceeds the maximum for P-independent locators");
  if (k == 0 || k > n) throw DomainError("bad dimension");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> results(trials);
  auto run_trial = [&](std::size_t t) {
    Rng rng(Rng::child_seed(seed, t));
    const Automorphism th = sample_automorphism(F, rng);
    auto spec = sample_gsrs(th, n, k, rng);
    Matrix g = gsrs_generator(spec);
    Matrix disguised = apply_monomial(g, random_monomial(F, n, rng));
    const std::uint64_t d_gsrs = square_dim(disguised);
    const std::uint64_t d_rand = square_dim(random_code(F, n, k, rng));
    results[t] = {d_gsrs, d_rand};
  };

  if (threads <= 1 || trials <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          run_trial(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned nthreads = std::min<unsigned>(threads, trials);
    pool.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ExperimentRow row;
  for (auto [dg, dr] : results) {
    ++row.gsrs_dims[dg];
    ++row.random_dims[dr];
  }
  return row;
}

}  // namespace skewlab
