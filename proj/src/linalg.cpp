#include "skewlab/linalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

namespace skewlab {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!ExtField::same(a.field(), b.field())) throw DomainError("matrices over different fields");
}

std::vector<std::size_t> checked_positions(std::span<const std::size_t> positions,
                                           std::size_t n) {
  std::set<std::size_t> s(positions.begin(), positions.end());
  if (!s.empty() && *s.rbegin() >= n) throw DomainError("coordinate index out of range");
  return {s.begin(), s.end()};
}

}  // namespace

Matrix Matrix::identity(const ExtField& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const ExtField& field, std::vector<std::vector<FieldElement>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DomainError("ragged row lengths");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<FieldElement> Matrix::row_copy(std::size_t r) const {
  return {a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_};
}

bool Matrix::operator==(const Matrix& o) const {
  return ExtField::same(*F_, *o.F_) && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw DomainError("dimension mismatch in matrix product");
  const ExtField& F = a.field();
  Matrix out(F, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const FieldElement v = a.at(i, t);
      if (v == 0) continue;
      // out.row(i) += v * b.row(t)
      auto dst = out.row(i);
      auto src = b.row(t);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (src[j]) dst[j] = F.add(dst[j], F.mul(v, src[j]));
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  require_same_field(top, bottom);
  if (top.cols() != bottom.cols()) throw DomainError("column mismatch in vstack");
  Matrix out(top.field(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    std::copy(top.row(i).begin(), top.row(i).end(), out.row(i).begin());
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    std::copy(bottom.row(i).begin(), bottom.row(i).end(), out.row(top.rows() + i).begin());
  return out;
}

bool is_zero_matrix(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto v : a.row(i))
      if (v) return false;
  return true;
}

std::vector<FieldElement> star(const ExtField& field, std::span<const FieldElement> a,
                               std::span<const FieldElement> b) {
  if (a.size() != b.size()) throw DomainError("length mismatch in componentwise product");
  std::vector<FieldElement> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.mul(a[i], b[i]);
  return out;
}

bool EchelonBasis::add_row(std::vector<FieldElement> row) {
  if (row.size() != cols_) throw DomainError("row length mismatch");
  const ExtField& F = *F_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    const FieldElement c = row[p];
    // basis rows vanish left of their pivot
    if (c) F.row_submul(row.data() + p, rows_[i].data() + p, cols_ - p, c);
  }
  std::size_t p = 0;
  while (p < cols_ && row[p] == 0) ++p;
  if (p == cols_) return false;
  if (row[p] != 1) F.row_scale(row.data(), cols_, F.inv(row[p]));
  const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  const std::size_t idx = static_cast<std::size_t>(it - pivots_.begin());
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + idx, std::move(row));
  return true;
}

Matrix EchelonBasis::to_matrix() const {
  Matrix out(*F_, rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    std::copy(rows_[i].begin(), rows_[i].end(), out.row(i).begin());
  return out;
}

RrefResult rref(const Matrix& a) {
  const ExtField& F = a.field();
  Matrix m = a;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t sel = r;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    F.row_scale(m.row(r).data() + col, m.cols() - col, F.inv(m.at(r, col)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const FieldElement c = m.at(i, col);
      // the pivot row vanishes left of the pivot column
      if (c) F.row_submul(m.row(i).data() + col, m.row(r).data() + col, m.cols() - col, c);
    }
    pivots.push_back(col);
    ++r;
  }
  return RrefResult{std::move(m), pivots.size(), std::move(pivots)};
}

std::size_t rank(const Matrix& a) {
  EchelonBasis basis(a.field(), a.cols());
  const std::size_t cap = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    basis.add_row(a.row_copy(i));
    if (basis.rank() == cap) break;
  }
  return basis.rank();
}

Matrix row_basis(const Matrix& a) {
  RrefResult r = rref(a);
  Matrix out(a.field(), r.rank, a.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    std::copy(r.reduced.row(i).begin(), r.reduced.row(i).end(), out.row(i).begin());
  return out;
}

bool same_row_space(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return false;
  const std::size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(vstack(a, b)) == ra;
}

Matrix kernel_basis(const Matrix& a) {
  const ExtField& F = a.field();
  RrefResult r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  Matrix out(F, a.cols() - r.rank, a.cols());
  std::size_t row = 0;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    out.at(row, f) = 1;
    for (std::size_t i = 0; i < r.rank; ++i)
      if (r.pivots[i] < f) out.at(row, r.pivots[i]) = F.neg(r.reduced.at(i, f));
    ++row;
  }
  return out;
}

Matrix systematic_right(const Matrix& g) {
  const std::size_t k = g.rows(), n = g.cols();
  if (k > n) throw DomainError("generator has more rows than columns");
  const ExtField& F = g.field();
  // reduce (B | A) where B is the trailing k x k block and A the leading part
  Matrix aug(F, k, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug.at(i, j) = g.at(i, n - k + j);
    for (std::size_t j = 0; j + k < n; ++j) aug.at(i, k + j) = g.at(i, j);
  }
  RrefResult r = rref(aug);
  bool ok = r.rank == k;
  for (std::size_t i = 0; ok && i < k; ++i) ok = r.pivots[i] == i;
  if (!ok) throw SystematicFormUnavailable("trailing k x k block is singular");
  Matrix u(F, k, n - k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j + k < n; ++j) u.at(i, j) = r.reduced.at(i, k + j);
  return u;
}

Matrix dual_basis(const Matrix& g) {
  if (rank(g) != g.rows()) throw DomainError("generator must have full rank");
  return kernel_basis(g);
}

Matrix puncture(const Matrix& g, std::span<const std::size_t> positions) {
  const auto pos = checked_positions(positions, g.cols());
  if (pos.empty()) return row_basis(g);
  Matrix stripped(g.field(), g.rows(), g.cols() - pos.size());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    std::size_t out = 0, next = 0;
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (next < pos.size() && pos[next] == j) {
        ++next;
        continue;
      }
      stripped.at(i, out++) = g.at(i, j);
    }
  }
  return row_basis(stripped);
}

Matrix shorten(const Matrix& g, std::span<const std::size_t> positions) {
  const auto pos = checked_positions(positions, g.cols());
  if (pos.empty()) return row_basis(g);
  const ExtField& F = g.field();
  // message-space solutions of x * G_pos = 0
  Matrix gsub(F, g.rows(), pos.size());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) gsub.at(i, j) = g.at(i, pos[j]);
  Matrix left_kernel = kernel_basis(transpose(gsub));
  Matrix sub = mul(left_kernel, g);
  return puncture(sub, pos);
}

std::size_t square_dim(const Matrix& g) {
  const ExtField& F = g.field();
  const std::size_t k = g.rows(), n = g.cols();
  EchelonBasis basis(F, n);
  const std::size_t npairs = k * (k + 1) / 2;
  const std::size_t cap = std::min(npairs, n);
  for (std::size_t i = 0; i < k && basis.rank() < cap; ++i) {
    for (std::size_t j = i; j < k && basis.rank() < cap; ++j) {
      basis.add_row(star(F, g.row(i), g.row(j)));
    }
  }
  return basis.rank();
}

Matrix Monomial::to_matrix(const ExtField& field) const {
  Matrix m(field, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, perm[i]) = diag[i];
  return m;
}

Monomial random_monomial(const ExtField& field, std::size_t n, Rng& rng) {
  Monomial mono;
  mono.diag.resize(n);
  for (auto& d : mono.diag) d = field.random_nonzero(rng);
  mono.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) mono.perm[i] = i;
  rng.shuffle(mono.perm);
  return mono;
}

Matrix apply_monomial(const Matrix& g, const Monomial& mono) {
  if (mono.diag.size() != g.cols() || mono.perm.size() != g.cols())
    throw DomainError("monomial size mismatch");
  const ExtField& F = g.field();
  Matrix out(F, g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      out.at(i, mono.perm[j]) = F.mul(g.at(i, j), mono.diag[j]);
  return out;
}

Matrix random_code(const ExtField& field, std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw DomainError("dimension exceeds length");
  for (;;) {
    Matrix g(field, k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) g.at(i, j) = field.random(rng);
    if (rank(g) == k) return g;
  }
}

WeightSpec WeightSpec::hamming() { return WeightSpec{}; }

WeightSpec WeightSpec::rank_metric() {
  WeightSpec s;
  s.kind = Kind::Rank;
  return s;
}

WeightSpec WeightSpec::sum_rank(std::vector<std::size_t> partition) {
  WeightSpec s;
  s.kind = Kind::SumRank;
  s.partition = std::move(partition);
  return s;
}

WeightSpec WeightSpec::skew(const Automorphism& aut, std::vector<FieldElement> alpha) {
  if (!is_p_independent(aut, alpha))
    throw DomainError("skew-weight points must be P-independent");
  WeightSpec s;
  s.kind = Kind::Skew;
  s.aut = aut;
  s.alpha = std::move(alpha);
  return s;
}

namespace {

std::size_t rank_weight_block(const ExtField& F, std::span<const FieldElement> v) {
  std::vector<std::vector<std::uint64_t>> rows(F.m(), std::vector<std::uint64_t>(v.size(), 0));
  for (std::size_t j = 0; j < v.size(); ++j)
    for (unsigned r = 0; r < F.m(); ++r) rows[r][j] = F.coeff(v[j], r);
  return fq_rank(F, std::move(rows));
}

}  // namespace

std::size_t sum_rank_weight(const ExtField& field, std::span<const FieldElement> v,
                            std::span<const std::size_t> partition) {
  std::size_t total = 0;
  for (auto len : partition) total += len;
  if (total != v.size()) throw DomainError("partition does not sum to the vector length");
  std::size_t w = 0, off = 0;
  for (auto len : partition) {
    w += rank_weight_block(field, v.subspan(off, len));
    off += len;
  }
  return w;
}

std::size_t weight(const ExtField& field, std::span<const FieldElement> v,
                   const WeightSpec& spec) {
  switch (spec.kind) {
    case WeightSpec::Kind::Hamming: {
      std::size_t w = 0;
      for (auto x : v) w += (x != 0);
      return w;
    }
    case WeightSpec::Kind::Rank:
      return rank_weight_block(field, v);
    case WeightSpec::Kind::SumRank:
      return sum_rank_weight(field, v, spec.partition);
    case WeightSpec::Kind::Skew: {
      if (spec.alpha.size() != v.size())
        throw DomainError("skew-weight point vector length mismatch");
      std::vector<FieldElement> pts;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) pts.push_back(spec.aut->conjugate(spec.alpha[i], v[i]));
      return static_cast<std::size_t>(minimal_vanishing(*spec.aut, pts).degree());
    }
  }
  throw DomainError("unknown weight kind");
}

std::size_t min_distance_bruteforce(const Matrix& g, const WeightSpec& spec,
                                    std::uint64_t budget) {
  const ExtField& F = g.field();
  const std::size_t k = g.rows(), n = g.cols();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (count > budget / F.order()) throw BudgetExceeded("codeword enumeration too large");
    count *= F.order();
  }
  std::size_t best = n + 1;
  std::vector<FieldElement> cw(n);
  for (std::uint64_t msg = 1; msg < count; ++msg) {
    std::fill(cw.begin(), cw.end(), 0);
    std::uint64_t t = msg;
    for (std::size_t r = 0; r < k; ++r) {
      const FieldElement x = t % F.order();
      t /= F.order();
      if (x == 0) continue;
      auto src = g.row(r);
      for (std::size_t j = 0; j < n; ++j)
        if (src[j]) cw[j] = F.add(cw[j], F.mul(x, src[j]));
    }
    best = std::min(best, weight(F, cw, spec));
  }
  return best;
}

void write_matrix(std::ostream& os, const Matrix& g, unsigned s) {
  write_field_header(os, g.field(), s);
  os << g.field().order() << ' ' << g.cols() << ' ' << g.rows() << '\n';
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) os << (j ? " " : "") << g.at(i, j);
    os << '\n';
  }
}

Matrix ParsedMatrix::to_matrix() const { return Matrix::from_rows(*field, rows); }

ParsedMatrix read_matrix(std::istream& is) {
  ParsedFieldHeader h = read_field_header(is);
  std::uint64_t order = 0, n = 0, k = 0;
  if (!(is >> order >> n >> k)) throw ParseError("malformed matrix size line");
  if (order != h.field->order()) throw ParseError("order marker does not match the field header");
  if (n == 0 || k == 0 || k > n) throw ParseError("bad matrix dimensions");
  ParsedMatrix out;
  out.field = h.field;
  out.s = h.s;
  out.rows.assign(k, std::vector<FieldElement>(n, 0));
  for (auto& row : out.rows)
    for (auto& v : row) {
      if (!(is >> v)) throw ParseError("truncated matrix payload");
      if (v >= order) throw ParseError("matrix entry exceeds the field order");
    }
  return out;
}

}  // namespace skewlab
