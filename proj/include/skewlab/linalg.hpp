#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "skewlab/skew.hpp"

namespace skewlab {

/// Dense row-major matrix over F_{q^m} with row-space semantics. The field
/// handle must outlive the matrix.
class Matrix {
 public:
  Matrix(const ExtField& field, std::size_t rows, std::size_t cols)
      : F_(&field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const ExtField& field, std::size_t n);
  static Matrix from_rows(const ExtField& field, std::vector<std::vector<FieldElement>> rows);

  const ExtField& field() const { return *F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  std::span<FieldElement> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
  std::vector<FieldElement> row_copy(std::size_t r) const;

  bool operator==(const Matrix& o) const;

 private:
  const ExtField* F_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> a_;
};

Matrix mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix vstack(const Matrix& top, const Matrix& bottom);
bool is_zero_matrix(const Matrix& a);
/// out[j] = a[j] * b[j]
std::vector<FieldElement> star(const ExtField& field, std::span<const FieldElement> a,
                               std::span<const FieldElement> b);

/// Incremental row-space basis in echelon form (pivot columns strictly
/// increasing, pivots normalized to one). Used for rank-style workloads where
/// rows arrive one at a time.
class EchelonBasis {
 public:
  EchelonBasis(const ExtField& field, std::size_t cols) : F_(&field), cols_(cols) {}
  /// Reduces the row against the basis; inserts it when independent.
  /// Returns true when the rank grew.
  bool add_row(std::vector<FieldElement> row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// The basis as a matrix (echelon rows).
  Matrix to_matrix() const;

 private:
  const ExtField* F_;
  std::size_t cols_;
  std::vector<std::vector<FieldElement>> rows_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};
/// Reduced row echelon form; deterministic (leftmost pivot, first nonzero
/// row).
RrefResult rref(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Nonzero rows of the RREF: a canonical basis of the row space.
Matrix row_basis(const Matrix& a);
/// True when the row spaces coincide.
bool same_row_space(const Matrix& a, const Matrix& b);

/// Basis of the right kernel {x : a x^T = 0}, one row per basis vector,
/// ordered by free column. (n - rank) x n.
Matrix kernel_basis(const Matrix& a);

/// U such that (U | I_k) spans the same row space as the full-rank input G.
/// Throws SystematicFormUnavailable when the last k columns are singular.
Matrix systematic_right(const Matrix& g);

/// Full-rank parity check matrix H with G H^T = 0; (n-k) x n.
Matrix dual_basis(const Matrix& g);

/// Deletes the indexed columns and re-reduces.
Matrix puncture(const Matrix& g, std::span<const std::size_t> positions);
/// Restricts to the codewords vanishing on the indexed columns, then deletes
/// them and re-reduces.
Matrix shorten(const Matrix& g, std::span<const std::size_t> positions);

/// Dimension of the componentwise-product square of the row space of g,
/// spanned by the k(k+1)/2 products of basis-row pairs.
std::size_t square_dim(const Matrix& g);

/// Hamming-metric isometry: diag(d) * P with nonzero d and a permutation P
/// mapping column i to column perm[i].
struct Monomial {
  std::vector<FieldElement> diag;
  std::vector<std::size_t> perm;
  Matrix to_matrix(const ExtField& field) const;
};
Monomial random_monomial(const ExtField& field, std::size_t n, Rng& rng);
Matrix apply_monomial(const Matrix& g, const Monomial& mono);

/// Uniform full-rank k x n matrix (resampled until full rank).
Matrix random_code(const ExtField& field, std::size_t n, std::size_t k, Rng& rng);

/// Decoding-metric selector for weight computations.
struct WeightSpec {
  enum class Kind { Hamming, Rank, SumRank, Skew };
  Kind kind = Kind::Hamming;
  std::vector<std::size_t> partition;       // SumRank
  std::optional<Automorphism> aut;          // Skew
  std::vector<FieldElement> alpha;          // Skew

  static WeightSpec hamming();
  static WeightSpec rank_metric();
  static WeightSpec sum_rank(std::vector<std::size_t> partition);
  /// alpha must be P-independent for the given automorphism.
  static WeightSpec skew(const Automorphism& aut, std::vector<FieldElement> alpha);
};

std::size_t weight(const ExtField& field, std::span<const FieldElement> v, const WeightSpec& spec);
/// Sum-rank weight with an explicit partition (no spec object).
std::size_t sum_rank_weight(const ExtField& field, std::span<const FieldElement> v,
                            std::span<const std::size_t> partition);

/// Exact minimum weight of a nonzero codeword by full enumeration. Refuses
/// with BudgetExceeded when order^k exceeds the budget.
std::size_t min_distance_bruteforce(const Matrix& g, const WeightSpec& spec,
                                    std::uint64_t budget = 1ull << 20);

/// Text format: field header block, then `order n k`, then k rows of n
/// decimal element encodings.
void write_matrix(std::ostream& os, const Matrix& g, unsigned s);
struct ParsedMatrix {
  std::shared_ptr<const ExtField> field;
  unsigned s = 0;
  std::vector<std::vector<FieldElement>> rows;
  Matrix to_matrix() const;
};
ParsedMatrix read_matrix(std::istream& is);

}  // namespace skewlab
