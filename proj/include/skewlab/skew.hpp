#pragma once

#include <span>
#include <vector>

#include "skewlab/field.hpp"

namespace skewlab {

enum class DivisionSide { Left, Right };

/// Element of the skew polynomial ring F_{q^m}[x; theta], where multiplication
/// twists by x a = theta(a) x. Coefficients are stored low degree first and
/// kept normalized (no trailing zeros).
class SkewPolynomial {
 public:
  SkewPolynomial(const Automorphism& aut, std::vector<FieldElement> coeffs = {});

  static SkewPolynomial zero(const Automorphism& aut) { return SkewPolynomial(aut); }
  static SkewPolynomial one(const Automorphism& aut) { return SkewPolynomial(aut, {1}); }
  /// x - a
  static SkewPolynomial x_minus(const Automorphism& aut, FieldElement a);
  static SkewPolynomial monomial(const Automorphism& aut, FieldElement c, std::size_t deg);

  const Automorphism& automorphism() const { return aut_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  /// Degree of the polynomial; -1 stands in for the -infinity of the zero
  /// polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  FieldElement lead() const;

  SkewPolynomial operator+(const SkewPolynomial& o) const;
  SkewPolynomial operator-(const SkewPolynomial& o) const;
  SkewPolynomial operator-() const;
  SkewPolynomial operator*(const SkewPolynomial& o) const;
  bool operator==(const SkewPolynomial& o) const;

  /// c * f (left scalar multiple; scales every coefficient by c).
  SkewPolynomial scaled(FieldElement c) const;
  /// lead^{-1} * f.
  SkewPolynomial monic() const;

 private:
  void trim();

  Automorphism aut_;
  std::vector<FieldElement> c_;
};

struct SkewDivision {
  SkewPolynomial quotient;
  SkewPolynomial remainder;
};

/// Right: f = quotient * g + remainder. Left: f = g * quotient + remainder.
/// In both cases deg remainder < deg g. Throws DomainError for g = 0.
SkewDivision divide(const SkewPolynomial& f, const SkewPolynomial& g, DivisionSide side);

/// Greatest common right divisor, monic. Not both arguments may be zero.
SkewPolynomial gcrd(const SkewPolynomial& f, const SkewPolynomial& g);
/// Least common left multiple, monic; zero when one argument is zero.
SkewPolynomial lclm(const SkewPolynomial& f, const SkewPolynomial& g);

/// Remainder evaluation: the remainder of the right division of f by (x - a),
/// computed through the closed form sum_i f_i a^{[[i]]}.
FieldElement rem_eval(const SkewPolynomial& f, FieldElement a);
std::vector<FieldElement> rem_eval(const SkewPolynomial& f, std::span<const FieldElement> pts);

/// Generalized operator evaluation sum_i f_i theta^i(b) a^{[[i]]} of f at
/// locator b with evaluation parameter a.
FieldElement op_eval(const SkewPolynomial& f, FieldElement b, FieldElement a);
std::vector<FieldElement> op_eval(const SkewPolynomial& f, std::span<const FieldElement> b,
                                  std::span<const FieldElement> a);

/// Monic lclm of (x - alpha_i) over all points (folded left to right); its
/// remainder evaluation vanishes on every point and its degree is at most n.
SkewPolynomial minimal_vanishing(const Automorphism& aut, std::span<const FieldElement> points);

/// True iff the points contain no zero and the minimal vanishing polynomial
/// has degree exactly n.
bool is_p_independent(const Automorphism& aut, std::span<const FieldElement> points);

/// Text form: the field header, then the coefficient encodings low degree
/// first on one line (empty line for the zero polynomial).
void write_skew_polynomial(std::ostream& os, const SkewPolynomial& f);
struct ParsedSkewPolynomial {
  std::shared_ptr<const ExtField> field;
  std::optional<SkewPolynomial> poly;
};
ParsedSkewPolynomial read_skew_polynomial(std::istream& is);

}  // namespace skewlab
