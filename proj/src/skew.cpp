#include "skewlab/skew.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace skewlab {

namespace {

void require_same(const Automorphism& a, const Automorphism& b) {
  if (!a.same(b)) throw DomainError("automorphism mismatch between skew polynomials");
}

}  // namespace

SkewPolynomial::SkewPolynomial(const Automorphism& aut, std::vector<FieldElement> coeffs)
    : aut_(aut), c_(std::move(coeffs)) {
  trim();
}

void SkewPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

SkewPolynomial SkewPolynomial::x_minus(const Automorphism& aut, FieldElement a) {
  return SkewPolynomial(aut, {aut.field().neg(a), 1});
}

SkewPolynomial SkewPolynomial::monomial(const Automorphism& aut, FieldElement c,
                                        std::size_t deg) {
  std::vector<FieldElement> v(deg + 1, 0);
  v[deg] = c;
  return SkewPolynomial(aut, std::move(v));
}

FieldElement SkewPolynomial::lead() const {
  if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return c_.back();
}

SkewPolynomial SkewPolynomial::operator+(const SkewPolynomial& o) const {
  require_same(aut_, o.aut_);
  const ExtField& F = aut_.field();
  std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(i), o.coeff(i));
  return SkewPolynomial(aut_, std::move(r));
}

SkewPolynomial SkewPolynomial::operator-(const SkewPolynomial& o) const {
  require_same(aut_, o.aut_);
  const ExtField& F = aut_.field();
  std::vector<FieldElement> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(i), o.coeff(i));
  return SkewPolynomial(aut_, std::move(r));
}

SkewPolynomial SkewPolynomial::operator-() const {
  const ExtField& F = aut_.field();
  std::vector<FieldElement> r(c_);
  for (auto& v : r) v = F.neg(v);
  return SkewPolynomial(aut_, std::move(r));
}

SkewPolynomial SkewPolynomial::operator*(const SkewPolynomial& o) const {
  require_same(aut_, o.aut_);
  if (is_zero() || o.is_zero()) return zero(aut_);
  const ExtField& F = aut_.field();
  std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, 0);
  // coefficient of x^{i+j} picks up f_i theta^i(g_j); keep a running
  // theta^i image of g
  std::vector<FieldElement> g_shift(o.c_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) {
      for (std::size_t j = 0; j < g_shift.size(); ++j)
        if (g_shift[j]) r[i + j] = F.add(r[i + j], F.mul(c_[i], g_shift[j]));
    }
    if (i + 1 < c_.size())
      for (auto& v : g_shift) v = aut_.apply(v);
  }
  return SkewPolynomial(aut_, std::move(r));
}

bool SkewPolynomial::operator==(const SkewPolynomial& o) const {
  return aut_.same(o.aut_) && c_ == o.c_;
}

SkewPolynomial SkewPolynomial::scaled(FieldElement c) const {
  const ExtField& F = aut_.field();
  std::vector<FieldElement> r(c_);
  for (auto& v : r) v = F.mul(c, v);
  return SkewPolynomial(aut_, std::move(r));
}

SkewPolynomial SkewPolynomial::monic() const {
  if (is_zero()) throw DomainError("cannot normalize the zero polynomial");
  return scaled(aut_.field().inv(lead()));
}

SkewDivision divide(const SkewPolynomial& f, const SkewPolynomial& g, DivisionSide side) {
  require_same(f.automorphism(), g.automorphism());
  if (g.is_zero()) throw DomainError("skew division by zero");
  const Automorphism& th = f.automorphism();
  const ExtField& F = th.field();
  const int dg = g.degree();

  std::vector<FieldElement> rem(f.coeffs());
  std::vector<FieldElement> quo(
      f.degree() >= dg ? static_cast<std::size_t>(f.degree() - dg + 1) : 0, 0);

  auto deg_of = [](const std::vector<FieldElement>& v) {
    int d = static_cast<int>(v.size()) - 1;
    while (d >= 0 && v[d] == 0) --d;
    return d;
  };

  int dr = deg_of(rem);
  const FieldElement glead_inv = F.inv(g.coeff(dg));
  while (dr >= dg) {
    const int d = dr - dg;
    FieldElement c;
    if (side == DivisionSide::Right) {
      // subtract (c x^d) * g; its x^{d+j} coefficient is c theta^d(g_j)
      c = F.mul(rem[dr], F.inv(th.apply_pow(g.coeff(dg), d)));
      for (int j = 0; j <= dg; ++j) {
        const FieldElement t = F.mul(c, th.apply_pow(g.coeff(j), d));
        rem[d + j] = F.sub(rem[d + j], t);
      }
    } else {
      // subtract g * (c x^d); its x^{j+d} coefficient is g_j theta^j(c)
      c = th.apply_pow(F.mul(glead_inv, rem[dr]), -dg);
      for (int j = 0; j <= dg; ++j) {
        const FieldElement t = F.mul(g.coeff(j), th.apply_pow(c, j));
        rem[d + j] = F.sub(rem[d + j], t);
      }
    }
    quo[d] = F.add(quo[d], c);
    dr = deg_of(rem);
  }
  return SkewDivision{SkewPolynomial(th, std::move(quo)), SkewPolynomial(th, std::move(rem))};
}

SkewPolynomial gcrd(const SkewPolynomial& f, const SkewPolynomial& g) {
  require_same(f.automorphism(), g.automorphism());
  if (f.is_zero() && g.is_zero()) throw DomainError("gcrd of two zero polynomials");
  SkewPolynomial a = f, b = g;
  while (!b.is_zero()) {
    SkewPolynomial r = divide(a, b, DivisionSide::Right).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

SkewPolynomial lclm(const SkewPolynomial& f, const SkewPolynomial& g) {
  require_same(f.automorphism(), g.automorphism());
  if (f.is_zero() && g.is_zero()) throw DomainError("lclm of two zero polynomials");
  const Automorphism& th = f.automorphism();
  if (f.is_zero() || g.is_zero()) return SkewPolynomial::zero(th);
  // extended right Euclid: maintain u with r_i = u_i f + v_i g; when the
  // remainder reaches zero, u f is a minimal common left multiple
  SkewPolynomial r0 = f, r1 = g;
  SkewPolynomial u0 = SkewPolynomial::one(th), u1 = SkewPolynomial::zero(th);
  while (!r1.is_zero()) {
    SkewDivision d = divide(r0, r1, DivisionSide::Right);
    SkewPolynomial u2 = u0 - d.quotient * u1;
    r0 = std::move(r1);
    r1 = std::move(d.remainder);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  return (u1 * f).monic();
}

FieldElement rem_eval(const SkewPolynomial& f, FieldElement a) {
  const Automorphism& th = f.automorphism();
  const ExtField& F = th.field();
  FieldElement acc = 0, pw = 1;  // pw = a^{[[i]]}
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i]) acc = F.add(acc, F.mul(f.coeffs()[i], pw));
    pw = F.mul(th.apply(pw), a);
  }
  return acc;
}

std::vector<FieldElement> rem_eval(const SkewPolynomial& f, std::span<const FieldElement> pts) {
  std::vector<FieldElement> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = rem_eval(f, pts[i]);
  return out;
}

FieldElement op_eval(const SkewPolynomial& f, FieldElement b, FieldElement a) {
  const Automorphism& th = f.automorphism();
  const ExtField& F = th.field();
  FieldElement acc = 0, pw = 1, tb = b;  // pw = a^{[[i]]}, tb = theta^i(b)
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i]) acc = F.add(acc, F.mul(f.coeffs()[i], F.mul(tb, pw)));
    pw = F.mul(th.apply(pw), a);
    tb = th.apply(tb);
  }
  return acc;
}

std::vector<FieldElement> op_eval(const SkewPolynomial& f, std::span<const FieldElement> b,
                                  std::span<const FieldElement> a) {
  if (b.size() != a.size()) throw DomainError("locator and parameter vectors differ in length");
  std::vector<FieldElement> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = op_eval(f, b[i], a[i]);
  return out;
}

SkewPolynomial minimal_vanishing(const Automorphism& aut, std::span<const FieldElement> points) {
  SkewPolynomial acc = SkewPolynomial::one(aut);
  for (FieldElement a : points) acc = lclm(acc, SkewPolynomial::x_minus(aut, a));
  return acc;
}

bool is_p_independent(const Automorphism& aut, std::span<const FieldElement> points) {
  for (FieldElement a : points)
    if (a == 0) return false;
  return minimal_vanishing(aut, points).degree() == static_cast<int>(points.size());
}

void write_skew_polynomial(std::ostream& os, const SkewPolynomial& f) {
  write_field_header(os, f.automorphism().field(), f.automorphism().s());
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) os << (i ? " " : "") << f.coeffs()[i];
  os << '\n';
}

ParsedSkewPolynomial read_skew_polynomial(std::istream& is) {
  ParsedFieldHeader h = read_field_header(is);
  ParsedSkewPolynomial out;
  out.field = h.field;
  std::string line;
  // the coefficient line follows the header; skip the pending newline
  std::getline(is, line);
  if (!std::getline(is, line)) throw ParseError("missing coefficient line");
  std::istringstream ls(line);
  std::vector<FieldElement> coeffs;
  FieldElement v;
  while (ls >> v) {
    if (v >= h.field->order()) throw ParseError("coefficient exceeds the field order");
    coeffs.push_back(v);
  }
  out.poly.emplace(Automorphism(*h.field, h.s), std::move(coeffs));
  return out;
}

}  // namespace skewlab
