#include "nilfill/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nilfill {

MultiPoly MultiPoly::constant(int nvars, const Rational& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_[ExpVec(nvars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  MultiPoly p(nvars);
  ExpVec e(nvars, 0);
  e[index] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, ExpVec e, const Rational& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_[std::move(e)] = c;
  return p;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  // Terms are graded-lex ordered, so the last one carries the max degree.
  const ExpVec& e = terms_.rbegin()->first;
  int d = 0;
  for (unsigned x : e) d += static_cast<int>(x);
  return d;
}

void MultiPoly::add_term(const ExpVec& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, coeff] : terms_) r.terms_[e] = c * coeff;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable counts differ");
  MultiPoly r(nvars_);
  ExpVec e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Rational MultiPoly::eval(const RatVec& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw DimensionMismatch("eval point has wrong length");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int v = 0; v < nvars_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) m *= x[v];
    acc += m;
  }
  return acc;
}

double MultiPoly::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw DimensionMismatch("eval point has wrong length");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double m = to_double(c);
    for (int v = 0; v < nvars_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) m *= x[v];
    acc += m;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw DimensionMismatch("derivative variable out of range");
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec f = e;
    --f[var];
    r.add_term(f, c * Rational(e[var]));
  }
  return r;
}

MultiPoly MultiPoly::substitute(int var, const Rational& value) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    for (unsigned k = 0; k < e[var]; ++k) coeff *= value;
    ExpVec f = e;
    f[var] = 0;
    r.add_term(f, coeff);
  }
  return r;
}

MultiPoly MultiPoly::restrict_vars(int new_nvars) const {
  MultiPoly r(new_nvars);
  for (const auto& [e, c] : terms_) {
    for (int v = new_nvars; v < nvars_; ++v)
      if (e[v] != 0) throw Error("restrict_vars: variable x" + std::to_string(v + 1) + " occurs");
    r.terms_[ExpVec(e.begin(), e.begin() + new_nvars)] = c;
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending graded-lex.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool has_vars = false;
    for (unsigned k : e)
      if (k) has_vars = true;
    if (!has_vars) {
      os << rat_to_string(a);
      continue;
    }
    bool printed = false;
    if (a != 1) {
      os << rat_to_string(a);
      printed = true;
    }
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (printed) os << "*";
      os << "x" << (v + 1);
      if (e[v] > 1) os << "^" << e[v];
      printed = true;
    }
  }
  return os.str();
}

UniMajorant::UniMajorant(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c < 0) throw Error("UniMajorant coefficients must be nonnegative");
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

int UniMajorant::degree() const { return static_cast<int>(coeffs_.size()) - 1; }

Rational UniMajorant::eval(const Rational& r) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + *it;
  return acc;
}

double UniMajorant::eval(double r) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + to_double(*it);
  return acc;
}

UniMajorant UniMajorant::scaled(const Rational& c) const {
  std::vector<Rational> out = coeffs_;
  for (auto& x : out) x *= c;
  return UniMajorant(std::move(out));
}

UniMajorant UniMajorant::plus_const(const Rational& c) const {
  std::vector<Rational> out = coeffs_;
  if (out.empty()) out.push_back(0);
  out[0] += c;
  return UniMajorant(std::move(out));
}

UniMajorant UniMajorant::coeff_max(const UniMajorant& a, const UniMajorant& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < out.size(); ++k) {
    Rational ca = k < a.coeffs_.size() ? a.coeffs_[k] : Rational(0);
    Rational cb = k < b.coeffs_.size() ? b.coeffs_[k] : Rational(0);
    out[k] = std::max(ca, cb);
  }
  return UniMajorant(std::move(out));
}

std::string UniMajorant::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || coeffs_[k] != 1) os << rat_to_string(coeffs_[k]);
    if (k > 0) {
      if (coeffs_[k] != 1) os << "*";
      os << "r";
      if (k > 1) os << "^" << k;
    }
  }
  return first ? "0" : os.str();
}

UniMajorant majorize(const MultiPoly& p) {
  std::vector<Rational> buckets;
  for (const auto& [e, c] : p.terms()) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    if (buckets.size() <= d) buckets.resize(d + 1, Rational(0));
    buckets[d] += rat_abs(c);
  }
  return UniMajorant(std::move(buckets));
}

bool majorant_dominates_at_norm(const UniMajorant& M, const Rational& value,
                                const Rational& r2) {
  if (r2 < 0) throw Error("negative squared norm");
  Rational v = rat_abs(value);
  // A(r2) = sum of even-degree terms, B(r2) = sum of odd-degree terms / r.
  Rational A = 0, B = 0, pow = 1;
  const auto& a = M.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k >= 2 && k % 2 == 0) pow *= r2;
    if (k % 2 == 0)
      A += a[k] * pow;
    else
      B += a[k] * pow;
  }
  if (v <= A) return true;
  // v <= A + r B  <=>  (v - A)^2 <= r2 B^2 (both sides nonnegative here).
  Rational lhs = (v - A) * (v - A);
  return lhs <= r2 * B * B;
}

}  // namespace nilfill
