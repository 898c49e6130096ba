#include "helmrays/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace helmrays::model {

namespace {
constexpr double kDropTol = 0.0;  // exact algebra: drop only true zeros
}

Poly Poly::constant(Complex c) {
  Poly p;
  if (c != 0.0) p.terms_.push_back({{0, 0, 0}, c});
  return p;
}

Poly Poly::variable(int axis, int dim) {
  if (axis < 0 || axis >= dim) throw std::invalid_argument("Poly::variable: bad axis");
  Poly p;
  Exps e{0, 0, 0};
  e[axis] = 1;
  p.terms_.push_back({e, Complex(1.0)});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exps{0, 0, 0});
}

Complex Poly::constant_value() const {
  if (terms_.empty()) return 0.0;
  return terms_[0].second;
}

int Poly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Exps, Complex>> out;
  for (const auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const auto& t) { return std::abs(t.second) <= kDropTol; });
  terms_ = std::move(out);
}

void Poly::add_term(const Exps& e, Complex c) {
  terms_.push_back({e, c});
  normalize();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Complex(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_)
      r.terms_.push_back({{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb});
  r.normalize();
  return r;
}

Poly Poly::operator*(Complex c) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second *= c;
  r.normalize();
  return r;
}

Poly Poly::derivative(int axis) const {
  Poly r;
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exps d = e;
    d[axis] -= 1;
    r.terms_.push_back({d, c * double(e[axis])});
  }
  r.normalize();
  return r;
}

Poly Poly::conjugated() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = std::conj(t.second);
  return r;
}

Poly Poly::reflected() const {
  Poly r = *this;
  for (auto& t : r.terms_) {
    int deg = t.first[0] + t.first[1] + t.first[2];
    if (deg % 2 == 1) t.second = -t.second;
  }
  r.normalize();
  return r;
}

Poly Poly::affine_substitute(const std::array<CVec3, 3>& A, const CVec3& b) const {
  // Build each substituted variable as a degree-1 polynomial, then expand
  // monomials by repeated multiplication. Degrees stay small here.
  std::array<Poly, 3> lin;
  for (int j = 0; j < 3; ++j) {
    Poly p = Poly::constant(b[j]);
    for (int k = 0; k < 3; ++k) {
      if (A[j][k] != 0.0) {
        Exps e{0, 0, 0};
        e[k] = 1;
        Poly v;
        v.terms_.push_back({e, A[j][k]});
        p = p + v;
      }
    }
    lin[j] = p;
  }
  Poly r;
  for (const auto& [e, c] : terms_) {
    Poly m = Poly::constant(c);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < e[j]; ++k) m = m * lin[j];
    r = r + m;
  }
  return r;
}

Poly Poly::scaled_shifted(Complex c, const CVec3& b) const {
  std::array<CVec3, 3> A{CVec3{c, 0.0, 0.0}, CVec3{0.0, c, 0.0}, CVec3{0.0, 0.0, c}};
  return affine_substitute(A, b);
}

Complex Poly::eval(const Vec3& x) const { return eval(toC(x)); }

Complex Poly::eval(const CVec3& x) const {
  Complex s = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < e[j]; ++k) m *= x[j];
    s += m;
  }
  return s;
}

}  // namespace helmrays::model
