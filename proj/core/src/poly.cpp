#include "rumin/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rumin/errors.hpp"

namespace rumin {

Poly::Poly(int nvars, const Rational& constant) : nvars_(nvars) {
  add_term(Monomial(nvars, 0), constant);
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw ParameterError("variable index out of range");
  Monomial m(nvars, 0);
  m[index] = 1;
  return monomial(std::move(m), Rational(1));
}

Poly Poly::monomial(Monomial exponents, const Rational& coefficient) {
  Poly p(static_cast<int>(exponents.size()));
  p.add_term(exponents, coefficient);
  return p;
}

int Poly::degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, std::accumulate(m.begin(), m.end(), 0));
  return deg;
}

Rational Poly::constant() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != nvars_) throw ParameterError("monomial has the wrong number of variables");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Poly::merge_nvars(const Poly& other) {
  // A default-constructed zero adopts the variable count of its partner.
  if (nvars_ == other.nvars_) return;
  if (nvars_ == 0 && terms_.empty()) {
    nvars_ = other.nvars_;
    return;
  }
  if (other.nvars_ == 0 && other.terms_.empty()) return;
  throw ParameterError("polynomials over different variable sets");
}

Poly& Poly::operator+=(const Poly& other) {
  merge_nvars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  merge_nvars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(std::max(a.nvars_, b.nvars_));
  if (a.is_zero() || b.is_zero()) return out;
  if (a.nvars_ != b.nvars_) throw ParameterError("polynomials over different variable sets");
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

bool Poly::operator==(const Poly& other) const {
  if (terms_.empty() && other.terms_.empty()) return true;
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Poly Poly::derivative(int index) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[index] == 0) continue;
    Monomial d = m;
    --d[index];
    out.add_term(d, c * m[index]);
  }
  return out;
}

namespace {

template <class S>
S evaluate_impl(const std::map<Monomial, Rational>& terms, int nvars, std::span<const S> point) {
  if (static_cast<int>(point.size()) != nvars && !terms.empty())
    throw ParameterError("evaluation point has the wrong dimension");
  S total(0);
  for (const auto& [m, c] : terms) {
    S term = ScalarTraits<S>::from_rational(c);
    for (int i = 0; i < nvars; ++i)
      for (int e = 0; e < m[i]; ++e) term *= point[i];
    total += term;
  }
  return total;
}

}  // namespace

Rational Poly::evaluate(std::span<const Rational> point) const {
  return evaluate_impl<Rational>(terms_, nvars_, point);
}

double Poly::evaluate(std::span<const double> point) const {
  return evaluate_impl<double>(terms_, nvars_, point);
}

Poly Poly::compose_dilation(const Rational& r) const {
  Poly out(nvars_);
  for (const auto& [m, c] : terms_) {
    int weight = 0;
    for (int i = 0; i + 1 < nvars_; ++i) weight += m[i];
    weight += 2 * m[nvars_ - 1];
    Rational scale(1);
    for (int e = 0; e < weight; ++e) scale *= r;
    out.add_term(m, c * scale);
  }
  return out;
}

std::string variable_name(const HeisParams& params, int index) {
  const int n = params.n();
  if (index < n) return "x" + std::to_string(index + 1);
  if (index < 2 * n) return "y" + std::to_string(index - n + 1);
  return "t";
}

std::string to_string(const Poly& p, const HeisParams& params) {
  if (p.is_zero()) return "0";
  std::string out;
  // Highest degree first, then by the map order, for a stable layout.
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.first.begin(), a.first.end(), 0) >
           std::accumulate(b.first.begin(), b.first.end(), 0);
  });
  for (const auto& [m, c] : terms) {
    std::string factors;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) {
        if (!factors.empty()) factors += '*';
        factors += variable_name(params, static_cast<int>(i));
      }
    Rational mag = abs(c);
    std::string coef = mag.get_den() == 1 ? mag.get_str() : "(" + mag.get_str() + ")";
    std::string body;
    if (factors.empty())
      body = coef;
    else if (mag == 1)
      body = factors;
    else
      body = coef + "*" + factors;
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + body;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + body;
  }
  return out;
}

Poly random_poly(const HeisParams& params, std::mt19937_64& rng, int max_degree, int terms) {
  const int nvars = params.dim();
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  Poly p(nvars);
  for (int i = 0; i < terms; ++i) {
    Monomial m(nvars, 0);
    int d = deg(rng);
    for (int e = 0; e < d; ++e) ++m[var(rng)];
    p.add_term(m, Rational(coef(rng)));
  }
  return p;
}

}  // namespace rumin
