#include "rumin/quadrature.hpp"

#include <map>
#include <mutex>

#include "rumin/errors.hpp"

namespace rumin {

namespace {

Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

Rational power(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// All compositions of `total` into `parts` nonnegative integers.
void compositions(int total, int parts, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == parts - 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = total; v >= 0; --v) {
    current.push_back(v);
    compositions(total - v, parts, current, out);
    current.pop_back();
  }
}

std::vector<QuadraturePoint> grundmann_moller(int m, int s) {
  std::vector<QuadraturePoint> rule;
  if (m == 0) {
    rule.push_back({{Rational(1)}, Rational(1)});
    return rule;
  }
  const int d = 2 * s + 1;
  const Rational scale = factorial(m) / power(Rational(4), s);  // m! * 2^{-2s}
  for (int i = 0; i <= s; ++i) {
    const int denom = d + m - 2 * i;
    Rational w = scale * power(Rational(denom), d) / (factorial(i) * factorial(d + m - i));
    if (i % 2) w = -w;
    std::vector<std::vector<int>> betas;
    std::vector<int> cur;
    compositions(s - i, m + 1, cur, betas);
    for (const auto& beta : betas) {
      QuadraturePoint q;
      for (int b : beta) {
        Rational l(2 * b + 1, denom);
        l.canonicalize();
        q.barycentric.push_back(l);
      }
      q.weight = w;
      rule.push_back(std::move(q));
    }
  }
  return rule;
}

}  // namespace

const std::vector<QuadraturePoint>& simplex_rule(int m, int degree) {
  if (m < 0) throw ParameterError("simplex dimension must be >= 0");
  if (degree < 0) throw ParameterError("quadrature degree must be >= 0");
  const int s = degree / 2;  // smallest s with 2s+1 >= degree
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<QuadraturePoint>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(m, s);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, grundmann_moller(m, s)).first;
  return it->second;
}

}  // namespace rumin
