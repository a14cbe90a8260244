#include "rumin/exterior.hpp"

#include <algorithm>
#include <numeric>

namespace rumin {

Blade Blade::from_indices(std::span<const int> indices) {
  std::uint32_t mask = 0;
  int prev = 0;
  for (int i : indices) {
    if (i <= prev) throw ParameterError("blade indices must be strictly increasing and >= 1");
    if (i > 31) throw ParameterError("blade index out of range");
    mask |= std::uint32_t{1} << (i - 1);
    prev = i;
  }
  return Blade(mask);
}

std::vector<int> Blade::indices() const {
  std::vector<int> out;
  std::uint32_t m = mask_;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

std::vector<Blade> blades_of_grade(int dim, int grade) {
  std::vector<Blade> out;
  if (grade < 0 || grade > dim) return out;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << dim); ++m)
    if (std::popcount(m) == grade) out.push_back(Blade::from_mask(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Blade> horizontal_blades(const HeisParams& params, int grade) {
  return blades_of_grade(2 * params.n(), grade);
}

int hodge_sign_exponent(Blade blade, int dim) {
  const std::uint32_t comp = Blade::top(dim).mask() & ~blade.mask();
  int count = 0;
  std::uint32_t rest = blade.mask();
  while (rest) {
    int i = std::countr_zero(rest);
    count += std::popcount(comp & ((std::uint32_t{1} << i) - 1));  // complement indices below i
    rest &= rest - 1;
  }
  return count;
}

namespace {

std::vector<std::vector<double>> gram_schmidt(std::vector<std::vector<double>> cols) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      double d = std::inner_product(cols[i].begin(), cols[i].end(), cols[j].begin(), 0.0);
      for (std::size_t r = 0; r < cols[j].size(); ++r) cols[j][r] -= d * cols[i][r];
    }
    double nrm = std::sqrt(std::inner_product(cols[j].begin(), cols[j].end(), cols[j].begin(), 0.0));
    if (nrm < 1e-12) throw ParameterError("simple vector columns are linearly dependent");
    for (auto& x : cols[j]) x /= nrm;
  }
  return cols;
}

}  // namespace

SimpleVectorSample SimpleVectorSample::random(HeisParams params, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = params.dim();
  for (;;) {
    std::vector<std::vector<double>> cols(k, std::vector<double>(dim));
    for (auto& c : cols)
      for (auto& x : c) x = gauss(rng);
    try {
      return SimpleVectorSample(params, gram_schmidt(std::move(cols)));
    } catch (const ParameterError&) {
      // degenerate draw, resample
    }
  }
}

SimpleVectorSample SimpleVectorSample::from_columns(HeisParams params,
                                                    std::vector<std::vector<double>> cols) {
  for (const auto& c : cols)
    if (static_cast<int>(c.size()) != params.dim()) throw ParameterError("column has wrong dimension");
  return SimpleVectorSample(params, gram_schmidt(std::move(cols)));
}

Multivector<double> SimpleVectorSample::to_multivector() const {
  return wedge_vectors<double>(params_, columns_);
}

double comass(const Covector<double>& w, int samples, std::mt19937_64& rng) {
  double best = 0.0;
  for (const auto& [b, c] : w.terms()) best = std::max(best, std::abs(c));
  if (w.is_zero() || w.grade() == 0) return best;
  for (int s = 0; s < samples; ++s) {
    auto v = SimpleVectorSample::random(w.params(), w.grade(), rng).to_multivector();
    best = std::max(best, std::abs(pair(w, v)));
  }
  return best;
}

double comass(const Covector<Rational>& w, int samples, std::mt19937_64& rng) {
  return comass(to_double(w), samples, rng);
}

std::string blade_name(const HeisParams& params, Blade b, Kind kind) {
  if (b.empty()) return "1";
  const int n = params.n();
  std::string out;
  for (int i : b.indices()) {
    if (!out.empty()) out += '^';
    if (kind == Kind::Covector) {
      if (i <= n)
        out += "dx" + std::to_string(i);
      else if (i <= 2 * n)
        out += "dy" + std::to_string(i - n);
      else
        out += "theta";
    } else {
      if (i <= n)
        out += "X" + std::to_string(i);
      else if (i <= 2 * n)
        out += "Y" + std::to_string(i - n);
      else
        out += "T";
    }
  }
  return out;
}

}  // namespace rumin
