#include "rumin/current.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rumin/errors.hpp"
#include "rumin/linalg.hpp"
#include "rumin/quadrature.hpp"

namespace rumin {

// ---------------------------------------------------------------- half-spaces

Rational HalfSpace::eval(const Point<Rational>& p) const {
  if (normal.size() != p.coords().size()) throw ParameterError("half-space dimension mismatch");
  Rational v = offset;
  for (std::size_t i = 0; i < normal.size(); ++i) v += normal[i] * p[i];
  return v;
}

bool HalfSpace::contains(const Point<Rational>& p) const {
  int s = sgn(eval(p));
  return strict ? s > 0 : s >= 0;
}

HalfSpace HalfSpace::complement() const {
  HalfSpace h;
  for (const auto& a : normal) h.normal.push_back(-a);
  h.offset = -offset;
  h.strict = !strict;
  return h;
}

// ---------------------------------------------------------------- simplices

Point<Rational> Simplex::at(std::span<const Rational> lambda) const {
  if (lambda.size() != vertices.size()) throw ParameterError("barycentric size mismatch");
  Point<Rational> p(vertices.front().params());
  const std::size_t dim = p.coords().size();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (sgn(lambda[i]) == 0) continue;
    for (std::size_t c = 0; c < dim; ++c) p[c] += lambda[i] * vertices[i][c];
  }
  return p;
}

std::vector<std::vector<Rational>> Simplex::edges() const {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::vector<Rational> e(vertices[i].coords().begin(), vertices[i].coords().end());
    for (std::size_t c = 0; c < e.size(); ++c) e[c] -= vertices[0][c];
    out.push_back(std::move(e));
  }
  return out;
}

Multivector<Rational> Simplex::tangent_at(const Point<Rational>& p) const {
  std::vector<std::vector<Rational>> frame;
  for (const auto& e : edges()) frame.push_back(frame_change(p, std::span<const Rational>(e)));
  return wedge_vectors<Rational>(p.params(), frame);
}

namespace {

std::size_t affine_rank(const std::vector<const std::vector<Rational>*>& rows) {
  if (rows.size() <= 1) return 0;
  const std::size_t cols = rows.front()->size();
  Matrix m(rows.size() - 1, cols);
  for (std::size_t r = 1; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r - 1, c) = (*rows[r])[c] - (*rows.front())[c];
  return rank(m);
}

std::size_t point_affine_rank(const std::vector<Point<Rational>>& pts) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : pts) rows.emplace_back(p.coords().begin(), p.coords().end());
  std::vector<const std::vector<Rational>*> ptrs;
  for (const auto& r : rows) ptrs.push_back(&r);
  return affine_rank(ptrs);
}

int permutation_parity(std::vector<std::size_t> perm) {
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      parity ^= 1;
    }
  return parity;
}

}  // namespace

// ---------------------------------------------------------------- chains

SimplicialCurrent::SimplicialCurrent(HeisParams params, int degree) : params_(params), degree_(degree) {
  if (degree < 0 || degree > params.dim()) throw ParameterError("chain degree out of range");
}

void SimplicialCurrent::add(Simplex s) {
  if (s.degree() != degree_)
    throw ParameterError("simplex of degree " + std::to_string(s.degree()) + " added to a " +
                         std::to_string(degree_) + "-chain");
  for (const auto& v : s.vertices)
    if (!(v.params() == params_)) throw ParameterError("simplex vertex over a different group");
  if (sgn(s.multiplicity) == 0) return;
  if (point_affine_rank(s.vertices) != static_cast<std::size_t>(degree_))
    throw ParameterError("simplex vertices are affinely dependent");
  simplices_.push_back(std::move(s));
}

void SimplicialCurrent::add_unchecked(Simplex s) {
  if (sgn(s.multiplicity) == 0) return;
  simplices_.push_back(std::move(s));
}

void SimplicialCurrent::require_compatible(const SimplicialCurrent& other) const {
  if (!(params_ == other.params_)) throw ParameterError("chains over different groups");
  if (degree_ != other.degree_) throw ParameterError("chains of different degrees");
}

SimplicialCurrent& SimplicialCurrent::operator+=(const SimplicialCurrent& other) {
  require_compatible(other);
  simplices_.insert(simplices_.end(), other.simplices_.begin(), other.simplices_.end());
  return *this;
}

SimplicialCurrent& SimplicialCurrent::operator-=(const SimplicialCurrent& other) {
  require_compatible(other);
  for (Simplex s : other.simplices_) {
    s.multiplicity = -s.multiplicity;
    simplices_.push_back(std::move(s));
  }
  return *this;
}

SimplicialCurrent operator-(const SimplicialCurrent& a) {
  return SimplicialCurrent(a.params_, a.degree_) - a;
}

SimplicialCurrent SimplicialCurrent::canonical() const {
  struct Entry {
    Rational mult;
    int order;
  };
  std::map<std::vector<Point<Rational>>, Entry> merged;
  for (const auto& s : simplices_) {
    std::vector<std::size_t> perm(s.vertices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return s.vertices[a] < s.vertices[b]; });
    std::vector<Point<Rational>> key;
    for (auto i : perm) key.push_back(s.vertices[i]);
    Rational m = permutation_parity(perm) ? Rational(-s.multiplicity) : s.multiplicity;
    auto [it, inserted] = merged.try_emplace(std::move(key), Entry{m, s.quadrature_order});
    if (!inserted) {
      it->second.mult += m;
      it->second.order = std::max(it->second.order, s.quadrature_order);
    }
  }
  SimplicialCurrent out(params_, degree_);
  for (auto& [verts, e] : merged)
    if (sgn(e.mult) != 0) out.simplices_.push_back(Simplex{verts, e.mult, e.order});
  return out;
}

bool SimplicialCurrent::same_chain(const SimplicialCurrent& other) const {
  if (!(params_ == other.params_) || degree_ != other.degree_) return false;
  return (*this - other).canonical().empty();
}

// ---------------------------------------------------------------- pairing and mass

namespace {

Rational factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

template <class F>
void for_each_quadrature_point(const Simplex& s, int integrand_degree, F&& f) {
  const int order = std::max(s.quadrature_order, integrand_degree);
  for (const auto& q : simplex_rule(s.degree(), order)) f(q.weight, s.at(q.barycentric));
}

bool is_perfect_square(const Rational& q) {
  return sgn(q) >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

Rational exact_sqrt(const Rational& q) {
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
  return Rational(a, b);
}

Rational norm_squared(const Multivector<Rational>& v) {
  Rational s = 0;
  for (const auto& [b, c] : v.terms()) s += c * c;
  return s;
}

}  // namespace

Rational pair_form(const SimplicialCurrent& T, const PolyForm& w) {
  if (w.grade() != T.degree())
    throw ParameterError("pairing a " + std::to_string(T.degree()) + "-current with a " +
                         std::to_string(w.grade()) + "-form");
  if (!(w.params() == T.params())) throw ParameterError("form and current over different groups");
  const Rational inv_fact = 1 / factorial(T.degree());
  const int deg = std::max(w.coefficient_degree(), 0) + 1;
  Rational total = 0;
  for (const auto& s : T.simplices()) {
    Rational sum = 0;
    for_each_quadrature_point(s, deg, [&](const Rational& weight, const Point<Rational>& p) {
      sum += weight * pair(evaluate_form_at(w, p), s.tangent_at(p));
    });
    total += s.multiplicity * sum;
  }
  return total * inv_fact;
}

bool is_admissible(const RuminComplex& complex, const Multivector<Rational>& V) {
  if (V.grade() > complex.n()) throw ParameterError("admissibility is defined for k <= n");
  for (const auto& phi : complex.ideal_generators(V.grade()))
    if (sgn(pair(phi, V)) != 0) return false;
  return true;
}

Rational pair_current(const SimplicialCurrent& T, const RuminClass& c, const RuminComplex& complex) {
  if (c.degree() != T.degree())
    throw ParameterError("pairing a " + std::to_string(T.degree()) + "-current with a degree " +
                         std::to_string(c.degree()) + " class");
  if (c.regime() == Regime::Low) {
    // V is affine along the simplex, so checking the vertices covers every point.
    for (std::size_t i = 0; i < T.simplices().size(); ++i) {
      const auto& s = T.simplices()[i];
      for (const auto& v : s.vertices)
        if (!is_admissible(complex, s.tangent_at(v)))
          throw AdmissibilityError(i, "simplex " + std::to_string(i) +
                                          " has a tangent that does not annihilate I^" +
                                          std::to_string(c.degree()));
    }
  }
  return pair_form(T, c.payload());
}

double mass(const SimplicialCurrent& T) {
  if (auto exact = mass_exact(T)) return to_double(*exact);
  double total = 0;
  for (const auto& s : T.simplices()) {
    double sum = 0;
    for_each_quadrature_point(s, 0, [&](const Rational& weight, const Point<Rational>& p) {
      sum += to_double(weight) * std::sqrt(to_double(norm_squared(s.tangent_at(p))));
    });
    total += std::abs(to_double(s.multiplicity)) * sum;
  }
  return total / to_double(factorial(T.degree()));
}

std::optional<Rational> mass_exact(const SimplicialCurrent& T) {
  Rational total = 0;
  for (const auto& s : T.simplices()) {
    Rational sum = 0;
    bool ok = true;
    for_each_quadrature_point(s, 0, [&](const Rational& weight, const Point<Rational>& p) {
      if (!ok) return;
      Rational n2 = norm_squared(s.tangent_at(p));
      if (!is_perfect_square(n2)) {
        ok = false;
        return;
      }
      sum += weight * exact_sqrt(n2);
    });
    if (!ok) return std::nullopt;
    total += abs(s.multiplicity) * sum;
  }
  return total / factorial(T.degree());
}

double measure_of(const SimplicialCurrent& T, const Region& A) { return mass(restrict_to_set(T, A)); }

// ---------------------------------------------------------------- clipping

namespace {

struct PolyVertex {
  Point<Rational> point;
  std::vector<Rational> bary;
  std::vector<bool> tight;  // per constraint: lambda_0..lambda_k, then the cut
};

class PullingTriangulator {
 public:
  explicit PullingTriangulator(const std::vector<PolyVertex>& verts) : v_(verts) {}

  std::vector<std::vector<std::size_t>> run(int dim) {
    std::vector<std::size_t> all(v_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::vector<std::size_t>> out;
    pull(all, dim, out);
    return out;
  }

 private:
  std::size_t rank_of(const std::vector<std::size_t>& s) const {
    std::vector<const std::vector<Rational>*> rows;
    for (auto i : s) rows.push_back(&v_[i].bary);
    return affine_rank(rows);
  }

  void pull(const std::vector<std::size_t>& face, int dim, std::vector<std::vector<std::size_t>>& out) const {
    if (static_cast<int>(face.size()) == dim + 1) {
      out.push_back(face);
      return;
    }
    std::size_t apex = face.front();
    for (auto i : face)
      if (v_[i].point < v_[apex].point) apex = i;
    const std::size_t constraints = v_.front().tight.size();
    std::set<std::vector<std::size_t>> facets;
    for (std::size_t c = 0; c < constraints; ++c) {
      std::vector<std::size_t> sub;
      for (auto i : face)
        if (v_[i].tight[c]) sub.push_back(i);
      if (sub.size() == face.size() || sub.size() < static_cast<std::size_t>(dim)) continue;
      if (std::find(sub.begin(), sub.end(), apex) != sub.end()) continue;
      if (rank_of(sub) != static_cast<std::size_t>(dim - 1)) continue;
      facets.insert(sub);
    }
    for (const auto& f : facets) {
      std::vector<std::vector<std::size_t>> pieces;
      pull(f, dim - 1, pieces);
      for (auto& piece : pieces) {
        piece.insert(piece.begin(), apex);
        out.push_back(std::move(piece));
      }
    }
  }

  const std::vector<PolyVertex>& v_;
};

std::vector<Rational> unit_bary(std::size_t size, std::size_t i) {
  std::vector<Rational> b(size);
  b[i] = 1;
  return b;
}

// Vertices of s intersected with {h >= 0} (keep_side) or with {h == 0}.
std::vector<PolyVertex> cut_vertices(const Simplex& s, const std::vector<Rational>& g, bool keep_side) {
  const std::size_t m = s.vertices.size();
  std::vector<PolyVertex> out;
  auto make = [&](std::vector<Rational> bary, bool on_cut) {
    PolyVertex v{s.at(bary), std::move(bary), {}};
    for (std::size_t i = 0; i < m; ++i) v.tight.push_back(sgn(v.bary[i]) == 0);
    v.tight.push_back(on_cut);
    out.push_back(std::move(v));
  };
  if (keep_side)
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(g[i]) >= 0) make(unit_bary(m, i), sgn(g[i]) == 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (sgn(g[i]) * sgn(g[j]) >= 0) continue;
      std::vector<Rational> bary(m);
      Rational denom = g[i] - g[j];
      bary[i] = -g[j] / denom;
      bary[j] = g[i] / denom;
      make(std::move(bary), true);
    }
  return out;
}

}  // namespace

std::vector<Simplex> clip_simplex(const Simplex& s, const HalfSpace& h) {
  const std::size_t m = s.vertices.size();
  std::vector<Rational> g;
  int pos = 0, neg = 0;
  for (const auto& v : s.vertices) {
    g.push_back(h.eval(v));
    if (sgn(g.back()) > 0) ++pos;
    if (sgn(g.back()) < 0) ++neg;
  }
  if (pos == 0 && neg == 0) return h.strict ? std::vector<Simplex>{} : std::vector<Simplex>{s};
  if (neg == 0) return {s};
  if (pos == 0) return {};

  auto verts = cut_vertices(s, g, true);
  auto pieces = PullingTriangulator(verts).run(s.degree());
  std::vector<Simplex> out;
  for (const auto& piece : pieces) {
    Matrix bm(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) bm(r, c) = verts[piece[r]].bary[c];
    int orientation = sgn(determinant(bm));
    if (orientation == 0) continue;
    Simplex t{{}, s.multiplicity, s.quadrature_order};
    for (auto i : piece) t.vertices.push_back(verts[i].point);
    if (orientation < 0) std::swap(t.vertices[0], t.vertices[1]);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SectionPiece> cross_section(const Simplex& s, const HalfSpace& h) {
  std::vector<Rational> g;
  for (const auto& v : s.vertices) {
    g.push_back(h.eval(v));
    if (sgn(g.back()) == 0) throw DegenerateLevelError("a vertex lies on the cutting hyperplane");
  }
  auto verts = cut_vertices(s, g, false);
  std::vector<SectionPiece> out;
  if (verts.empty()) return out;
  for (const auto& piece : PullingTriangulator(verts).run(s.degree() - 1)) {
    SectionPiece sp;
    for (auto i : piece) {
      sp.points.push_back(verts[i].point);
      sp.barycentric.push_back(verts[i].bary);
    }
    out.push_back(std::move(sp));
  }
  return out;
}

SimplicialCurrent restrict_to_set(const SimplicialCurrent& T, const HalfSpace& h) {
  SimplicialCurrent out(T.params(), T.degree());
  for (const auto& s : T.simplices())
    for (auto& piece : clip_simplex(s, h)) out.add_unchecked(std::move(piece));
  return out;
}

SimplicialCurrent restrict_to_set(const SimplicialCurrent& T, const Region& A) {
  SimplicialCurrent out = T;
  for (const auto& h : A) out = restrict_to_set(out, h);
  return out;
}

SimplicialCurrent boundary(const SimplicialCurrent& T) {
  if (T.degree() < 1) throw ParameterError("boundary of a 0-chain");
  SimplicialCurrent out(T.params(), T.degree() - 1);
  for (const auto& s : T.simplices()) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      Simplex face{{}, i % 2 ? Rational(-s.multiplicity) : s.multiplicity, s.quadrature_order};
      for (std::size_t j = 0; j < s.vertices.size(); ++j)
        if (j != i) face.vertices.push_back(s.vertices[j]);
      out.add_unchecked(std::move(face));
    }
  }
  return out.canonical();
}

// ---------------------------------------------------------------- weighted restriction

double WeightedCurrent::pair(const PolyForm& w) const {
  if (w.grade() != chain_.degree()) throw ParameterError("pairing degree mismatch");
  const int deg = std::max(w.coefficient_degree(), 0) + 2;
  double total = 0;
  for (const auto& s : chain_.simplices()) {
    double sum = 0;
    for_each_quadrature_point(s, deg, [&](const Rational& weight, const Point<Rational>& p) {
      sum += to_double(weight) * g_(to_double_point(p)) *
             to_double(rumin::pair(evaluate_form_at(w, p), s.tangent_at(p)));
    });
    total += to_double(s.multiplicity) * sum;
  }
  return total / to_double(factorial(chain_.degree()));
}

double WeightedCurrent::mass() const {
  double total = 0;
  for (const auto& s : chain_.simplices()) {
    double sum = 0;
    for_each_quadrature_point(s, 1, [&](const Rational& weight, const Point<Rational>& p) {
      sum += to_double(weight) * std::abs(g_(to_double_point(p))) *
             std::sqrt(to_double(norm_squared(s.tangent_at(p))));
    });
    total += std::abs(to_double(s.multiplicity)) * sum;
  }
  return total / to_double(factorial(chain_.degree()));
}

WeightedCurrent restrict_by_fn(const SimplicialCurrent& T, WeightedCurrent::Weight g,
                               const std::vector<HalfSpace>& cuts) {
  SimplicialCurrent refined = T;
  for (const auto& h : cuts) {
    HalfSpace closed = h;
    closed.strict = false;
    refined = restrict_to_set(refined, closed) + restrict_to_set(refined, closed.complement());
  }
  return WeightedCurrent(std::move(refined), std::move(g));
}

}  // namespace rumin
