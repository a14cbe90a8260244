#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rumin/exterior.hpp"
#include "rumin/heisenberg.hpp"
#include "rumin/poly_form.hpp"
#include "rumin/rumin_complex.hpp"

namespace rumin {

/// {w : normal . w + offset >= 0}, or > 0 when strict.
struct HalfSpace {
  std::vector<Rational> normal;
  Rational offset;
  bool strict = false;

  Rational eval(const Point<Rational>& p) const;
  bool contains(const Point<Rational>& p) const;
  /// The closure-complementary half-space (>= becomes <, > becomes <=).
  HalfSpace complement() const;
};

/// Finite intersection of half-spaces; the empty list is the whole space.
using Region = std::vector<HalfSpace>;

struct Simplex {
  std::vector<Point<Rational>> vertices;
  Rational multiplicity = 1;
  /// Polynomial degree integrated exactly; raised automatically when the
  /// integrand needs more.
  int quadrature_order = 5;

  int degree() const { return static_cast<int>(vertices.size()) - 1; }
  /// Point with the given barycentric coordinates.
  Point<Rational> at(std::span<const Rational> lambda) const;
  /// Coordinate edge vectors v_i - v_0.
  std::vector<std::vector<Rational>> edges() const;
  /// Frame k-vector wedge_i frame_change(p, v_i - v_0) at p.
  Multivector<Rational> tangent_at(const Point<Rational>& p) const;
};

/// Weighted oriented affine k-chain in R^{2n+1}.
class SimplicialCurrent {
 public:
  SimplicialCurrent(HeisParams params, int degree);

  const HeisParams& params() const noexcept { return params_; }
  int degree() const noexcept { return degree_; }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  bool empty() const noexcept { return simplices_.empty(); }
  std::size_t size() const noexcept { return simplices_.size(); }

  /// Adds a simplex; zero-multiplicity simplices are ignored, degenerate ones
  /// with nonzero multiplicity are rejected.
  void add(Simplex s);
  /// Adds without the affine-independence check (used by internal
  /// constructions that are nondegenerate by design).
  void add_unchecked(Simplex s);

  SimplicialCurrent& operator+=(const SimplicialCurrent& other);
  SimplicialCurrent& operator-=(const SimplicialCurrent& other);
  friend SimplicialCurrent operator+(SimplicialCurrent a, const SimplicialCurrent& b) { return a += b; }
  friend SimplicialCurrent operator-(SimplicialCurrent a, const SimplicialCurrent& b) { return a -= b; }
  friend SimplicialCurrent operator-(const SimplicialCurrent& a);

  /// Vertices sorted in each simplex (the permutation sign goes into the
  /// multiplicity), equal simplices merged, zeros dropped, simplices sorted.
  SimplicialCurrent canonical() const;
  /// Chain equality after canonicalization.
  bool same_chain(const SimplicialCurrent& other) const;

 private:
  void require_compatible(const SimplicialCurrent& other) const;

  HeisParams params_;
  int degree_;
  std::vector<Simplex> simplices_;
};

/// T(w) = sum mult/k! * sum_q w_q <w(p_q) | V(p_q)>, exact.
Rational pair_form(const SimplicialCurrent& T, const PolyForm& w);

/// Pairing with a Rumin class through its representative. In the Low regime
/// every tangent must annihilate I^k, otherwise AdmissibilityError.
Rational pair_current(const SimplicialCurrent& T, const RuminClass& c, const RuminComplex& complex);

/// True iff <phi | V> = 0 for every generator phi of I^k (k <= n).
bool is_admissible(const RuminComplex& complex, const Multivector<Rational>& V);

/// mu_T(everything) = sum |mult|/k! * sum_q w_q |V(p_q)|.
double mass(const SimplicialCurrent& T);
/// Same quadrature in exact arithmetic, available when every |V(p_q)| is rational.
std::optional<Rational> mass_exact(const SimplicialCurrent& T);
double measure_of(const SimplicialCurrent& T, const Region& A);

/// Exact clipping: each simplex is cut along the bounding hyperplanes and the
/// kept polytopes are triangulated consistently (pulling from the
/// lexicographically smallest vertex), so shared faces subdivide identically.
SimplicialCurrent restrict_to_set(const SimplicialCurrent& T, const Region& A);
SimplicialCurrent restrict_to_set(const SimplicialCurrent& T, const HalfSpace& h);

/// Pieces of a simplex on the side h of the boundary hyperplane, oriented like s.
std::vector<Simplex> clip_simplex(const Simplex& s, const HalfSpace& h);
/// One simplex of a cross-section, with barycentric coordinates relative to
/// the simplex that was cut.
struct SectionPiece {
  std::vector<Point<Rational>> points;
  std::vector<std::vector<Rational>> barycentric;
};

/// Triangulation of s cut by the hyperplane {h = 0}, in pulling order. Throws
/// DegenerateLevelError if a vertex of s lies on the hyperplane.
std::vector<SectionPiece> cross_section(const Simplex& s, const HalfSpace& h);

/// Alternating-sign faces, canonicalized so interior faces cancel.
SimplicialCurrent boundary(const SimplicialCurrent& T);

/// T restricted by a bounded function g: (T|g)(w) = integral of g <w | T>.
class WeightedCurrent {
 public:
  using Weight = std::function<double(const Point<double>&)>;
  WeightedCurrent(SimplicialCurrent refined, Weight g) : chain_(std::move(refined)), g_(std::move(g)) {}

  const SimplicialCurrent& chain() const noexcept { return chain_; }
  double pair(const PolyForm& w) const;
  double mass() const;

 private:
  SimplicialCurrent chain_;
  Weight g_;
};

/// Refines T along every hyperplane in `cuts` (where g may fail to be smooth)
/// before integrating g against it.
WeightedCurrent restrict_by_fn(const SimplicialCurrent& T, WeightedCurrent::Weight g,
                               const std::vector<HalfSpace>& cuts = {});

}  // namespace rumin
