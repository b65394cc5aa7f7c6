#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/subset.hpp"

namespace sofic {

// One orbit of ⟨Θ(G)⟩ with its Schreier tree rooted at the smallest point.
struct OrbitTree {
  std::vector<Point> points;        // BFS order, points[0] is the base
  std::vector<Point> parent;        // parent[k] = BFS index of the parent of points[k]
  std::vector<std::uint32_t> via;   // generator with Θ(via)(parent point) = points[k]
};

// Orbits grouped by isomorphism type of the restricted action. Within a
// class every orbit O_j comes with an isomorphism iso[j]: R -> O_j from the
// class representative R (iso[0] is the identity); automorphisms of R are
// listed by the image of R's base point.
struct OrbitClass {
  std::vector<std::size_t> orbits;             // indices into CentralizerDescription::orbits
  std::vector<std::vector<Point>> iso;         // iso[j][k] = image of R.points[k]
  std::vector<Point> automorphism_images;      // valid images of R's base inside R
};

// Finite stage of the commutant Θ(G)' ∩ P_n.
class CentralizerDescription {
 public:
  CentralizerDescription(const SoficApprox& theta, std::size_t structure_bound = 10'000);

  std::size_t dimension() const { return n_; }
  const std::vector<OrbitTree>& orbits() const { return orbits_; }
  const std::vector<OrbitClass>& classes() const { return classes_; }
  const std::vector<Perm>& theta_images() const { return images_; }

  // Π over classes of k! · c^k, computed without enumeration.
  const Integer& order() const { return order_; }
  std::string order_formula() const;

  // Generates the centralizer: per class, a minimal set of automorphisms of
  // one orbit plus an orbit transposition and an orbit cycle.
  const std::vector<Perm>& generators() const { return generators_; }

  // Centralizing map determined by a base-image choice: class member j goes
  // to member target[j] via automorphism index aut[j].
  Perm element(const std::vector<std::vector<std::size_t>>& target,
               const std::vector<std::vector<std::size_t>>& aut) const;

  // Centralizer orbit of x.
  Subset centralizer_orbit(Point x) const;

  // Lazy enumeration in a fixed deterministic order. Independent per call.
  class Enumerator {
   public:
    explicit Enumerator(const CentralizerDescription& desc);
    std::optional<Perm> next();

   private:
    const CentralizerDescription* desc_;
    std::vector<std::vector<std::size_t>> target_, aut_;
    bool done_ = false;
  };
  Enumerator enumerate() const { return Enumerator(*this); }

  // Up to `cap` elements; throws BudgetError if the centralizer is larger
  // and `strict` is set.
  std::vector<Perm> elements(std::size_t cap, bool strict = false) const;

 private:
  std::vector<Point> propagate(const OrbitTree& from, const OrbitTree& to, Point base_image, bool& ok) const;
  std::vector<Point> automorphism_map(const OrbitClass& cls, Point base_image) const;

  std::size_t n_;
  std::vector<Perm> images_;
  std::vector<OrbitTree> orbits_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::uint32_t> position_;  // position of a point in its orbit's BFS order
  std::vector<OrbitClass> classes_;
  Integer order_;
  std::vector<Perm> generators_;
};

CentralizerDescription centralizer_exact(const SoficApprox& theta, std::size_t structure_bound = 10'000);

bool commutes_with_all(const Perm& sigma, const std::vector<Perm>& images);

enum class Verdict { transitive, split };
std::string to_string(Verdict v);

// Finite-stage proxy for ergodicity of the commutant action: whether the
// centralizer is transitive on the points. This is not a statement about
// the limit object.
struct ErgodicityCertificate {
  Verdict verdict = Verdict::split;
  Integer order;
  std::string order_formula;
  std::vector<Perm> witnesses;     // transitive: centralizer elements moving 0 everywhere
  std::optional<Subset> invariant; // split: proper centralizer-invariant set
};

ErgodicityCertificate ergodicity_certificate(const SoficApprox& theta, std::size_t structure_bound = 10'000);

// Re-checks a certificate against Θ from scratch.
bool verify_certificate(const SoficApprox& theta, const ErgodicityCertificate& cert);

struct ApproxCommutant {
  Perm sigma;
  Rational defect;  // max_g hs_dist_sq(σΘ(g)σ⁻¹, Θ(g))
};

Rational commutation_defect(const SoficApprox& theta, const Perm& sigma);

// Stochastic local search for near-commuting permutations; returns every
// visited σ with defect <= eps, deduplicated and sorted.
std::vector<ApproxCommutant> approx_commutant_search(const SoficApprox& theta, const Rational& eps,
                                                     std::uint64_t seed, std::size_t budget = 20'000);

struct MixingStatistic {
  Rational value;         // max_u |u(Y) ∩ Z| / n over enumerated u
  Rational min_measure;   // min(|Y|, |Z|) / n
  std::size_t enumerated = 0;
  bool exhaustive = false;
  std::optional<Perm> best;
};

MixingStatistic mixing_statistic(const SoficApprox& theta, const Subset& y, const Subset& z,
                                 std::size_t cap = 100'000);

}  // namespace sofic
