#include "sofic/commutant.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "sofic/error.hpp"
#include "sofic/random.hpp"

namespace sofic {

namespace {

constexpr Point kUnset = ~Point{0};

Integer factorial(std::size_t k) {
  Integer f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// Orbit of `start` under a set of permutations.
std::vector<bool> orbit_mask(const std::vector<Perm>& gens, std::size_t n, Point start) {
  std::vector<bool> seen(n, false);
  std::deque<Point> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const Point x = queue.front();
    queue.pop_front();
    for (const Perm& g : gens) {
      const Point y = g[x];
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

CentralizerDescription::CentralizerDescription(const SoficApprox& theta, std::size_t structure_bound)
    : n_(theta.dimension()), images_(theta.images()) {
  if (n_ > structure_bound)
    throw BudgetError("centralizer: dimension " + std::to_string(n_) + " exceeds structure bound " +
                      std::to_string(structure_bound));

  // Orbits and Schreier trees (BFS over generator images).
  orbit_of_.assign(n_, SIZE_MAX);
  position_.assign(n_, 0);
  for (Point start = 0; start < n_; ++start) {
    if (orbit_of_[start] != SIZE_MAX) continue;
    OrbitTree tree;
    const std::size_t id = orbits_.size();
    tree.points.push_back(start);
    tree.parent.push_back(0);
    tree.via.push_back(0);
    orbit_of_[start] = id;
    for (std::size_t k = 0; k < tree.points.size(); ++k) {
      const Point x = tree.points[k];
      for (std::uint32_t g = 0; g < images_.size(); ++g) {
        const Point y = images_[g][x];
        if (orbit_of_[y] != SIZE_MAX) continue;
        orbit_of_[y] = id;
        position_[y] = static_cast<std::uint32_t>(tree.points.size());
        tree.points.push_back(y);
        tree.parent.push_back(static_cast<Point>(k));
        tree.via.push_back(g);
      }
    }
    orbits_.push_back(std::move(tree));
  }

  // Conjugation-invariant point signatures prune candidate base images.
  std::vector<std::vector<std::size_t>> signature(n_);
  for (const Perm& p : images_)
    for (const auto& c : cycles(p))
      for (Point x : c) signature[x].push_back(c.size());

  for (std::size_t o = 0; o < orbits_.size(); ++o) {
    const OrbitTree& orbit = orbits_[o];
    bool placed = false;
    for (OrbitClass& cls : classes_) {
      const OrbitTree& rep = orbits_[cls.orbits[0]];
      if (rep.points.size() != orbit.points.size()) continue;
      for (Point y : orbit.points) {
        if (signature[y] != signature[rep.points[0]]) continue;
        bool ok = false;
        auto iso = propagate(rep, orbit, y, ok);
        if (ok) {
          cls.orbits.push_back(o);
          cls.iso.push_back(std::move(iso));
          placed = true;
          break;
        }
      }
      if (placed) break;
    }
    if (placed) continue;
    OrbitClass cls;
    cls.orbits.push_back(o);
    cls.iso.push_back(orbit.points);
    std::vector<Point> candidates = orbit.points;
    std::sort(candidates.begin(), candidates.end());
    for (Point y : candidates) {
      if (signature[y] != signature[orbit.points[0]]) continue;
      bool ok = false;
      propagate(orbit, orbit, y, ok);
      if (ok) cls.automorphism_images.push_back(y);
    }
    classes_.push_back(std::move(cls));
  }

  order_ = 1;
  for (const OrbitClass& cls : classes_) {
    const std::size_t k = cls.orbits.size();
    order_ *= factorial(k) * pow(Integer(cls.automorphism_images.size()), static_cast<unsigned>(k));
  }

  // Generating set of the wreath products Aut(R) ≀ Sym(k).
  std::vector<std::vector<std::size_t>> target(classes_.size()), aut(classes_.size());
  auto reset = [&] {
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      const std::size_t k = classes_[ci].orbits.size();
      target[ci].resize(k);
      for (std::size_t j = 0; j < k; ++j) target[ci][j] = j;
      aut[ci].assign(k, 0);
    }
  };
  for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
    const OrbitClass& cls = classes_[ci];
    const OrbitTree& rep = orbits_[cls.orbits[0]];
    // Aut(R) acts freely on R, so the orbit of the base under the chosen
    // automorphisms has the size of the subgroup they generate.
    std::vector<std::vector<Point>> chosen;
    std::vector<bool> reached(n_, false);
    reached[rep.points[0]] = true;
    for (std::size_t a = 1; a < cls.automorphism_images.size(); ++a) {
      const Point y = cls.automorphism_images[a];
      if (reached[y]) continue;
      chosen.push_back(automorphism_map(cls, y));
      reset();
      aut[ci][0] = a;
      generators_.push_back(element(target, aut));
      std::fill(reached.begin(), reached.end(), false);
      std::deque<Point> queue{rep.points[0]};
      reached[rep.points[0]] = true;
      while (!queue.empty()) {
        const Point x = queue.front();
        queue.pop_front();
        for (const auto& m : chosen) {
          const Point z = m[position_[x]];
          if (!reached[z]) {
            reached[z] = true;
            queue.push_back(z);
          }
        }
      }
    }
    const std::size_t k = cls.orbits.size();
    if (k >= 2) {
      reset();
      std::swap(target[ci][0], target[ci][1]);
      generators_.push_back(element(target, aut));
    }
    if (k >= 3) {
      reset();
      for (std::size_t j = 0; j < k; ++j) target[ci][j] = (j + 1) % k;
      generators_.push_back(element(target, aut));
    }
  }
}

std::vector<Point> CentralizerDescription::propagate(const OrbitTree& from, const OrbitTree& to, Point base_image,
                                                     bool& ok) const {
  ok = false;
  std::vector<Point> img(from.points.size(), kUnset);
  if (from.points.size() != to.points.size()) return img;
  img[0] = base_image;
  for (std::size_t k = 1; k < from.points.size(); ++k) img[k] = images_[from.via[k]][img[from.parent[k]]];
  // Schreier generators of the base stabilizer must fix base_image:
  // equivalently, the propagated map commutes with every generator.
  for (std::size_t k = 0; k < from.points.size(); ++k)
    for (const Perm& g : images_)
      if (img[position_[g[from.points[k]]]] != g[img[k]]) return img;
  ok = true;
  return img;
}

std::vector<Point> CentralizerDescription::automorphism_map(const OrbitClass& cls, Point base_image) const {
  const OrbitTree& rep = orbits_[cls.orbits[0]];
  bool ok = false;
  auto m = propagate(rep, rep, base_image, ok);
  if (!ok) throw Error("centralizer: invalid automorphism image");
  return m;
}

Perm CentralizerDescription::element(const std::vector<std::vector<std::size_t>>& target,
                                     const std::vector<std::vector<std::size_t>>& aut) const {
  std::vector<Point> sigma(n_, kUnset);
  for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
    const OrbitClass& cls = classes_[ci];
    for (std::size_t j = 0; j < cls.orbits.size(); ++j) {
      const auto alpha = automorphism_map(cls, cls.automorphism_images[aut[ci][j]]);
      const auto& from = cls.iso[j];
      const auto& to = cls.iso[target[ci][j]];
      for (std::size_t k = 0; k < from.size(); ++k) sigma[from[k]] = to[position_[alpha[k]]];
    }
  }
  return Perm::from_images_unchecked(std::move(sigma));
}

std::string CentralizerDescription::order_formula() const {
  std::ostringstream out;
  bool first = true;
  for (const OrbitClass& cls : classes_) {
    if (!first) out << " * ";
    first = false;
    const std::size_t k = cls.orbits.size(), c = cls.automorphism_images.size();
    out << k << "! * " << c << "^" << k;
  }
  return out.str();
}

Subset CentralizerDescription::centralizer_orbit(Point x) const {
  return Subset::from_mask(orbit_mask(generators_, n_, x));
}

CentralizerDescription::Enumerator::Enumerator(const CentralizerDescription& desc) : desc_(&desc) {
  for (const OrbitClass& cls : desc.classes()) {
    std::vector<std::size_t> t(cls.orbits.size());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = j;
    target_.push_back(std::move(t));
    aut_.emplace_back(cls.orbits.size(), 0);
  }
}

std::optional<Perm> CentralizerDescription::Enumerator::next() {
  if (done_) return std::nullopt;
  Perm out = desc_->element(target_, aut_);
  // Odometer: automorphism digits fastest, then the orbit matching, classes
  // from last to first.
  bool carried = true;
  for (std::size_t ci = desc_->classes().size(); carried && ci-- > 0;) {
    const std::size_t c = desc_->classes()[ci].automorphism_images.size();
    auto& digits = aut_[ci];
    carried = true;
    for (std::size_t j = digits.size(); carried && j-- > 0;) {
      if (++digits[j] < c) {
        carried = false;
      } else {
        digits[j] = 0;
      }
    }
    if (carried) carried = !std::next_permutation(target_[ci].begin(), target_[ci].end());
  }
  if (carried) done_ = true;
  return out;
}

std::vector<Perm> CentralizerDescription::elements(std::size_t cap, bool strict) const {
  if (strict && order_ > cap)
    throw BudgetError("centralizer of order " + order_.str() + " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Perm> out;
  auto it = enumerate();
  while (out.size() < cap) {
    auto p = it.next();
    if (!p) break;
    out.push_back(std::move(*p));
  }
  return out;
}

CentralizerDescription centralizer_exact(const SoficApprox& theta, std::size_t structure_bound) {
  return CentralizerDescription(theta, structure_bound);
}

bool commutes_with_all(const Perm& sigma, const std::vector<Perm>& images) {
  for (const Perm& g : images) {
    if (g.size() != sigma.size()) return false;
    for (std::size_t x = 0; x < g.size(); ++x)
      if (sigma[g[x]] != g[sigma[x]]) return false;
  }
  return true;
}

std::string to_string(Verdict v) { return v == Verdict::transitive ? "transitive" : "split"; }

ErgodicityCertificate ergodicity_certificate(const SoficApprox& theta, std::size_t structure_bound) {
  const CentralizerDescription desc(theta, structure_bound);
  ErgodicityCertificate cert;
  cert.order = desc.order();
  cert.order_formula = desc.order_formula();
  const auto& classes = desc.classes();
  const bool transitive =
      classes.size() == 1 &&
      classes[0].automorphism_images.size() == desc.orbits()[classes[0].orbits[0]].points.size();
  if (transitive) {
    cert.verdict = Verdict::transitive;
    cert.witnesses = desc.generators();
  } else {
    cert.verdict = Verdict::split;
    cert.invariant = desc.centralizer_orbit(0);
  }
  return cert;
}

bool verify_certificate(const SoficApprox& theta, const ErgodicityCertificate& cert) {
  const std::size_t n = theta.dimension();
  if (cert.verdict == Verdict::transitive) {
    for (const Perm& w : cert.witnesses)
      if (!commutes_with_all(w, theta.images())) return false;
    const auto reach = orbit_mask(cert.witnesses, n, 0);
    return std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
  }
  if (!cert.invariant || cert.invariant->ambient() != n) return false;
  const Subset& s = *cert.invariant;
  if (s.empty() || s.size() == n) return false;
  const CentralizerDescription desc(theta);
  for (const Perm& g : desc.generators()) {
    if (!commutes_with_all(g, theta.images())) return false;
    if (!(s.image(g) == s)) return false;
  }
  for (const Perm& g : desc.elements(1000))
    if (!(s.image(g) == s)) return false;
  return true;
}

Rational commutation_defect(const SoficApprox& theta, const Perm& sigma) {
  Rational worst = 0;
  for (const Perm& g : theta.images()) worst = std::max(worst, hs_dist_sq(conjugate(sigma, g), g));
  return worst;
}

std::vector<ApproxCommutant> approx_commutant_search(const SoficApprox& theta, const Rational& eps,
                                                     std::uint64_t seed, std::size_t budget) {
  if (eps < 0) throw PreconditionError("approx_commutant_search: eps must be >= 0");
  const std::size_t n = theta.dimension();
  const auto& gens = theta.images();
  std::vector<Perm> gen_inv;
  for (const Perm& g : gens) gen_inv.push_back(inverse(g));

  std::set<Perm> found;
  auto consider = [&](const std::vector<Point>& s) {
    Perm p = Perm::from_images_unchecked(s);
    if (found.count(p) == 0 && commutation_defect(theta, p) <= eps) found.insert(std::move(p));
  };
  // mismatch_g(σ) = #{y : g(σ(y)) != σ(g(y))}
  auto local = [&](const std::vector<Point>& s, std::size_t gi, Point y) {
    return static_cast<long>(gens[gi][s[y]] != s[gens[gi][y]]);
  };

  std::vector<std::vector<Point>> starts;
  {
    const Perm id = Perm::identity(n);
    starts.emplace_back(id.images().begin(), id.images().end());
    for (const Perm& g : gens) starts.emplace_back(g.images().begin(), g.images().end());
  }
  const std::size_t restarts = starts.size() + 4;
  const std::size_t steps = restarts ? budget / restarts : 0;
  Rng rng = make_rng(seed, 0x636f6d6dULL);
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<Point> s;
    if (r < starts.size()) {
      s = starts[r];
    } else {
      s.resize(n);
      for (Point x = 0; x < n; ++x) s[x] = x;
      for (std::size_t i = n; i > 1; --i) std::swap(s[i - 1], s[uniform_below(rng, i)]);
    }
    consider(s);
    if (n < 2) continue;
    for (std::size_t step = 0; step < steps; ++step) {
      const Point a = static_cast<Point>(uniform_below(rng, n));
      Point b = static_cast<Point>(uniform_below(rng, n - 1));
      if (b >= a) ++b;
      long delta = 0;
      std::vector<Point> touched;
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Point ys[4] = {a, b, gen_inv[gi][a], gen_inv[gi][b]};
        std::sort(ys, ys + 4);
        const auto end = std::unique(ys, ys + 4);
        for (auto* y = ys; y != end; ++y) delta -= local(s, gi, *y);
        std::swap(s[a], s[b]);
        for (auto* y = ys; y != end; ++y) delta += local(s, gi, *y);
        std::swap(s[a], s[b]);
      }
      if (delta <= 0 || uniform_unit(rng) < 0.05) {
        std::swap(s[a], s[b]);
        if (delta <= 0) consider(s);
      }
    }
  }
  std::vector<ApproxCommutant> out;
  for (const Perm& p : found) out.push_back({p, commutation_defect(theta, p)});
  return out;
}

MixingStatistic mixing_statistic(const SoficApprox& theta, const Subset& y, const Subset& z, std::size_t cap) {
  const std::size_t n = theta.dimension();
  if (y.ambient() != n || z.ambient() != n) throw PreconditionError("mixing_statistic: subset ambient mismatch");
  MixingStatistic out;
  out.value = 0;
  out.min_measure = Rational(Integer(std::min(y.size(), z.size())), Integer(n));
  const CentralizerDescription desc(theta);
  auto it = desc.enumerate();
  std::size_t best = 0;
  while (out.enumerated < cap) {
    auto u = it.next();
    if (!u) break;
    ++out.enumerated;
    const std::size_t overlap = intersection_size(y.image(*u), z);
    if (!out.best || overlap > best) {
      best = overlap;
      out.best = std::move(*u);
    }
  }
  out.exhaustive = Integer(out.enumerated) == desc.order();
  out.value = Rational(Integer(best), Integer(n));
  return out;
}

}  // namespace sofic
