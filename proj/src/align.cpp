#include "sofic/align.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

#include "sofic/convex.hpp"
#include "sofic/error.hpp"
#include "sofic/random.hpp"

namespace sofic {

Rational WeightScheme::weight(std::size_t index) const {
  return Rational(Integer(1), pow(Integer(4), static_cast<unsigned>(index + 1)));
}

Rational WeightScheme::tail_bound() const {
  return Rational(Integer(2), 3 * pow(Integer(4), static_cast<unsigned>(word_count())));
}

WeightScheme make_weight_scheme(std::size_t generator_count, std::size_t max_length) {
  return {max_length, enumerate_words(generator_count, max_length)};
}

std::string to_string(AlignMode mode) {
  switch (mode) {
    case AlignMode::exact: return "exact";
    case AlignMode::annealed: return "annealed";
    case AlignMode::constructed: return "constructed";
  }
  return "unknown";
}

double Alignment::distance() const { return std::sqrt(to_double(objective)); }

namespace {

void require_compatible(const SoficApprox& theta, const SoficApprox& phi) {
  if (theta.dimension() != phi.dimension())
    throw PreconditionError("alignment: dimensions differ (" + std::to_string(theta.dimension()) + " vs " +
                            std::to_string(phi.dimension()) + ")");
  if (theta.generators() != phi.generators()) throw PreconditionError("alignment: generator sets differ");
}

// Word images on both sides, as raw arrays.
struct WordImages {
  std::size_t n = 0;
  std::vector<std::vector<Point>> p, q, q_inv;

  WordImages(const SoficApprox& theta, const SoficApprox& phi, const WeightScheme& ws) : n(theta.dimension()) {
    for (const Word& w : ws.words) {
      const Perm pw = evaluate_word(theta, w), qw = evaluate_word(phi, w);
      p.emplace_back(pw.images().begin(), pw.images().end());
      q.emplace_back(qw.images().begin(), qw.images().end());
      const Perm qi = inverse(qw);
      q_inv.emplace_back(qi.images().begin(), qi.images().end());
    }
  }

  std::size_t words() const { return p.size(); }

  // #{y : P(σ(y)) != σ(Q(y))}, the mismatch count of P against σQσ⁻¹.
  std::size_t mismatches(std::size_t i, const std::vector<Point>& sigma) const {
    std::size_t count = 0;
    for (std::size_t y = 0; y < n; ++y) count += p[i][sigma[y]] != sigma[q[i][y]];
    return count;
  }
};

// Exact objective from per-word mismatch counts: (2/n) Σ 4^{-(i+1)} m_i.
Rational objective_from_counts(const std::vector<std::size_t>& counts, std::size_t n) {
  Integer acc = 0;
  for (std::size_t c : counts) acc = acc * 4 + c;
  return Rational(2 * acc, Integer(n) * pow(Integer(4), static_cast<unsigned>(counts.size())));
}

// Canonical base-4 form of Σ 4^{M-i} m_i, comparable lexicographically.
void normalize_counts(const std::vector<std::size_t>& counts, std::vector<std::size_t>& digits) {
  digits.assign(counts.size() + 1, 0);
  std::size_t carry = 0;
  for (std::size_t i = counts.size(); i-- > 0;) {
    const std::size_t v = counts[i] + carry;
    digits[i + 1] = v % 4;
    carry = v / 4;
  }
  digits[0] = carry;
}

}  // namespace

Rational conj_objective(const SoficApprox& theta, const SoficApprox& phi, const Perm& sigma,
                        const WeightScheme& ws) {
  require_compatible(theta, phi);
  if (sigma.size() != theta.dimension()) throw PreconditionError("conj_objective: conjugator dimension mismatch");
  const WordImages im(theta, phi, ws);
  const std::vector<Point> s(sigma.images().begin(), sigma.images().end());
  std::vector<std::size_t> counts(im.words());
  for (std::size_t i = 0; i < im.words(); ++i) counts[i] = im.mismatches(i, s);
  return objective_from_counts(counts, im.n);
}

Alignment conj_distance_exact(const SoficApprox& theta, const SoficApprox& phi, const WeightScheme& ws,
                              std::size_t cap) {
  require_compatible(theta, phi);
  const std::size_t n = theta.dimension();
  if (n > cap)
    throw BudgetError("conj_distance_exact: dimension " + std::to_string(n) + " exceeds exact cap " +
                      std::to_string(cap));
  const WordImages im(theta, phi, ws);
  std::vector<Point> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Point{0});
  std::vector<std::size_t> counts(im.words()), digits, best_digits;
  std::vector<Point> best;
  std::vector<std::size_t> best_counts;
  do {
    for (std::size_t i = 0; i < im.words(); ++i) counts[i] = im.mismatches(i, sigma);
    normalize_counts(counts, digits);
    if (best.empty() || digits < best_digits) {
      best = sigma;
      best_digits = digits;
      best_counts = counts;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {Perm::from_images_unchecked(std::move(best)), objective_from_counts(best_counts, n), ws.tail_bound(),
          AlignMode::exact};
}

namespace {

// Point signature: lengths of the cycles through the point under each
// generator image.
std::vector<std::vector<std::size_t>> point_signatures(const SoficApprox& theta) {
  std::vector<std::vector<std::size_t>> sig(theta.dimension());
  for (const Perm& p : theta.images())
    for (const auto& c : cycles(p))
      for (Point x : c) sig[x].push_back(c.size());
  return sig;
}

constexpr Point kUnset = ~Point{0};

// Completes a partial σ: unassigned Φ-points go to unused Θ-points of equal
// signature, classes shuffled by `rng` when given. Leftovers are paired in
// increasing order.
void signature_fill(std::vector<Point>& sigma, std::vector<bool>& target_used,
                    const std::vector<std::vector<std::size_t>>& theta_sig,
                    const std::vector<std::vector<std::size_t>>& phi_sig, Rng* rng) {
  const std::size_t n = theta_sig.size();
  std::map<std::vector<std::size_t>, std::vector<Point>> theta_classes, phi_classes;
  for (Point x = 0; x < n; ++x) {
    if (!target_used[x]) theta_classes[theta_sig[x]].push_back(x);
    if (sigma[x] == kUnset) phi_classes[phi_sig[x]].push_back(x);
  }
  std::vector<Point> left_phi;
  for (auto& [key, phis] : phi_classes) {
    auto it = theta_classes.find(key);
    std::vector<Point> thetas = it == theta_classes.end() ? std::vector<Point>{} : it->second;
    if (rng) {
      for (std::size_t i = thetas.size(); i > 1; --i) std::swap(thetas[i - 1], thetas[uniform_below(*rng, i)]);
    }
    for (std::size_t k = 0; k < phis.size(); ++k) {
      if (k < thetas.size()) {
        sigma[phis[k]] = thetas[k];
        target_used[thetas[k]] = true;
      } else {
        left_phi.push_back(phis[k]);
      }
    }
  }
  std::sort(left_phi.begin(), left_phi.end());
  Point next = 0;
  for (Point y : left_phi) {
    while (target_used[next]) ++next;
    sigma[y] = next;
    target_used[next] = true;
  }
}

// Start state built by propagation. For each Φ-orbit, largest first, every
// unused Θ-point of matching signature is tried as the image of a base point;
// σ is extended along Θ(g)σ = σΦ(g) in both directions and the candidate
// assigning the most points with the fewest conflicts is kept. Whatever stays
// unassigned is completed by signature.
std::vector<Point> propagation_start(const SoficApprox& theta, const SoficApprox& phi,
                                     const std::vector<std::vector<std::size_t>>& theta_sig,
                                     const std::vector<std::vector<std::size_t>>& phi_sig, Rng* rng) {
  constexpr std::size_t kMaxCandidates = 512;
  const std::size_t n = theta.dimension();
  std::vector<std::vector<Point>> theta_moves, phi_moves;
  for (std::size_t g = 0; g < theta.generators().size(); ++g) {
    for (const Perm& p : {theta.image(g), inverse(theta.image(g))}) theta_moves.emplace_back(p.images().begin(), p.images().end());
    for (const Perm& p : {phi.image(g), inverse(phi.image(g))}) phi_moves.emplace_back(p.images().begin(), p.images().end());
  }

  std::vector<Point> sigma(n, kUnset);
  std::vector<bool> used(n, false);
  std::vector<Point> trail;
  // Assigns base -> t and propagates; returns (assigned, conflicts). Undone
  // unless `keep`.
  auto trial = [&](Point base, Point t, bool keep) {
    trail.clear();
    sigma[base] = t;
    used[t] = true;
    trail.push_back(base);
    std::size_t conflicts = 0;
    for (std::size_t head = 0; head < trail.size(); ++head) {
      const Point y = trail[head], sy = sigma[y];
      for (std::size_t m = 0; m < phi_moves.size(); ++m) {
        const Point y2 = phi_moves[m][y], t2 = theta_moves[m][sy];
        if (sigma[y2] == kUnset) {
          if (used[t2]) {
            ++conflicts;
          } else {
            sigma[y2] = t2;
            used[t2] = true;
            trail.push_back(y2);
          }
        } else if (sigma[y2] != t2) {
          ++conflicts;
        }
      }
    }
    const std::pair<std::size_t, std::size_t> result{trail.size(), conflicts};
    if (!keep) {
      for (Point y : trail) {
        used[sigma[y]] = false;
        sigma[y] = kUnset;
      }
    }
    return result;
  };

  auto orbs = orbits(phi);
  std::stable_sort(orbs.begin(), orbs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& orb : orbs) {
    const Point base = rng ? orb[uniform_below(*rng, orb.size())] : orb.front();
    if (sigma[base] != kUnset) continue;
    std::vector<Point> cands;
    for (Point t = 0; t < n; ++t)
      if (!used[t] && theta_sig[t] == phi_sig[base]) cands.push_back(t);
    if (rng) {
      for (std::size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[uniform_below(*rng, i)]);
    }
    if (cands.size() > kMaxCandidates) cands.resize(kMaxCandidates);
    std::optional<Point> best;
    std::pair<std::size_t, std::size_t> best_score{0, 0};
    for (Point t : cands) {
      const auto score = trial(base, t, false);
      if (!best || score.first > best_score.first ||
          (score.first == best_score.first && score.second < best_score.second)) {
        best = t;
        best_score = score;
      }
      if (score.first == orb.size() && score.second == 0) break;
    }
    if (best) trial(base, *best, true);
  }
  signature_fill(sigma, used, theta_sig, phi_sig, rng);
  return sigma;
}

struct AnnealState {
  const WordImages& im;
  std::vector<double> weights;
  std::vector<Point> sigma;
  std::vector<std::size_t> counts;
  double value = 0;
  std::size_t nonzero = 0;

  AnnealState(const WordImages& images, std::vector<Point> start) : im(images), sigma(std::move(start)) {
    weights.resize(im.words());
    double w = 0.25;
    for (auto& x : weights) {
      x = w;
      w *= 0.25;
    }
    reset_counts();
  }

  void reset_counts() {
    counts.resize(im.words());
    value = 0;
    nonzero = 0;
    for (std::size_t i = 0; i < im.words(); ++i) {
      counts[i] = im.mismatches(i, sigma);
      value += weights[i] * static_cast<double>(counts[i]);
      nonzero += counts[i] != 0;
    }
  }

  // Terms touched by swapping σ(a), σ(b): y ∈ {a, b, Q⁻¹(a), Q⁻¹(b)}.
  std::size_t affected(std::size_t i, Point a, Point b, Point* out) const {
    Point cand[4] = {a, b, im.q_inv[i][a], im.q_inv[i][b]};
    std::size_t k = 0;
    for (Point y : cand) {
      bool dup = false;
      for (std::size_t t = 0; t < k; ++t) dup |= out[t] == y;
      if (!dup) out[k++] = y;
    }
    return k;
  }

  std::size_t local(std::size_t i, const Point* ys, std::size_t k) const {
    std::size_t c = 0;
    for (std::size_t t = 0; t < k; ++t) c += im.p[i][sigma[ys[t]]] != sigma[im.q[i][ys[t]]];
    return c;
  }

  // Fills per-word deltas and returns the weighted delta of the swap.
  double delta(Point a, Point b, std::vector<long>& d) {
    Point ys[4];
    d.resize(im.words());
    for (std::size_t i = 0; i < im.words(); ++i) {
      const std::size_t k = affected(i, a, b, ys);
      d[i] = -static_cast<long>(local(i, ys, k));
    }
    std::swap(sigma[a], sigma[b]);
    double total = 0;
    for (std::size_t i = 0; i < im.words(); ++i) {
      const std::size_t k = affected(i, a, b, ys);
      d[i] += static_cast<long>(local(i, ys, k));
      total += weights[i] * static_cast<double>(d[i]);
    }
    std::swap(sigma[a], sigma[b]);
    return total;
  }

  void apply(Point a, Point b, const std::vector<long>& d) {
    std::swap(sigma[a], sigma[b]);
    value = 0;
    nonzero = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      counts[i] = static_cast<std::size_t>(static_cast<long>(counts[i]) + d[i]);
      value += weights[i] * static_cast<double>(counts[i]);
      nonzero += counts[i] != 0;
    }
  }
};

constexpr std::uint64_t kAnnealStream = 0x616e6e65616cULL;

}  // namespace

Alignment conj_distance_anneal(const SoficApprox& theta, const SoficApprox& phi, const WeightScheme& ws,
                               std::uint64_t seed, const AnnealConfig& config) {
  require_compatible(theta, phi);
  const std::size_t n = theta.dimension();
  const WordImages im(theta, phi, ws);
  const auto theta_sig = point_signatures(theta), phi_sig = point_signatures(phi);

  std::vector<Point> best = propagation_start(theta, phi, theta_sig, phi_sig, nullptr);
  std::vector<std::size_t> best_counts(im.words());
  for (std::size_t i = 0; i < im.words(); ++i) best_counts[i] = im.mismatches(i, best);
  std::vector<std::size_t> best_digits, digits;
  normalize_counts(best_counts, best_digits);

  auto is_zero = [](const std::vector<std::size_t>& c) {
    return std::all_of(c.begin(), c.end(), [](std::size_t v) { return v == 0; });
  };

  if (n > 1 && config.steps > 0 && config.restarts > 0 && !is_zero(best_counts)) {
    // Initial temperature: objective spread over random conjugators.
    Rng trng = make_rng(seed, kAnnealStream, ~std::uint64_t{0});
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = 0; k < std::max<std::size_t>(config.temperature_samples, 2); ++k) {
      std::vector<Point> s(n);
      std::iota(s.begin(), s.end(), Point{0});
      for (std::size_t i = n; i > 1; --i) std::swap(s[i - 1], s[uniform_below(trng, i)]);
      const AnnealState st(im, std::move(s));
      lo = std::min(lo, st.value);
      hi = std::max(hi, st.value);
    }
    const double t0 = hi > lo ? hi - lo : 1e-3;

    std::vector<long> d;
    for (std::size_t restart = 0; restart < config.restarts; ++restart) {
      Rng rng = make_rng(seed, kAnnealStream, restart);
      AnnealState st(im, propagation_start(theta, phi, theta_sig, phi_sig, restart == 0 ? nullptr : &rng));
      std::vector<Point> run_best = st.sigma;
      std::vector<std::size_t> run_best_counts = st.counts;
      double run_best_value = st.value;
      double temp = t0;
      for (std::size_t step = 0; step < config.steps && st.nonzero > 0; ++step, temp *= config.cooling) {
        const Point a = static_cast<Point>(uniform_below(rng, n));
        Point b = static_cast<Point>(uniform_below(rng, n - 1));
        if (b >= a) ++b;
        const double delta = st.delta(a, b, d);
        const double u = uniform_unit(rng);
        if (delta <= 0 || u < std::exp(-delta / temp)) {
          st.apply(a, b, d);
          if (st.value < run_best_value || st.nonzero == 0) {
            run_best_value = st.value;
            run_best = st.sigma;
            run_best_counts = st.counts;
          }
        }
      }
      normalize_counts(run_best_counts, digits);
      if (digits < best_digits) {
        best_digits = digits;
        best = run_best;
        best_counts = run_best_counts;
      }
      if (is_zero(best_counts)) break;
    }
  }
  return {Perm::from_images_unchecked(std::move(best)), objective_from_counts(best_counts, n), ws.tail_bound(),
          AlignMode::annealed};
}

Equalized equalize_dimensions(const SoficApprox& theta, const SoficApprox& phi, std::size_t cap) {
  const std::size_t n = theta.dimension(), m = phi.dimension();
  const std::size_t g = std::gcd(n, m);
  if (n / g > cap / m) throw BudgetError("equalize_dimensions: lcm(" + std::to_string(n) + ", " +
                                         std::to_string(m) + ") exceeds cap " + std::to_string(cap));
  const std::size_t l = n / g * m;
  return {amplify(theta, l / n), amplify(phi, l / m), l / n, l / m};
}

Perm block_reorder_conjugator(const std::vector<std::size_t>& left_block_sizes,
                              const std::vector<std::size_t>& order) {
  const std::size_t k = left_block_sizes.size();
  if (order.size() != k) throw PreconditionError("block reorder: order length mismatch");
  std::vector<std::size_t> left_offset(k, 0);
  for (std::size_t i = 1; i < k; ++i) left_offset[i] = left_offset[i - 1] + left_block_sizes[i - 1];
  std::vector<Point> img;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t b = order[j];
    for (std::size_t x = 0; x < left_block_sizes.at(b); ++x) img.push_back(static_cast<Point>(left_offset[b] + x));
  }
  return Perm(std::move(img));
}

Perm split_amplification_conjugator(std::size_t n, std::size_t r1, std::size_t r2) {
  const std::size_t r = r1 + r2;
  std::vector<Point> img(n * r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < r; ++c)
      img[i * r + c] = static_cast<Point>(c < r1 ? i * r1 + c : n * r1 + i * r2 + (c - r1));
  return Perm(std::move(img));
}

Perm blockwise_conjugator(const std::vector<Perm>& sigmas, const std::vector<std::size_t>& multiplicities) {
  if (sigmas.empty() || sigmas.size() != multiplicities.size())
    throw PreconditionError("blockwise conjugator: count mismatch");
  Perm acc = tensor(sigmas[0], Perm::identity(multiplicities[0]));
  for (std::size_t i = 1; i < sigmas.size(); ++i)
    acc = direct_sum(acc, tensor(sigmas[i], Perm::identity(multiplicities[i])));
  return acc;
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

namespace {

AxiomCheck zero_check(std::string axiom, std::string instance, const SoficApprox& left, const SoficApprox& right,
                      const Perm& sigma, const WeightScheme& ws) {
  AxiomCheck c;
  c.axiom = std::move(axiom);
  c.instance = std::move(instance);
  c.conjugator = sigma;
  c.bound = 0;
  c.objective = conj_objective(left, right, sigma, ws);
  c.passed = c.objective == 0;
  if (!c.passed) c.detail = "constructed conjugator leaves objective " + to_string(c.objective);
  return c;
}

// Labels for points of (⊕_i x_i ⊗ 1_{a_i}) ⊗ 1_u: (block, base point, copy)
// with copy = c*u + o ranging over [0, a_i u).
struct Label {
  std::size_t block, point, copy;
  auto operator<=>(const Label&) const = default;
};

std::vector<Label> amplified_labels(const CombinePlan& plan, std::size_t u) {
  std::vector<Label> labels(plan.total_dimension * u);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < plan.dims.size(); ++i) {
    const std::size_t a = plan.multiplicities[i];
    for (std::size_t p = 0; p < plan.dims[i]; ++p)
      for (std::size_t c = 0; c < a; ++c)
        for (std::size_t o = 0; o < u; ++o) labels[(offset + p * a + c) * u + o] = {i, p, c * u + o};
    offset += plan.block_size(i);
  }
  return labels;
}

}  // namespace

AxiomReport axiom_suite(const std::vector<SoficApprox>& instances, const AxiomSuiteConfig& config) {
  if (instances.size() < 2) throw PreconditionError("axiom_suite: needs at least two approximations");
  for (const auto& x : instances)
    if (x.generators() != instances[0].generators())
      throw PreconditionError("axiom_suite: instances must share generators");
  const SoficApprox& theta = instances[0];
  const SoficApprox& phi = instances[1];
  const SoficApprox& psi = instances[instances.size() > 2 ? 2 : 0];
  const WeightScheme ws = make_weight_scheme(theta.generators().size(), config.max_length);
  const Rational one = 1;
  AxiomReport report;

  // (1) commutativity: (t,Θ),(1-t,Φ),(.,Ψ) against a rotated order.
  {
    const Rational t = config.t, rest = (one - t) / 2;
    const std::vector<SoficApprox> parts{theta, phi, psi};
    const std::vector<Rational> w{t, rest, rest};
    const CombinePlan plan =
        approximate_weights(WeightVector(w), {theta.dimension(), phi.dimension(), psi.dimension()}, config.cap);
    const SoficApprox left = combine_with_plan(parts, plan);
    const std::vector<std::size_t> order{2, 0, 1};
    std::vector<SoficApprox> rparts;
    std::vector<Rational> rw;
    std::vector<std::size_t> rdims, rmult;
    for (std::size_t j : order) {
      rparts.push_back(parts[j]);
      rw.push_back(w[j]);
      rdims.push_back(plan.dims[j]);
      rmult.push_back(plan.multiplicities[j]);
    }
    const SoficApprox right = combine_with_plan(rparts, make_plan(WeightVector(rw), rdims, rmult));
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < parts.size(); ++i) sizes.push_back(plan.block_size(i));
    report.checks.push_back(zero_check("commutativity", "t(Θ,Φ,Ψ) vs rotated order", left, right,
                                       block_reorder_conjugator(sizes, order), ws));
  }

  // (2) linearity: amplify(Θ,2) vs Θ⊕Θ, then (t1,Θ),(t2,Θ),(t3,Φ) vs (t1+t2,Θ),(t3,Φ).
  {
    const SoficApprox left = direct_sum_approx(theta, theta);
    const SoficApprox right = amplify(theta, 2);
    report.checks.push_back(zero_check("linearity", "Θ⊕Θ vs Θ⊗1_2", left, right,
                                       split_amplification_conjugator(theta.dimension(), 1, 1), ws));

    const Rational t1 = config.t / 2, t2 = config.t / 2, t3 = one - config.t;
    const CombinePlan plan = approximate_weights(WeightVector({t1, t2, t3}),
                                                 {theta.dimension(), theta.dimension(), phi.dimension()}, config.cap);
    const SoficApprox three = combine_with_plan({theta, theta, phi}, plan);
    const std::size_t r1 = plan.multiplicities[0], r2 = plan.multiplicities[1];
    const CombinePlan merged =
        make_plan(WeightVector({t1 + t2, t3}), {theta.dimension(), phi.dimension()}, {r1 + r2, plan.multiplicities[2]});
    const SoficApprox two = combine_with_plan({theta, phi}, merged);
    const Perm head = split_amplification_conjugator(theta.dimension(), r1, r2);
    const Perm sigma = direct_sum(head, Perm::identity(plan.block_size(2)));
    report.checks.push_back(zero_check("linearity", "(t/2,Θ)+(t/2,Θ)+(1-t,Φ) vs (t,Θ)+(1-t,Φ)", three, two, sigma, ws));
  }

  // (3) scalar identity
  {
    const auto [combined, plan] = convex_combine({{one, theta}}, std::max(config.cap, theta.dimension()));
    report.checks.push_back(zero_check("scalar identity", "1·Θ vs Θ", theta, combined,
                                       Perm::identity(theta.dimension()), ws));
  }

  // (5) algebraic compatibility: outer(t(tΘ+(1-t)Φ) + (1-t)(sΨ+(1-s)Θ)) vs flat.
  {
    const Rational t = config.t, s = config.s, o = config.outer;
    const CombinePlan p1 = approximate_weights(WeightVector({t, one - t}), {theta.dimension(), phi.dimension()}, config.cap);
    const CombinePlan p2 = approximate_weights(WeightVector({s, one - s}), {psi.dimension(), theta.dimension()}, config.cap);
    const SoficApprox inner1 = combine_with_plan({theta, phi}, p1);
    const SoficApprox inner2 = combine_with_plan({psi, theta}, p2);
    const CombinePlan po =
        approximate_weights(WeightVector({o, one - o}), {inner1.dimension(), inner2.dimension()}, config.cap);
    const SoficApprox nested = combine_with_plan({inner1, inner2}, po);
    const std::size_t ro = po.multiplicities[0], qo = po.multiplicities[1];
    const std::vector<Rational> flat_w{po.achieved[0] * p1.achieved[0], po.achieved[0] * p1.achieved[1],
                                       po.achieved[1] * p2.achieved[0], po.achieved[1] * p2.achieved[1]};
    const CombinePlan pf = make_plan(WeightVector(flat_w),
                                     {theta.dimension(), phi.dimension(), psi.dimension(), theta.dimension()},
                                     {p1.multiplicities[0] * ro, p1.multiplicities[1] * ro,
                                      p2.multiplicities[0] * qo, p2.multiplicities[1] * qo});
    const SoficApprox flat = combine_with_plan({theta, phi, psi, theta}, pf);
    AxiomCheck c = zero_check("algebraic compatibility", "nested vs flat combination", nested, flat,
                              Perm::identity(nested.dimension()), ws);
    if (pf.max_error != 0) {
      c.passed = false;
      c.detail = "flat plan does not realize the product weights";
    }
    report.checks.push_back(std::move(c));
  }

  // (4) second inequality: Σ t_i Θ_i vs Σ t_i Φ_i with blockwise conjugators.
  {
    const Equalized a = equalize_dimensions(theta, phi);
    const Equalized b = equalize_dimensions(phi, psi);
    auto align = [&](const SoficApprox& x, const SoficApprox& y, std::uint64_t stream) {
      return x.dimension() <= config.exact_cap ? conj_distance_exact(x, y, ws, config.exact_cap)
                                              : conj_distance_anneal(x, y, ws, derive_seed(config.seed, stream),
                                                                     config.anneal);
    };
    const Alignment al = align(a.theta, a.phi, 1), bl = align(b.theta, b.phi, 2);
    const Rational t = config.t;
    const CombinePlan plan =
        approximate_weights(WeightVector({t, one - t}), {a.theta.dimension(), b.theta.dimension()}, config.cap);
    const SoficApprox left = combine_with_plan({a.theta, b.theta}, plan);
    const SoficApprox right = combine_with_plan({a.phi, b.phi}, plan);
    AxiomCheck c;
    c.axiom = "metric compatibility (blockwise)";
    c.instance = "t(Θ,Φ) vs t(Φ,Ψ) after equalizing";
    c.conjugator = blockwise_conjugator({al.conjugator, bl.conjugator}, plan.multiplicities);
    c.objective = conj_objective(left, right, c.conjugator, ws);
    c.bound = plan.achieved[0] * al.objective + plan.achieved[1] * bl.objective;
    c.passed = c.objective <= c.bound;
    c.detail = "blockwise objectives " + to_string(al.objective) + ", " + to_string(bl.objective);
    report.checks.push_back(std::move(c));
  }

  // (4) first inequality: d(tΘ+(1-t)Φ, sΘ+(1-s)Φ) <= C|t-s|*2 + realization error.
  {
    const Rational t = config.t, s = config.s;
    const std::vector<std::size_t> dims{theta.dimension(), phi.dimension()};
    const CombinePlan pt = approximate_weights(WeightVector({t, one - t}), dims, config.cap);
    const CombinePlan ps = approximate_weights(WeightVector({s, one - s}), dims, config.cap);
    const SoficApprox left = combine_with_plan({theta, phi}, pt);
    const SoficApprox right = combine_with_plan({theta, phi}, ps);
    const Equalized eq = equalize_dimensions(left, right);
    const auto left_labels = amplified_labels(pt, eq.theta_factor);
    const auto right_labels = amplified_labels(ps, eq.phi_factor);
    std::map<Label, Point> left_index;
    for (Point x = 0; x < left_labels.size(); ++x) left_index[left_labels[x]] = x;
    constexpr Point unset = ~Point{0};
    std::vector<Point> sigma(right_labels.size(), unset);
    std::vector<bool> used(left_labels.size(), false);
    for (Point y = 0; y < right_labels.size(); ++y) {
      auto it = left_index.find(right_labels[y]);
      if (it != left_index.end()) {
        sigma[y] = it->second;
        used[it->second] = true;
      }
    }
    Point next = 0;
    for (auto& v : sigma) {
      if (v != unset) continue;
      while (used[next]) ++next;
      v = next;
      used[next] = true;
    }
    AxiomCheck c;
    c.axiom = "metric compatibility (weights)";
    c.instance = "tΘ+(1-t)Φ vs sΘ+(1-s)Φ";
    c.conjugator = Perm(std::move(sigma));
    c.objective = conj_objective(eq.theta, eq.phi, c.conjugator, ws);
    const Rational spread = 2 * abs(t - s);
    const Rational bound = config.metric_constant * spread + pt.max_error + ps.max_error;
    c.bound = bound;
    c.passed = c.objective <= bound * bound;
    c.detail = "distance " + std::to_string(std::sqrt(to_double(c.objective))) + " vs bound " +
               std::to_string(to_double(bound));
    if (spread != 0) report.empirical_metric_constant = std::sqrt(to_double(c.objective)) / to_double(spread);
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace sofic
