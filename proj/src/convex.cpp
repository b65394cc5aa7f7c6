#include "sofic/convex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sofic/error.hpp"

namespace sofic {

SoficApprox amplify(const SoficApprox& theta, std::size_t r) {
  if (r < 1) throw PreconditionError("amplify: r must be >= 1");
  if (r == 1) return theta;
  const Perm id = Perm::identity(r);
  std::vector<Perm> images;
  for (const Perm& p : theta.images()) images.push_back(tensor(p, id));
  return SoficApprox(theta.dimension() * r, theta.generators(), std::move(images), theta.relators());
}

SoficApprox direct_sum_approx(const SoficApprox& theta, const SoficApprox& phi) {
  if (theta.generators() != phi.generators())
    throw PreconditionError("direct_sum: generator sets differ");
  std::vector<Perm> images;
  for (std::size_t g = 0; g < theta.generators().size(); ++g)
    images.push_back(direct_sum(theta.image(g), phi.image(g)));
  std::optional<std::vector<Word>> relators = theta.relators();
  if (phi.relators()) {
    if (!relators) relators.emplace();
    for (const Word& w : *phi.relators())
      if (std::find(relators->begin(), relators->end(), w) == relators->end()) relators->push_back(w);
  }
  return SoficApprox(theta.dimension() + phi.dimension(), theta.generators(), std::move(images),
                     std::move(relators));
}

SoficApprox tensor_power(const SoficApprox& theta, std::size_t m, std::size_t cap) {
  if (m < 1) throw PreconditionError("tensor_power: m must be >= 1");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (dim > cap / theta.dimension())
      throw BudgetError("tensor_power: dimension " + std::to_string(theta.dimension()) + "^" +
                        std::to_string(m) + " exceeds cap " + std::to_string(cap));
    dim *= theta.dimension();
  }
  std::vector<Perm> images;
  for (const Perm& p : theta.images()) {
    Perm acc = p;
    for (std::size_t i = 1; i < m; ++i) acc = tensor(acc, p);
    images.push_back(std::move(acc));
  }
  return SoficApprox(dim, theta.generators(), std::move(images), theta.relators());
}

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw PreconditionError("weight vector is empty");
  Rational total = 0;
  for (const Rational& w : weights_) {
    if (w < 0) throw PreconditionError("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw PreconditionError("weights sum to " + to_string(total) + ", not 1");
}

std::size_t CombinePlan::block_offset(std::size_t i) const {
  std::size_t offset = 0;
  for (std::size_t j = 0; j < i; ++j) offset += block_size(j);
  return offset;
}

CombinePlan make_plan(const WeightVector& weights, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& multiplicities) {
  if (dims.size() != weights.size() || multiplicities.size() != weights.size())
    throw PreconditionError("plan: weights, dimensions and multiplicities differ in length");
  CombinePlan plan;
  plan.requested = weights.values();
  plan.dims = dims;
  plan.multiplicities = multiplicities;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || multiplicities[i] < 1) throw PreconditionError("plan: dimensions and multiplicities must be >= 1");
    plan.total_dimension += dims[i] * multiplicities[i];
  }
  plan.max_error = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    Rational a(Integer(dims[i] * multiplicities[i]), Integer(plan.total_dimension));
    plan.max_error = std::max(plan.max_error, abs(a - plan.requested[i]));
    plan.achieved.push_back(std::move(a));
  }
  return plan;
}

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// A nonnegative fraction num/den with den > 0.
struct Frac {
  i128 num = 0;
  i128 den = 1;
  friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
};

constexpr long long kMaxDenominator = 1'000'000'000;

}  // namespace

CombinePlan approximate_weights(const WeightVector& weights, const std::vector<std::size_t>& dims,
                                std::size_t cap) {
  const std::size_t k = weights.size();
  if (dims.size() != k) throw PreconditionError("approximate_weights: weight/dimension count mismatch");
  std::size_t min_total = 0;
  for (std::size_t d : dims) {
    if (d < 1) throw PreconditionError("approximate_weights: dimensions must be >= 1");
    min_total += d;
  }
  if (cap < min_total)
    throw BudgetError("approximate_weights: cap " + std::to_string(cap) +
                      " is below the minimum total dimension " + std::to_string(min_total));
  if (cap > 100'000'000) throw BudgetError("approximate_weights: cap above 1e8");

  std::vector<i128> p(k), q(k), m(k);
  for (std::size_t j = 0; j < k; ++j) {
    const Integer& den = denominator(weights[j]);
    if (den > kMaxDenominator) throw PreconditionError("approximate_weights: weight denominator too large");
    p[j] = numerator(weights[j]).convert_to<long long>();
    q[j] = den.convert_to<long long>();
    m[j] = static_cast<i128>(dims[j]);
  }

  auto error_of = [&](const std::vector<i128>& r, i128 total) {
    Frac worst;
    for (std::size_t j = 0; j < k; ++j) {
      i128 diff = m[j] * r[j] * q[j] - p[j] * total;
      if (diff < 0) diff = -diff;
      const Frac e{diff, q[j] * total};
      if (worst < e) worst = e;
    }
    return worst;
  };

  // Incumbent bound: all ones, or proportional rounding at the cap.
  Frac bound;
  {
    std::vector<i128> ones(k, 1);
    bound = error_of(ones, static_cast<i128>(min_total));
    std::vector<i128> r(k);
    i128 total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      r[j] = std::max<i128>(1, floor_div(p[j] * static_cast<i128>(cap), q[j] * m[j]));
      total += m[j] * r[j];
    }
    if (total <= static_cast<i128>(cap)) {
      const Frac e = error_of(r, total);
      if (e < bound) bound = e;
    }
  }

  bool found = false;
  Frac best;
  std::vector<i128> best_r;
  std::vector<i128> lo(k), hi(k), r(k);

  for (i128 total = static_cast<i128>(min_total); total <= static_cast<i128>(cap); ++total) {
    const Frac& e = found ? best : bound;
    // |m_j r_j / D - p_j/q_j| <= e  <=>  r_j in [(p_j/q_j - e) D/m_j, (p_j/q_j + e) D/m_j]
    bool empty = false;
    for (std::size_t j = 0; j < k; ++j) {
      const i128 den = q[j] * e.den * m[j];
      const i128 base = p[j] * e.den * total, spread = e.num * q[j] * total;
      lo[j] = std::max<i128>(1, ceil_div(base - spread, den));
      hi[j] = floor_div(base + spread, den);
      if (lo[j] > hi[j]) empty = true;
    }
    if (empty) continue;
    for (std::size_t j = 0; j + 1 < k; ++j) r[j] = lo[j];
    // Lex order over the free coordinates r_0..r_{k-2}; r_{k-1} is implied.
    auto advance = [&] {
      for (std::size_t j = k - 1; j-- > 0;) {
        if (r[j] < hi[j]) {
          ++r[j];
          for (std::size_t t = j + 1; t + 1 < k; ++t) r[t] = lo[t];
          return true;
        }
      }
      return false;
    };
    do {
      i128 used = 0;
      for (std::size_t j = 0; j + 1 < k; ++j) used += m[j] * r[j];
      const i128 rest = total - used;
      if (rest <= 0 || rest % m[k - 1] != 0) continue;
      r[k - 1] = rest / m[k - 1];
      if (r[k - 1] < lo[k - 1] || r[k - 1] > hi[k - 1]) continue;
      const Frac err = error_of(r, total);
      if (!found || err < best) {
        found = true;
        best = err;
        best_r = r;
      }
    } while (advance());
  }
  if (!found) throw BudgetError("approximate_weights: no admissible multiplicities");
  std::vector<std::size_t> mult(k);
  for (std::size_t j = 0; j < k; ++j) mult[j] = static_cast<std::size_t>(best_r[j]);
  return make_plan(weights, dims, mult);
}

SoficApprox combine_with_plan(const std::vector<SoficApprox>& parts, const CombinePlan& plan) {
  if (parts.empty() || parts.size() != plan.multiplicities.size())
    throw PreconditionError("combine: part count differs from plan");
  SoficApprox acc = amplify(parts[0], plan.multiplicities[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = direct_sum_approx(acc, amplify(parts[i], plan.multiplicities[i]));
  return acc;
}

std::pair<SoficApprox, CombinePlan> convex_combine(
    const std::vector<std::pair<Rational, SoficApprox>>& pairs, std::size_t cap) {
  if (pairs.empty()) throw PreconditionError("convex_combine: no summands");
  std::vector<Rational> w;
  std::vector<std::size_t> dims;
  std::vector<SoficApprox> parts;
  for (const auto& [lambda, theta] : pairs) {
    if (theta.generators() != pairs.front().second.generators())
      throw PreconditionError("convex_combine: generator sets differ");
    w.push_back(lambda);
    dims.push_back(theta.dimension());
    parts.push_back(theta);
  }
  CombinePlan plan = approximate_weights(WeightVector(std::move(w)), dims, cap);
  SoficApprox combined = combine_with_plan(parts, plan);
  return {std::move(combined), std::move(plan)};
}

Subset block_subset(const CombinePlan& plan, std::size_t i) {
  const std::size_t offset = plan.block_offset(i);
  std::vector<Point> pts(plan.block_size(i));
  std::iota(pts.begin(), pts.end(), static_cast<Point>(offset));
  return Subset(plan.total_dimension, std::move(pts));
}

std::vector<std::vector<Point>> orbits(const SoficApprox& theta) {
  const std::size_t n = theta.dimension();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& p : theta.images())
    for (Point x = 0; x < n; ++x) {
      Point a = find(x), b = find(p[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<Point>> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (Point x = 0; x < n; ++x) {
    const Point root = find(x);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(x);
  }
  return out;
}

SoficApprox cut(const SoficApprox& theta, const Subset& s) {
  if (s.ambient() != theta.dimension()) throw PreconditionError("cut: subset ambient dimension differs");
  if (s.empty()) throw PreconditionError("cut: subset is empty");
  std::vector<Point> index(theta.dimension(), 0);
  for (std::size_t k = 0; k < s.size(); ++k) index[s.points()[k]] = static_cast<Point>(k);
  std::vector<Perm> images;
  for (std::size_t g = 0; g < theta.generators().size(); ++g) {
    const Perm& p = theta.image(g);
    std::vector<Point> img(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Point x = s.points()[k];
      if (!s.contains(p[x]))
        throw PreconditionError("cut: subset not invariant: generator '" + theta.generators()[g] +
                                "' maps " + std::to_string(x) + " to " + std::to_string(p[x]));
      img[k] = index[p[x]];
    }
    images.push_back(Perm::from_images_unchecked(std::move(img)));
  }
  return SoficApprox(s.size(), theta.generators(), std::move(images), theta.relators());
}

Perm cut_recovery_conjugator(const Subset& s) {
  std::vector<Point> img = s.points();
  const auto rest = s.complement().points();
  img.insert(img.end(), rest.begin(), rest.end());
  return Perm(std::move(img));
}

}  // namespace sofic
