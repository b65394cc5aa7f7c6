#include "sofic/rounding.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sofic/error.hpp"
#include "sofic/random.hpp"

namespace sofic {

PointMap::PointMap(std::vector<Point> f) : f_(std::move(f)) {
  for (std::size_t x = 0; x < f_.size(); ++x)
    if (f_[x] >= f_.size())
      throw PreconditionError("point map value " + std::to_string(f_[x]) + " out of range at " +
                              std::to_string(x));
}

PatchSpec::PatchSpec(std::size_t n, std::vector<std::vector<Point>> blocks, std::vector<Perm> perms)
    : n_(n), blocks_(std::move(blocks)), perms_(std::move(perms)) {
  if (blocks_.size() != perms_.size()) throw PreconditionError("patch: block/permutation count mismatch");
  std::vector<bool> covered(n_, false);
  std::size_t total = 0;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (perms_[i].size() != n_) throw PreconditionError("patch: permutation dimension mismatch");
    for (Point x : blocks_[i]) {
      if (x >= n_) throw PreconditionError("patch: block point out of range");
      if (covered[x]) throw PreconditionError("patch: blocks overlap at " + std::to_string(x));
      covered[x] = true;
      ++total;
    }
  }
  if (total != n_) throw PreconditionError("patch: blocks do not cover all points");
}

PointMap patchwork(const PatchSpec& spec) {
  std::vector<Point> f(spec.size());
  for (std::size_t i = 0; i < spec.blocks().size(); ++i)
    for (Point x : spec.blocks()[i]) f[x] = spec.perms()[i][x];
  return PointMap(std::move(f));
}

std::size_t deficit(const PointMap& f) {
  std::vector<bool> hit(f.size(), false);
  std::size_t distinct = 0;
  for (Point y : f.values())
    if (!hit[y]) {
      hit[y] = true;
      ++distinct;
    }
  return f.size() - distinct;
}

Rounding round_to_permutation(const PointMap& f) {
  const std::size_t n = f.size();
  constexpr Point unset = ~Point{0};
  std::vector<Point> w(n, unset);
  std::vector<bool> column_used(n, false);
  for (Point x = 0; x < n; ++x) {
    if (!column_used[f[x]]) {
      column_used[f[x]] = true;
      w[x] = f[x];
    }
  }
  std::size_t disagreements = 0;
  Point next_column = 0;
  for (Point x = 0; x < n; ++x) {
    if (w[x] != unset) continue;
    while (column_used[next_column]) ++next_column;
    column_used[next_column] = true;
    w[x] = next_column;
    ++disagreements;
  }
  return {Perm::from_images_unchecked(std::move(w)), disagreements};
}

SubsetFamily::SubsetFamily(std::size_t n, std::vector<Subset> sets) : n_(n), sets_(std::move(sets)) {
  for (const Subset& s : sets_)
    if (s.ambient() != n_) throw PreconditionError("subset family: ambient size mismatch");
}

std::vector<std::size_t> SubsetFamily::multiplicities() const {
  std::vector<std::size_t> a(n_, 0);
  for (const Subset& s : sets_)
    for (Point x : s.points()) ++a[x];
  return a;
}

std::size_t family_cost(const SubsetFamily& fam, const Subset& a) {
  std::size_t cost = 0;
  for (const Subset& s : fam.sets()) cost += symmetric_difference_size(a, s);
  return cost;
}

MajoritySet majority_set(const SubsetFamily& fam) {
  if (fam.count() < 1) throw PreconditionError("majority_set: empty family");
  const std::size_t r = fam.count();
  const auto a = fam.multiplicities();
  std::vector<bool> mask(fam.ambient(), false);
  std::size_t cost = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mask[i] = r < 2 * a[i];
    cost += std::min(a[i], r - a[i]);
  }
  return {Subset::from_mask(mask), cost};
}

namespace {

// d[k][j] = |A_k △ A_j|
std::vector<std::vector<std::size_t>> distance_table(const SubsetFamily& fam) {
  const std::size_t r = fam.count();
  std::vector<std::vector<std::size_t>> d(r, std::vector<std::size_t>(r, 0));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = k + 1; j < r; ++j) d[k][j] = d[j][k] = symmetric_difference_size(fam[k], fam[j]);
  return d;
}

}  // namespace

std::size_t copy_shift_cost(const SubsetFamily& fam, const Perm& p) {
  if (p.size() != fam.count()) throw PreconditionError("R(p): permutation size differs from family size");
  std::size_t total = 0;
  for (std::size_t j = 0; j < fam.count(); ++j) total += symmetric_difference_size(fam[p[j]], fam[j]);
  return total;
}

std::size_t averaging_bound(const SubsetFamily& fam) {
  const std::size_t r = fam.count();
  std::size_t numerator = 0;
  for (std::size_t a : fam.multiplicities()) numerator += 2 * a * (r - a);
  return (numerator + r - 1) / r;
}

Witness witness_permutation(const SubsetFamily& fam, std::uint64_t seed, std::size_t budget) {
  const std::size_t r = fam.count();
  if (r < 1) throw PreconditionError("witness_permutation: empty family");
  const auto d = distance_table(fam);
  auto cost_of = [&](const std::vector<Point>& p) {
    std::size_t total = 0;
    for (std::size_t j = 0; j < r; ++j) total += d[p[j]][j];
    return total;
  };

  if (r <= 8) {
    std::vector<Point> p(r);
    std::iota(p.begin(), p.end(), Point{0});
    std::vector<Point> best = p;
    std::size_t best_cost = cost_of(p);
    while (std::next_permutation(p.begin(), p.end())) {
      const std::size_t c = cost_of(p);
      if (c > best_cost) {
        best_cost = c;
        best = p;
      }
    }
    return {Perm::from_images_unchecked(std::move(best)), best_cost, true};
  }
  if (budget == 0) throw BudgetError("witness_permutation: r > 8 requires a positive sampling budget");

  // Method of conditional expectations over a uniformly random p: fixing
  // p(j) to maximize the conditional mean never drops below the average.
  std::vector<Point> p(r);
  std::vector<bool> used(r, false);
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t best_k = r;
    long double best_val = -1;
    const std::size_t remaining = r - j - 1;
    for (std::size_t k = 0; k < r; ++k) {
      if (used[k]) continue;
      long double val = static_cast<long double>(d[k][j]);
      if (remaining > 0) {
        long double rest = 0;
        for (std::size_t t = j + 1; t < r; ++t) {
          std::size_t sum = 0;
          for (std::size_t u = 0; u < r; ++u)
            if (!used[u] && u != k) sum += d[u][t];
          rest += static_cast<long double>(sum) / static_cast<long double>(remaining);
        }
        val += rest;
      }
      if (val > best_val) {
        best_val = val;
        best_k = k;
      }
    }
    p[j] = static_cast<Point>(best_k);
    used[best_k] = true;
  }
  std::size_t best_cost = cost_of(p);

  Rng rng = make_rng(seed, 0x5769746eULL);
  for (std::size_t step = 0; step < budget; ++step) {
    const std::size_t a = uniform_below(rng, r), b = uniform_below(rng, r);
    if (a == b) continue;
    const std::size_t before = d[p[a]][a] + d[p[b]][b];
    const std::size_t after = d[p[b]][a] + d[p[a]][b];
    if (after > before) {
      std::swap(p[a], p[b]);
      best_cost = best_cost + after - before;
    }
  }
  return {Perm::from_images_unchecked(std::move(p)), best_cost, false};
}

Blockified blockify(const Subset& s, std::size_t n, std::size_t r) {
  if (n < 1 || r < 1) throw PreconditionError("blockify: n and r must be >= 1");
  if (s.ambient() != n * r)
    throw PreconditionError("blockify: subset lives in " + std::to_string(s.ambient()) +
                            " points, expected n*r = " + std::to_string(n * r));
  std::vector<Subset> slices;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<bool> mask(n, false);
    for (std::size_t i = 0; i < n; ++i) mask[i] = s.contains(static_cast<Point>(i * r + j));
    slices.push_back(Subset::from_mask(mask));
  }
  SubsetFamily fam(n, slices);
  MajoritySet maj = majority_set(fam);
  std::vector<bool> t(n * r, false);
  for (Point i : maj.set.points())
    for (std::size_t j = 0; j < r; ++j) t[i * r + j] = true;
  Subset tset = Subset::from_mask(t);
  const std::size_t dist = symmetric_difference_size(tset, s);
  return {std::move(tset), std::move(maj), std::move(slices), dist};
}

Perm copy_permutation(std::size_t n, const Perm& p) { return tensor(Perm::identity(n), p); }

}  // namespace sofic
