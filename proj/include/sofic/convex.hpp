#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sofic/group.hpp"
#include "sofic/subset.hpp"

namespace sofic {

// Amplification Θ⊗1_r: each image becomes tensor(Θ(g), id_r).
SoficApprox amplify(const SoficApprox& theta, std::size_t r);

// Blockwise direct sum. Generator lists must agree; relator lists are merged.
SoficApprox direct_sum_approx(const SoficApprox& theta, const SoficApprox& phi);

// m-fold tensor power; throws BudgetError if n^m exceeds `cap`.
SoficApprox tensor_power(const SoficApprox& theta, std::size_t m, std::size_t cap = 1'000'000);

// Nonnegative rational weights summing to one.
class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> weights);
  const std::vector<Rational>& values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Rational> weights_;
};

struct CombinePlan {
  std::vector<Rational> requested;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> multiplicities;
  std::size_t total_dimension = 0;
  std::vector<Rational> achieved;  // dims[i]*multiplicities[i] / total
  Rational max_error;

  // Offset of block i in the combined dimension.
  std::size_t block_offset(std::size_t i) const;
  std::size_t block_size(std::size_t i) const { return dims[i] * multiplicities[i]; }
};

// Plan for explicitly chosen multiplicities (no optimization).
CombinePlan make_plan(const WeightVector& weights, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& multiplicities);

// Multiplicities r_i >= 1 minimizing max_j |m_j r_j / Σ m_i r_i - λ_j| subject
// to Σ m_i r_i <= cap. Ties: smaller total dimension, then lex-smallest r.
// The search is exact: each total dimension D is scanned over the window of
// r_j that could still beat the incumbent error.
CombinePlan approximate_weights(const WeightVector& weights, const std::vector<std::size_t>& dims,
                                std::size_t cap);

// ⊕_i (Θ_i ⊗ 1_{r_i}) in input order.
SoficApprox combine_with_plan(const std::vector<SoficApprox>& parts, const CombinePlan& plan);

std::pair<SoficApprox, CombinePlan> convex_combine(
    const std::vector<std::pair<Rational, SoficApprox>>& pairs, std::size_t cap);

// Block i of a combination as a subset of the combined space.
Subset block_subset(const CombinePlan& plan, std::size_t i);

// Orbits of the generated group, sorted by smallest point.
std::vector<std::vector<Point>> orbits(const SoficApprox& theta);

// Restriction to an invariant set, re-indexed by the sorted order of S.
SoficApprox cut(const SoficApprox& theta, const Subset& s);

// σ with σ∘(cut(Θ,S)⊕cut(Θ,S^c))(g)∘σ⁻¹ = Θ(g): position k of the direct
// sum goes to the k-th point of S followed by S^c.
Perm cut_recovery_conjugator(const Subset& s);

}  // namespace sofic
