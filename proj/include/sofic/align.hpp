#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sofic/convex.hpp"
#include "sofic/group.hpp"

namespace sofic {

// Truncation of the 4^{-i}-weighted sum to the length-lex words of length
// at most L; the identity word is not included.
struct WeightScheme {
  std::size_t max_length = 3;
  std::vector<Word> words;

  std::size_t word_count() const { return words.size(); }
  // 4^{-(index+1)}
  Rational weight(std::size_t index) const;
  // 2 * Σ_{i > M} 4^{-i} = (2/3) 4^{-M}
  Rational tail_bound() const;
};

WeightScheme make_weight_scheme(std::size_t generator_count, std::size_t max_length = 3);

enum class AlignMode { exact, annealed, constructed };
std::string to_string(AlignMode mode);

struct Alignment {
  Perm conjugator;
  Rational objective;  // truncated weighted sum, before the square root
  Rational tail_bound;
  AlignMode mode = AlignMode::constructed;

  // Display only.
  double distance() const;
};

// Σ_i 4^{-i} hs_dist_sq(Θ(g_i), σ Φ(g_i) σ⁻¹), exactly.
Rational conj_objective(const SoficApprox& theta, const SoficApprox& phi, const Perm& sigma,
                        const WeightScheme& ws);

// Global minimum over all of Sym(n); ties go to the lex-smallest conjugator.
Alignment conj_distance_exact(const SoficApprox& theta, const SoficApprox& phi,
                              const WeightScheme& ws, std::size_t cap = 8);

struct AnnealConfig {
  std::size_t restarts = 20;
  std::size_t steps = 5000;
  double cooling = 0.995;
  std::size_t temperature_samples = 50;
};

// Simulated annealing over conjugators with transposition moves. Returns an
// upper bound on the truncated objective; deterministic for a given seed.
Alignment conj_distance_anneal(const SoficApprox& theta, const SoficApprox& phi,
                               const WeightScheme& ws, std::uint64_t seed,
                               const AnnealConfig& config = {});

struct Equalized {
  SoficApprox theta;
  SoficApprox phi;
  std::size_t theta_factor = 1;
  std::size_t phi_factor = 1;
};

// Amplifies both sides to lcm(n, m).
Equalized equalize_dimensions(const SoficApprox& theta, const SoficApprox& phi,
                              std::size_t cap = 1'000'000);

// ---- explicit conjugators between block layouts --------------------------

// Right side lists the left blocks in the order `order` (right block j is
// left block order[j]). Returns σ mapping right indices to left indices.
Perm block_reorder_conjugator(const std::vector<std::size_t>& left_block_sizes,
                              const std::vector<std::size_t>& order);

// σ from the layout of Θ⊗1_{r1+r2} to that of (Θ⊗1_{r1}) ⊕ (Θ⊗1_{r2}).
Perm split_amplification_conjugator(std::size_t n, std::size_t r1, std::size_t r2);

// ⊕_i σ_i ⊗ 1_{r_i}
Perm blockwise_conjugator(const std::vector<Perm>& sigmas, const std::vector<std::size_t>& multiplicities);

// ---- convex-axiom certificates ---------------------------------------------

struct AxiomCheck {
  std::string axiom;
  std::string instance;
  bool passed = false;
  Rational objective;  // constructed-alignment objective
  Rational bound;      // what it was compared against (0 for equalities)
  Perm conjugator;
  std::string detail;
};

struct AxiomSuiteConfig {
  std::size_t max_length = 2;
  std::size_t cap = 2000;                  // dimension cap for weight realization
  Rational t = Rational(1, 3);             // two-summand weight
  Rational s = Rational(1, 2);             // second weight for the metric inequality
  Rational outer = Rational(1, 2);         // outer weight for algebraic compatibility
  Rational metric_constant = 2;            // C in the first metric inequality
  std::size_t exact_cap = 7;
  std::uint64_t seed = 0;
  AnnealConfig anneal{4, 3000, 0.995, 50};
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  // Smallest C for which the first metric inequality would hold on this
  // instance (display only).
  double empirical_metric_constant = 0;
  bool all_passed() const;
};

// Needs at least two approximations on the same generators.
AxiomReport axiom_suite(const std::vector<SoficApprox>& instances, const AxiomSuiteConfig& config = {});

}  // namespace sofic
