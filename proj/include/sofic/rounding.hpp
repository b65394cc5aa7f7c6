#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sofic/perm.hpp"
#include "sofic/subset.hpp"

namespace sofic {

// A self-map of {0..n-1}, not necessarily injective (a 0/1 matrix with one
// entry per row).
class PointMap {
 public:
  explicit PointMap(std::vector<Point> f);
  std::size_t size() const { return f_.size(); }
  Point operator[](std::size_t x) const { return f_[x]; }
  const std::vector<Point>& values() const { return f_; }

 private:
  std::vector<Point> f_;
};

// Disjoint blocks covering {0..n-1} and one permutation per block.
class PatchSpec {
 public:
  PatchSpec(std::size_t n, std::vector<std::vector<Point>> blocks, std::vector<Perm> perms);
  std::size_t size() const { return n_; }
  const std::vector<std::vector<Point>>& blocks() const { return blocks_; }
  const std::vector<Perm>& perms() const { return perms_; }

 private:
  std::size_t n_;
  std::vector<std::vector<Point>> blocks_;
  std::vector<Perm> perms_;
};

// f(x) = u_i(x) for the block e_i containing x.
PointMap patchwork(const PatchSpec& spec);

// Number of columns missed by f: n - |image(f)|.
std::size_t deficit(const PointMap& f);

struct Rounding {
  Perm w;
  std::size_t disagreements = 0;
};

// Nearest permutation to f. Each image column keeps its lowest-index
// preimage; leftover rows take the missing columns in increasing order.
Rounding round_to_permutation(const PointMap& f);

class SubsetFamily {
 public:
  SubsetFamily(std::size_t n, std::vector<Subset> sets);
  std::size_t ambient() const { return n_; }
  std::size_t count() const { return sets_.size(); }
  const Subset& operator[](std::size_t j) const { return sets_[j]; }
  const std::vector<Subset>& sets() const { return sets_; }

  // a_i = |{j : i ∈ A_j}|
  std::vector<std::size_t> multiplicities() const;

 private:
  std::size_t n_;
  std::vector<Subset> sets_;
};

// Σ_j |A △ A_j|
std::size_t family_cost(const SubsetFamily& fam, const Subset& a);

struct MajoritySet {
  Subset set;
  std::size_t cost = 0;  // Σ_i min(a_i, r - a_i)
};

// A = {i : 2 a_i > r}.
MajoritySet majority_set(const SubsetFamily& fam);

// R(p) = Σ_j |A_{p(j)} △ A_j|, with p a permutation of {0..r-1}.
std::size_t copy_shift_cost(const SubsetFamily& fam, const Perm& p);

// ⌈Σ_i 2 a_i (r - a_i) / r⌉, the averaging lower bound on max_p R(p).
std::size_t averaging_bound(const SubsetFamily& fam);

struct Witness {
  Perm p;
  std::size_t cost = 0;  // R(p)
  bool exhaustive = false;
};

// Exhaustive maximization of R(p) for r <= 8 (lex-smallest maximizer).
// Above that: a derandomized greedy start that meets the averaging bound,
// refined by `budget` seeded transposition trials. Budget 0 with r > 8 is
// rejected.
Witness witness_permutation(const SubsetFamily& fam, std::uint64_t seed = 0,
                            std::size_t budget = 10'000);

struct Blockified {
  Subset t;                    // A × {0..r-1}
  MajoritySet majority;        // of the slices
  std::vector<Subset> slices;  // A^j = {i : i*r + j ∈ S}
  std::size_t distance = 0;    // |T △ S|
};

// Points are laid out as x = i*r + j (base point i, copy j).
Blockified blockify(const Subset& s, std::size_t n, std::size_t r);

// The permutation 1_n ⊗ p of {0..n*r-1} that moves copy j to copy p(j).
Perm copy_permutation(std::size_t n, const Perm& p);

}  // namespace sofic
