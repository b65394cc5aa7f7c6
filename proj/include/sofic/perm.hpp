#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sofic/rational.hpp"

namespace sofic {

using Point = std::uint32_t;

// A bijection of {0..n-1} in one-line form: img[x] is the image of x.
class Perm {
 public:
  Perm() = default;

  // Validates that `img` is a bijection; throws PreconditionError otherwise.
  explicit Perm(std::vector<Point> img);

  static Perm identity(std::size_t n);
  static Perm from_images_unchecked(std::vector<Point> img);

  std::size_t size() const { return img_.size(); }
  Point operator[](std::size_t x) const { return img_[x]; }
  Point operator()(Point x) const { return img_[x]; }
  std::span<const Point> images() const { return img_; }

  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) {
    return a.img_ <=> b.img_;
  }

 private:
  std::vector<Point> img_;
};

// Sorted (ascending) multiset of cycle lengths.
struct CycleType {
  std::vector<std::size_t> lengths;
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

// (p∘q)(x) = p(q(x)).
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
// sigma∘p∘sigma⁻¹
Perm conjugate(const Perm& sigma, const Perm& p);
Perm power(const Perm& p, long long k);

std::size_t fixed_point_count(const Perm& p);
// Normalized trace of the permutation matrix.
Rational fixed_fraction(const Perm& p);

std::size_t mismatch_count(const Perm& u, const Perm& v);
// ||u - v||_2^2 = 2 * mismatches / n.
Rational hs_dist_sq(const Perm& u, const Perm& v);

// (p⊗q)(i*m + j) = p(i)*m + q(j), left factor coarse.
Perm tensor(const Perm& p, const Perm& q);
Perm direct_sum(const Perm& p, const Perm& q);

CycleType cycle_type(const Perm& p);
// Cycles in order of their smallest point, each starting at that point.
std::vector<std::vector<Point>> cycles(const Perm& p);

}  // namespace sofic
