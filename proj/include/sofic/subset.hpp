#pragma once

#include <cstddef>
#include <vector>

#include "sofic/perm.hpp"
#include "sofic/rational.hpp"

namespace sofic {

// A subset of {0..n-1} carrying the normalized counting measure.
class Subset {
 public:
  Subset() = default;
  // Points may come in any order; duplicates are merged. Throws
  // PreconditionError for points outside the ambient set.
  Subset(std::size_t ambient, std::vector<Point> points);

  static Subset from_mask(const std::vector<bool>& mask);
  static Subset full(std::size_t ambient);

  std::size_t ambient() const { return mask_.size(); }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(Point x) const { return x < mask_.size() && mask_[x]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<bool>& mask() const { return mask_; }

  Rational measure() const;
  Subset complement() const;
  // Image of the set under p.
  Subset image(const Perm& p) const;

  friend bool operator==(const Subset& a, const Subset& b) { return a.mask_ == b.mask_; }

 private:
  std::vector<bool> mask_;
  std::vector<Point> points_;
};

std::size_t symmetric_difference_size(const Subset& a, const Subset& b);
std::size_t intersection_size(const Subset& a, const Subset& b);

}  // namespace sofic
