#include "sofic/subset.hpp"

#include <string>

#include "sofic/error.hpp"

namespace sofic {

Subset::Subset(std::size_t ambient, std::vector<Point> points) : mask_(ambient, false) {
  for (Point x : points) {
    if (x >= ambient)
      throw PreconditionError("subset point " + std::to_string(x) + " outside {0.." +
                              std::to_string(ambient) + "-1}");
    mask_[x] = true;
  }
  for (Point x = 0; x < ambient; ++x)
    if (mask_[x]) points_.push_back(x);
}

Subset Subset::from_mask(const std::vector<bool>& mask) {
  Subset s;
  s.mask_ = mask;
  for (Point x = 0; x < mask.size(); ++x)
    if (mask[x]) s.points_.push_back(x);
  return s;
}

Subset Subset::full(std::size_t ambient) {
  return from_mask(std::vector<bool>(ambient, true));
}

Rational Subset::measure() const {
  if (mask_.empty()) return 0;
  return Rational(Integer(points_.size()), Integer(mask_.size()));
}

Subset Subset::complement() const {
  std::vector<bool> m(mask_.size());
  for (std::size_t x = 0; x < m.size(); ++x) m[x] = !mask_[x];
  return from_mask(m);
}

Subset Subset::image(const Perm& p) const {
  if (p.size() != ambient()) throw PreconditionError("subset image: dimension mismatch");
  std::vector<bool> m(mask_.size(), false);
  for (Point x : points_) m[p[x]] = true;
  return from_mask(m);
}

std::size_t symmetric_difference_size(const Subset& a, const Subset& b) {
  if (a.ambient() != b.ambient()) throw PreconditionError("symmetric difference: ambient mismatch");
  std::size_t count = 0;
  for (std::size_t x = 0; x < a.ambient(); ++x) count += a.mask()[x] != b.mask()[x];
  return count;
}

std::size_t intersection_size(const Subset& a, const Subset& b) {
  if (a.ambient() != b.ambient()) throw PreconditionError("intersection: ambient mismatch");
  std::size_t count = 0;
  for (Point x : a.points()) count += b.mask()[x];
  return count;
}

}  // namespace sofic
