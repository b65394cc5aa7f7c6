#include "sofic/perm.hpp"

#include <algorithm>
#include <string>

#include "sofic/error.hpp"

namespace sofic {

namespace {

void require_same_size(const Perm& p, const Perm& q, const char* op) {
  if (p.size() != q.size()) {
    throw PreconditionError(std::string(op) + ": dimension mismatch (" +
                            std::to_string(p.size()) + " vs " +
                            std::to_string(q.size()) + ")");
  }
}

}  // namespace

Perm::Perm(std::vector<Point> img) : img_(std::move(img)) {
  if (img_.empty()) throw PreconditionError("permutation of dimension 0");
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    const Point y = img_[x];
    if (y >= img_.size() || seen[y]) {
      throw PreconditionError("not a bijection: image of " + std::to_string(x) +
                              " is " + std::to_string(y));
    }
    seen[y] = true;
  }
}

Perm Perm::identity(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(x);
  return from_images_unchecked(std::move(img));
}

Perm Perm::from_images_unchecked(std::vector<Point> img) {
  Perm p;
  p.img_ = std::move(img);
  return p;
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

Perm compose(const Perm& p, const Perm& q) {
  require_same_size(p, q, "compose");
  std::vector<Point> img(p.size());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = p[q[x]];
  return Perm::from_images_unchecked(std::move(img));
}

Perm inverse(const Perm& p) {
  std::vector<Point> img(p.size());
  for (std::size_t x = 0; x < img.size(); ++x) img[p[x]] = static_cast<Point>(x);
  return Perm::from_images_unchecked(std::move(img));
}

Perm conjugate(const Perm& sigma, const Perm& p) {
  require_same_size(sigma, p, "conjugate");
  // (σpσ⁻¹)(σ(x)) = σ(p(x))
  std::vector<Point> img(p.size());
  for (std::size_t x = 0; x < img.size(); ++x) img[sigma[x]] = sigma[p[x]];
  return Perm::from_images_unchecked(std::move(img));
}

Perm power(const Perm& p, long long k) {
  Perm base = k < 0 ? inverse(p) : p;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : k;
  Perm result = Perm::identity(p.size());
  while (e) {
    if (e & 1) result = compose(result, base);
    base = compose(base, base);
    e >>= 1;
  }
  return result;
}

std::size_t fixed_point_count(const Perm& p) {
  std::size_t count = 0;
  for (std::size_t x = 0; x < p.size(); ++x) count += p[x] == x;
  return count;
}

Rational fixed_fraction(const Perm& p) {
  return Rational(Integer(fixed_point_count(p)), Integer(p.size()));
}

std::size_t mismatch_count(const Perm& u, const Perm& v) {
  require_same_size(u, v, "hs_dist_sq");
  std::size_t count = 0;
  for (std::size_t x = 0; x < u.size(); ++x) count += u[x] != v[x];
  return count;
}

Rational hs_dist_sq(const Perm& u, const Perm& v) {
  return Rational(Integer(2 * mismatch_count(u, v)), Integer(u.size()));
}

Perm tensor(const Perm& p, const Perm& q) {
  const std::size_t n = p.size(), m = q.size();
  std::vector<Point> img(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      img[i * m + j] = static_cast<Point>(p[i] * m + q[j]);
  return Perm::from_images_unchecked(std::move(img));
}

Perm direct_sum(const Perm& p, const Perm& q) {
  const std::size_t n = p.size();
  std::vector<Point> img(n + q.size());
  for (std::size_t x = 0; x < n; ++x) img[x] = p[x];
  for (std::size_t x = 0; x < q.size(); ++x)
    img[n + x] = static_cast<Point>(n + q[x]);
  return Perm::from_images_unchecked(std::move(img));
}

std::vector<std::vector<Point>> cycles(const Perm& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.size(), false);
  for (Point x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    auto& cyc = out.emplace_back();
    for (Point y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      cyc.push_back(y);
    }
  }
  return out;
}

CycleType cycle_type(const Perm& p) {
  CycleType ct;
  for (const auto& c : cycles(p)) ct.lengths.push_back(c.size());
  std::sort(ct.lengths.begin(), ct.lengths.end());
  return ct;
}

}  // namespace sofic
