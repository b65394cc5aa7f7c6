#include "sofic/group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sofic/error.hpp"

namespace sofic {

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;
}

bool operator<(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    const auto ra = a.letters_[i].rank(), rb = b.letters_[i].rank();
    if (ra != rb) return ra < rb;
  }
  return false;
}

Word free_reduce(std::vector<Letter> raw) {
  Word w;
  auto& out = w.letters_;
  out.reserve(raw.size());
  for (const Letter& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw PreconditionError("letter sign must be +1 or -1");
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return w;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> raw = a.letters();
  raw.insert(raw.end(), b.letters().begin(), b.letters().end());
  return free_reduce(std::move(raw));
}

namespace {

bool single_char_names(const std::vector<std::string>& generators) {
  return std::all_of(generators.begin(), generators.end(), [](const std::string& g) {
    return g.size() == 1 && std::islower(static_cast<unsigned char>(g[0]));
  });
}

std::uint32_t lookup(const std::vector<std::string>& generators, std::string_view name) {
  const auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end())
    throw ParseError("unknown generator symbol '" + std::string(name) + "'");
  return static_cast<std::uint32_t>(it - generators.begin());
}

}  // namespace

Word parse_word(const std::vector<std::string>& generators, std::string_view text) {
  std::vector<Letter> raw;
  if (single_char_names(generators)) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const bool inv = std::isupper(static_cast<unsigned char>(c));
      const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      raw.push_back({lookup(generators, std::string_view(&lower, 1)), inv ? -1 : 1});
    }
  } else {
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
      int sign = 1;
      if (token.size() > 3 && token.ends_with("^-1")) {
        token.resize(token.size() - 3);
        sign = -1;
      }
      raw.push_back({lookup(generators, token), sign});
    }
  }
  return free_reduce(std::move(raw));
}

std::string format_word(const std::vector<std::string>& generators, const Word& w) {
  std::string out;
  if (single_char_names(generators)) {
    for (const Letter& l : w.letters()) {
      const char c = generators.at(l.gen)[0];
      out.push_back(l.sign < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
    }
    return out;
  }
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out.push_back(' ');
    out += generators.at(l.gen);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

std::vector<Word> enumerate_words(std::size_t generator_count, std::size_t max_length) {
  std::vector<Word> out;
  if (generator_count == 0) return out;
  std::vector<Word> frontier{Word{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (std::uint32_t rank = 0; rank < 2 * generator_count; ++rank) {
        const Letter l{rank / 2, rank % 2 ? -1 : 1};
        if (!w.empty() && w.letters().back() == l.inverse()) continue;
        std::vector<Letter> raw = w.letters();
        raw.push_back(l);
        next.push_back(free_reduce(std::move(raw)));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

SoficApprox::SoficApprox(std::size_t dimension, std::vector<std::string> generators,
                         std::vector<Perm> images, std::optional<std::vector<Word>> relators)
    : dimension_(dimension),
      generators_(std::move(generators)),
      images_(std::move(images)),
      relators_(std::move(relators)) {
  if (dimension_ == 0) throw PreconditionError("approximation of dimension 0");
  if (generators_.size() != images_.size())
    throw PreconditionError("generator/image count mismatch");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (images_[i].size() != dimension_)
      throw PreconditionError("image of '" + generators_[i] + "' has dimension " +
                              std::to_string(images_[i].size()) + ", expected " +
                              std::to_string(dimension_));
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[j] == generators_[i])
        throw PreconditionError("duplicate generator '" + generators_[i] + "'");
  }
  if (relators_) {
    for (const Word& r : *relators_)
      for (const Letter& l : r.letters())
        if (l.gen >= generators_.size())
          throw PreconditionError("relator uses an undeclared generator");
  }
}

std::size_t SoficApprox::generator_index(std::string_view name) const {
  return lookup(generators_, name);
}

const Perm& SoficApprox::image(std::string_view name) const {
  return images_[generator_index(name)];
}

SoficApprox SoficApprox::with_relators(std::optional<std::vector<Word>> relators) const {
  return SoficApprox(dimension_, generators_, images_, std::move(relators));
}

Perm evaluate_word(const SoficApprox& theta, const Word& w) {
  const std::size_t n = theta.dimension();
  // Apply letters right to left: Θ(x1)∘...∘Θ(xk).
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(x);
  std::vector<Perm> inverses(theta.generators().size());
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (it->gen >= theta.generators().size()) throw PreconditionError("unknown generator in word");
    const Perm* p = &theta.image(it->gen);
    if (it->sign < 0) {
      if (inverses[it->gen].size() == 0) inverses[it->gen] = sofic::inverse(*p);
      p = &inverses[it->gen];
    }
    for (auto& y : img) y = (*p)[y];
  }
  return Perm::from_images_unchecked(std::move(img));
}

Rational relator_defect(const SoficApprox& theta) {
  if (!theta.relators()) throw PreconditionError("relator_defect: approximation has no presentation");
  Rational worst = 0;
  const Perm id = Perm::identity(theta.dimension());
  for (const Word& r : *theta.relators()) worst = std::max(worst, hs_dist_sq(evaluate_word(theta, r), id));
  return worst;
}

TraceProfile trace_profile(const SoficApprox& theta, std::size_t max_length) {
  if (max_length < 1) throw PreconditionError("trace_profile: word length must be >= 1");
  TraceProfile tp;
  tp.score = 0;
  for (Word& w : enumerate_words(theta.generators().size(), max_length)) {
    Rational ff = fixed_fraction(evaluate_word(theta, w));
    tp.score = std::max(tp.score, ff);
    tp.entries.emplace_back(std::move(w), std::move(ff));
  }
  return tp;
}

SoficApprox cyclic_shift_approx(std::size_t n) {
  if (n < 1) throw PreconditionError("cyclic_shift_approx: N must be >= 1");
  std::vector<Point> img(n);
  for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>((x + 1) % n);
  return SoficApprox(n, {"a"}, {Perm::from_images_unchecked(std::move(img))});
}

void CayleyTable::validate() const {
  if (order == 0) throw PreconditionError("Cayley table of order 0");
  if (table.size() != order) throw PreconditionError("Cayley table row count differs from order");
  if (identity >= order) throw PreconditionError("identity index out of range");
  for (std::size_t a = 0; a < order; ++a) {
    if (table[a].size() != order) throw PreconditionError("Cayley table row " + std::to_string(a) + " has wrong length");
    std::vector<bool> row(order), col(order);
    for (std::size_t b = 0; b < order; ++b) {
      const Point ab = table[a][b], ba = table[b].size() == order ? table[b][a] : order;
      if (ab >= order || row[ab]) throw PreconditionError("row " + std::to_string(a) + " is not a permutation");
      if (ba >= order || col[ba]) throw PreconditionError("column " + std::to_string(a) + " is not a permutation");
      row[ab] = col[ba] = true;
    }
    if (table[identity][a] != a || table[a][identity] != a)
      throw PreconditionError("identity is not neutral at element " + std::to_string(a));
  }
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      for (std::size_t c = 0; c < order; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw PreconditionError("associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
}

Point CayleyTable::inverse(Point a) const {
  for (Point b = 0; b < order; ++b)
    if (table[a][b] == identity) return b;
  throw PreconditionError("element without inverse");
}

CayleyTable cyclic_group_table(std::size_t n) {
  CayleyTable k{n, 0, std::vector<std::vector<Point>>(n, std::vector<Point>(n))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) k.table[a][b] = static_cast<Point>((a + b) % n);
  return k;
}

CayleyTable dihedral_group_table(std::size_t n) {
  // r^i s^e has index i + n*e; s r s = r⁻¹.
  const std::size_t m = 2 * n;
  CayleyTable k{m, 0, std::vector<std::vector<Point>>(m, std::vector<Point>(m))};
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t i = x % n, a = x / n, j = y % n, b = y / n;
      const std::size_t rot = a ? (i + n - j) % n : (i + j) % n;
      k.table[x][y] = static_cast<Point>(rot + n * ((a + b) % 2));
    }
  return k;
}

CayleyTable klein_four_table() {
  CayleyTable k{4, 0, std::vector<std::vector<Point>>(4, std::vector<Point>(4))};
  for (Point a = 0; a < 4; ++a)
    for (Point b = 0; b < 4; ++b) k.table[a][b] = a ^ b;
  return k;
}

CayleyTable quaternion_table() {
  // index = unit + 4*negative, units 1,i,j,k.
  static constexpr int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  CayleyTable k{8, 0, std::vector<std::vector<Point>>(8, std::vector<Point>(8))};
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t u = x % 4, v = y % 4;
      const bool neg = ((x / 4) + (y / 4) + (unit_sign[u][v] < 0 ? 1 : 0)) % 2;
      k.table[x][y] = static_cast<Point>(unit_prod[u][v] + (neg ? 4 : 0));
    }
  return k;
}

std::string element_name(std::size_t index) { return "g" + std::to_string(index); }

SoficApprox regular_action(const CayleyTable& k, Side side) {
  k.validate();
  std::vector<std::string> names;
  std::vector<Perm> images;
  for (Point g = 0; g < k.order; ++g) {
    names.push_back(element_name(g));
    std::vector<Point> img(k.order);
    const Point g_inv = k.inverse(g);
    for (Point x = 0; x < k.order; ++x)
      img[x] = side == Side::left ? k.product(g, x) : k.product(x, g_inv);
    images.push_back(Perm::from_images_unchecked(std::move(img)));
  }
  return SoficApprox(k.order, std::move(names), std::move(images));
}

SoficApprox coset_action(const CayleyTable& k, const std::vector<Point>& subgroup) {
  k.validate();
  std::vector<bool> in_h(k.order, false);
  for (Point h : subgroup) {
    if (h >= k.order) throw PreconditionError("subgroup element out of range");
    in_h[h] = true;
  }
  if (!in_h[k.identity]) throw PreconditionError("H is not a subgroup: identity missing");
  for (Point a = 0; a < k.order; ++a) {
    if (!in_h[a]) continue;
    if (!in_h[k.inverse(a)]) throw PreconditionError("H is not a subgroup: not closed under inverse");
    for (Point b = 0; b < k.order; ++b)
      if (in_h[b] && !in_h[k.product(a, b)])
        throw PreconditionError("H is not a subgroup: not closed under product");
  }
  constexpr Point unset = ~Point{0};
  std::vector<Point> coset_of(k.order, unset);
  std::size_t index = 0;
  for (Point x = 0; x < k.order; ++x) {
    if (coset_of[x] != unset) continue;
    for (Point h = 0; h < k.order; ++h)
      if (in_h[h]) coset_of[k.product(x, h)] = static_cast<Point>(index);
    ++index;
  }
  std::vector<Point> representative(index);
  for (Point x = k.order; x-- > 0;) representative[coset_of[x]] = x;

  std::vector<std::string> names;
  std::vector<Perm> images;
  for (Point g = 0; g < k.order; ++g) {
    names.push_back(element_name(g));
    std::vector<Point> img(index);
    for (std::size_t c = 0; c < index; ++c) img[c] = coset_of[k.product(g, representative[c])];
    images.push_back(Perm(std::move(img)));
  }
  return SoficApprox(index, std::move(names), std::move(images));
}

}  // namespace sofic
