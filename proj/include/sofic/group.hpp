#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sofic/perm.hpp"
#include "sofic/rational.hpp"

namespace sofic {

struct Letter {
  std::uint32_t gen = 0;
  int sign = 1;  // +1 or -1

  // Length-lex letter order: a < a⁻¹ < b < b⁻¹ < ...
  std::uint32_t rank() const { return 2 * gen + (sign < 0 ? 1 : 0); }
  Letter inverse() const { return {gen, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

// A freely reduced word. Construct through free_reduce.
class Word {
 public:
  Word() = default;

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  Word inverse() const;

  friend bool operator==(const Word&, const Word&) = default;
  // Length-lex.
  friend bool operator<(const Word& a, const Word& b);

 private:
  friend Word free_reduce(std::vector<Letter> raw);
  std::vector<Letter> letters_;
};

Word free_reduce(std::vector<Letter> raw);
// Concatenation followed by free reduction.
Word operator*(const Word& a, const Word& b);

// Word syntax: when every generator name is a single lowercase letter, each
// character is a letter and its uppercase form is the inverse ("abAB").
// Otherwise letters are whitespace-separated names with an optional "^-1".
Word parse_word(const std::vector<std::string>& generators, std::string_view text);
std::string format_word(const std::vector<std::string>& generators, const Word& w);

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

// All freely reduced nonempty words of length <= max_length over
// `generator_count` generators, in length-lex order.
std::vector<Word> enumerate_words(std::size_t generator_count, std::size_t max_length);

// Finite stage of a sofic representation: generator name -> permutation.
class SoficApprox {
 public:
  SoficApprox(std::size_t dimension, std::vector<std::string> generators,
              std::vector<Perm> images,
              std::optional<std::vector<Word>> relators = std::nullopt);

  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Perm>& images() const { return images_; }
  const Perm& image(std::size_t gen) const { return images_[gen]; }
  const Perm& image(std::string_view name) const;
  std::size_t generator_index(std::string_view name) const;
  const std::optional<std::vector<Word>>& relators() const { return relators_; }

  SoficApprox with_relators(std::optional<std::vector<Word>> relators) const;

  friend bool operator==(const SoficApprox&, const SoficApprox&) = default;

 private:
  std::size_t dimension_;
  std::vector<std::string> generators_;
  std::vector<Perm> images_;
  std::optional<std::vector<Word>> relators_;
};

Perm evaluate_word(const SoficApprox& theta, const Word& w);

// max over relators of hs_dist_sq(Θ(ρ), id); 0 for an empty relator list.
Rational relator_defect(const SoficApprox& theta);

struct TraceProfile {
  std::vector<std::pair<Word, Rational>> entries;
  // Largest fixed fraction over the enumerated words; 0 is ideal.
  Rational score;
};

TraceProfile trace_profile(const SoficApprox& theta, std::size_t max_length);

// a ↦ the N-cycle x ↦ x+1 mod N.
SoficApprox cyclic_shift_approx(std::size_t n);

// Multiplication table of a finite group, used as an explicit quotient G/G_i.
struct CayleyTable {
  std::size_t order = 0;
  std::size_t identity = 0;
  std::vector<std::vector<Point>> table;  // table[a][b] = a·b

  // Throws PreconditionError unless the table is a group.
  void validate() const;
  Point product(Point a, Point b) const { return table[a][b]; }
  Point inverse(Point a) const;
};

CayleyTable cyclic_group_table(std::size_t n);
CayleyTable dihedral_group_table(std::size_t n);  // order 2n
CayleyTable klein_four_table();
CayleyTable quaternion_table();

enum class Side { left, right };

// Every element becomes a generator named "g<index>".
// left:  g ↦ (x ↦ g·x);  right: g ↦ (x ↦ x·g⁻¹).
SoficApprox regular_action(const CayleyTable& k, Side side);

// Left action on the cosets xH, indexed by first appearance.
SoficApprox coset_action(const CayleyTable& k, const std::vector<Point>& subgroup);

std::string element_name(std::size_t index);

}  // namespace sofic
