#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccx/error.hpp"

namespace ccx {

enum class Family { free_group, free_abelian, surface };

enum class Ends { zero, one, two, infinitely_many };

std::string to_string(Ends e);

// A letter packs a generator slot and an inversion bit: slot s -> 2s, s^-1 -> 2s+1.
// The induced code order a < a^-1 < b < b^-1 < ... is the lexicographic base of ShortLex.
using Letter = std::uint8_t;

constexpr Letter make_letter(unsigned slot, bool inverse) {
  return static_cast<Letter>((slot << 1u) | (inverse ? 1u : 0u));
}
constexpr Letter inverse_of(Letter l) { return static_cast<Letter>(l ^ 1u); }
constexpr unsigned slot_of(Letter l) { return l >> 1u; }
constexpr bool is_inverse(Letter l) { return (l & 1u) != 0; }

// Word over the symmetric alphabet of a group; tracks whether it is in normal form.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters, bool normalized = false)
      : letters_(std::move(letters)), normalized_(normalized) {}

  static Word identity() { return Word({}, true); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool normalized() const { return normalized_; }
  void mark_normalized() { normalized_ = true; }

  // Byte string usable as a hash key; equal iff the letter sequences are equal.
  std::string key() const { return std::string(letters_.begin(), letters_.end()); }

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Letter> letters_;
  bool normalized_ = false;
};

// ShortLex: shorter first, ties broken lexicographically by letter code.
bool shortlex_less(const Word& a, const Word& b);

// Free reduction (cancel adjacent s s^-1); confluent, one pass with a stack.
std::vector<Letter> free_reduce(std::span<const Letter> in);

Word concat(const Word& a, const Word& b);

class GroupSpec {
 public:
  static GroupSpec free_group(int rank);
  static GroupSpec free_abelian(int rank);
  static GroupSpec surface_group(int genus);

  Family family() const { return family_; }
  // Number of generator slots: free/abelian rank, or 2*genus for surface groups.
  int rank() const { return rank_; }
  int genus() const { return genus_; }
  int alphabet_size() const { return 2 * rank_; }
  std::string name() const;

  Ends ends() const;

  char slot_char(unsigned slot) const;
  std::optional<unsigned> slot_of_char(char c) const;

  // Accepts juxtaposed letters with uppercase inverses ("aBa"), caret exponents
  // ("a^-2 b"), optional whitespace/'*' separators, "1" for the identity, and for
  // free-abelian groups a single exponent-vector literal "(2,-1)".
  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const;

  std::vector<long long> exponents(const Word& w) const;
  Word from_exponents(std::span<const long long> e) const;
  std::string format_exponents(const Word& w) const;

  Word normal_form(const Word& w) const;
  Word product(const Word& a, const Word& b) const;
  Word inverse(const Word& w) const;
  Word conjugate(const Word& g, const Word& w) const;  // g w g^-1
  bool is_identity(const Word& w) const;

  // Cyclic conjugates of the surface relator and its inverse, each of length 4g.
  const std::vector<std::vector<Letter>>& relator_conjugates() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.family_ == b.family_ && a.rank_ == b.rank_ && a.genus_ == b.genus_;
  }

 private:
  GroupSpec(Family f, int rank, int genus) : family_(f), rank_(rank), genus_(genus) {}

  std::vector<Letter> dehn_reduce(std::vector<Letter> w) const;
  std::vector<Letter> surface_canonical(std::vector<Letter> w) const;

  Family family_;
  int rank_;
  int genus_;
};

// Radius-R ball in the Cayley graph; vertices sorted by (length, ShortLex), so a
// linear scan visits candidate coset representatives in canonical order.
class CayleyBall {
 public:
  CayleyBall(GroupSpec group, int radius) : group_(std::move(group)), radius_(radius) {}

  const GroupSpec& group() const { return group_; }
  int radius() const { return radius_; }
  std::size_t size() const { return vertices_.size(); }

  const Word& word(std::uint32_t v) const { return vertices_[v]; }
  int distance(std::uint32_t v) const { return static_cast<int>(vertices_[v].length()); }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }

  std::optional<std::uint32_t> find(const Word& normal) const;
  std::uint32_t at(const Word& normal) const;

 private:
  friend CayleyBall build_ball(const GroupSpec&, int);

  GroupSpec group_;
  int radius_;
  std::vector<Word> vertices_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Documented guardrails; exceeding one raises SizeError naming the bound.
inline constexpr int kMaxFreeRadius = 12;
inline constexpr int kMaxAbelianRadius = 20;
inline constexpr int kMaxSurfaceRadius = 5;
inline constexpr int kMaxRank = 8;
inline constexpr int kMaxGenus = 4;
inline constexpr std::size_t kMaxBallVertices = 2'000'000;

CayleyBall build_ball(const GroupSpec& G, int radius);

}  // namespace ccx
