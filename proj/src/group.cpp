#include "ccx/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ccx {

namespace {

constexpr const char* kFreeNames = "abcdefgh";
constexpr const char* kAbelianNames = "xyzuvwst";

std::string cat(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) out += p;
  return out;
}

}  // namespace

std::string to_string(Ends e) {
  switch (e) {
    case Ends::zero: return "0";
    case Ends::one: return "1";
    case Ends::two: return "2";
    case Ends::infinitely_many: return "infinite";
  }
  return "?";
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters() < b.letters();
}

std::vector<Letter> free_reduce(std::span<const Letter> in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (Letter l : in) {
    if (!out.empty() && out.back() == inverse_of(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> ls = a.letters();
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(ls));
}

GroupSpec GroupSpec::free_group(int rank) {
  if (rank < 1 || rank > kMaxRank)
    throw InputError("free-group rank " + std::to_string(rank) + " outside supported range 1.." +
                     std::to_string(kMaxRank));
  return GroupSpec(Family::free_group, rank, 0);
}

GroupSpec GroupSpec::free_abelian(int rank) {
  if (rank < 1 || rank > kMaxRank)
    throw InputError("free-abelian rank " + std::to_string(rank) + " outside supported range 1.." +
                     std::to_string(kMaxRank));
  return GroupSpec(Family::free_abelian, rank, 0);
}

GroupSpec GroupSpec::surface_group(int genus) {
  if (genus < 2 || genus > kMaxGenus)
    throw InputError("surface genus " + std::to_string(genus) + " outside supported range 2.." +
                     std::to_string(kMaxGenus));
  return GroupSpec(Family::surface, 2 * genus, genus);
}

std::string GroupSpec::name() const {
  switch (family_) {
    case Family::free_group: return "F" + std::to_string(rank_);
    case Family::free_abelian: return "Z^" + std::to_string(rank_);
    case Family::surface: return "Sigma" + std::to_string(genus_);
  }
  return "?";
}

Ends GroupSpec::ends() const {
  switch (family_) {
    case Family::free_group:
      return rank_ == 1 ? Ends::two : Ends::infinitely_many;
    case Family::free_abelian:
      return rank_ == 1 ? Ends::two : Ends::one;
    case Family::surface:
      return Ends::one;
  }
  return Ends::zero;
}

char GroupSpec::slot_char(unsigned slot) const {
  const char* names = family_ == Family::free_abelian ? kAbelianNames : kFreeNames;
  return names[slot];
}

std::optional<unsigned> GroupSpec::slot_of_char(char c) const {
  const char* names = family_ == Family::free_abelian ? kAbelianNames : kFreeNames;
  for (int s = 0; s < rank_; ++s)
    if (names[s] == c) return static_cast<unsigned>(s);
  return std::nullopt;
}

Word GroupSpec::parse_word(std::string_view text) const {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip_fill = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip_fill();
  if (i < text.size() && text[i] == '(') {
    if (family_ != Family::free_abelian)
      throw InputError("exponent-vector literals are only valid for free-abelian groups");
    ++i;
    std::vector<long long> exps;
    while (true) {
      skip_fill();
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(std::string(text.substr(i)), &used);
      } catch (const std::exception&) {
        throw InputError(cat({"bad exponent-vector literal in \"", text, "\""}));
      }
      i += used;
      exps.push_back(v);
      skip_fill();
      if (i >= text.size()) throw InputError(cat({"unterminated exponent vector in \"", text, "\""}));
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw InputError(cat({"bad exponent-vector literal in \"", text, "\""}));
    }
    skip_fill();
    if (i != text.size()) throw InputError(cat({"trailing input after exponent vector in \"", text, "\""}));
    if (static_cast<int>(exps.size()) != rank_)
      throw InputError("exponent vector has " + std::to_string(exps.size()) + " entries, expected " +
                       std::to_string(rank_));
    return from_exponents(exps);
  }
  while (i < text.size()) {
    skip_fill();
    if (i >= text.size()) break;
    char c = text[i];
    if (c == '1') {  // identity token
      ++i;
      continue;
    }
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    bool upper_inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    auto slot = slot_of_char(lower);
    if (!slot)
      throw InputError(cat({"unknown letter '", std::string(1, c), "' for group ", name()}));
    ++i;
    long long exponent = upper_inverse ? -1 : 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(std::string(text.substr(i)), &used);
      } catch (const std::exception&) {
        throw InputError(cat({"bad exponent in \"", text, "\""}));
      }
      i += used;
      exponent = upper_inverse ? -v : v;
    }
    Letter l = make_letter(*slot, exponent < 0);
    for (long long k = 0; k < std::llabs(exponent); ++k) letters.push_back(l);
  }
  return Word(std::move(letters));
}

std::string GroupSpec::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    char c = slot_char(slot_of(l));
    out += is_inverse(l) ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
  }
  return out;
}

std::vector<long long> GroupSpec::exponents(const Word& w) const {
  std::vector<long long> e(static_cast<std::size_t>(rank_), 0);
  for (Letter l : w.letters()) e[slot_of(l)] += is_inverse(l) ? -1 : 1;
  return e;
}

Word GroupSpec::from_exponents(std::span<const long long> e) const {
  if (static_cast<int>(e.size()) != rank_)
    throw InputError("exponent vector has " + std::to_string(e.size()) + " entries, expected " +
                     std::to_string(rank_));
  std::vector<Letter> letters;
  for (int s = 0; s < rank_; ++s) {
    Letter l = make_letter(static_cast<unsigned>(s), e[s] < 0);
    for (long long k = 0; k < std::llabs(e[s]); ++k) letters.push_back(l);
  }
  return Word(std::move(letters), family_ == Family::free_abelian);
}

std::string GroupSpec::format_exponents(const Word& w) const {
  auto e = exponents(w);
  std::string out = "(";
  for (int s = 0; s < rank_; ++s) {
    if (s) out += ",";
    out += std::to_string(e[s]);
  }
  return out + ")";
}

const std::vector<std::vector<Letter>>& GroupSpec::relator_conjugates() const {
  if (family_ != Family::surface)
    throw UnsupportedFamilyError("relator conjugates exist only for surface groups");
  static std::map<int, std::vector<std::vector<Letter>>> cache;
  auto it = cache.find(genus_);
  if (it != cache.end()) return it->second;

  std::vector<Letter> r;
  for (int k = 0; k < genus_; ++k) {
    Letter a = make_letter(static_cast<unsigned>(2 * k), false);
    Letter b = make_letter(static_cast<unsigned>(2 * k + 1), false);
    r.push_back(a);
    r.push_back(b);
    r.push_back(inverse_of(a));
    r.push_back(inverse_of(b));
  }
  std::set<std::vector<Letter>> all;
  std::vector<Letter> rinv(r.rbegin(), r.rend());
  for (Letter& l : rinv) l = inverse_of(l);
  for (const auto& base : {r, rinv}) {
    for (std::size_t shift = 0; shift < base.size(); ++shift) {
      std::vector<Letter> rot(base.begin() + static_cast<long>(shift), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(shift));
      all.insert(std::move(rot));
    }
  }
  auto [ins, _] = cache.emplace(genus_, std::vector<std::vector<Letter>>(all.begin(), all.end()));
  return ins->second;
}

// Replace some factor longer than half a relator conjugate by the inverse of the
// complementary factor; repeat to a fixed point. Valid Dehn algorithm for genus >= 2.
std::vector<Letter> GroupSpec::dehn_reduce(std::vector<Letter> w) const {
  const auto& rels = relator_conjugates();
  const std::size_t rlen = static_cast<std::size_t>(4 * genus_);
  const std::size_t half = rlen / 2;
  bool changed = true;
  while (changed) {
    changed = false;
    w = free_reduce(w);
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (const auto& rel : rels) {
        std::size_t match = 0;
        while (match < rlen && i + match < w.size() && w[i + match] == rel[match]) ++match;
        if (match > half) {
          // rel = p s with p = rel[0..match); p equals s^-1 in the group.
          std::vector<Letter> repl;
          for (std::size_t j = rlen; j > match; --j) repl.push_back(inverse_of(rel[j - 1]));
          std::vector<Letter> next(w.begin(), w.begin() + static_cast<long>(i));
          next.insert(next.end(), repl.begin(), repl.end());
          next.insert(next.end(), w.begin() + static_cast<long>(i + match), w.end());
          w = std::move(next);
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

// Geodesic words differ only by swapping an exact half of a relator conjugate for the
// inverse of the other half; the normal form is the ShortLex least word in that closure.
std::vector<Letter> GroupSpec::surface_canonical(std::vector<Letter> w) const {
  w = dehn_reduce(std::move(w));
  if (w.empty()) return w;
  const auto& rels = relator_conjugates();
  const std::size_t rlen = static_cast<std::size_t>(4 * genus_);
  const std::size_t half = rlen / 2;
  constexpr std::size_t kClosureCap = 200'000;

  std::set<std::vector<Letter>> seen;
  std::vector<std::vector<Letter>> frontier{w};
  seen.insert(w);
  while (!frontier.empty()) {
    std::vector<std::vector<Letter>> next;
    for (const auto& cur : frontier) {
      for (std::size_t i = 0; i + half <= cur.size(); ++i) {
        for (const auto& rel : rels) {
          bool match = true;
          for (std::size_t j = 0; j < half; ++j) {
            if (cur[i + j] != rel[j]) {
              match = false;
              break;
            }
          }
          if (!match) continue;
          std::vector<Letter> repl;
          for (std::size_t j = rlen; j > half; --j) repl.push_back(inverse_of(rel[j - 1]));
          std::vector<Letter> cand(cur.begin(), cur.begin() + static_cast<long>(i));
          cand.insert(cand.end(), repl.begin(), repl.end());
          cand.insert(cand.end(), cur.begin() + static_cast<long>(i + half), cur.end());
          cand = free_reduce(cand);
          if (cand.size() < cur.size()) {
            // A shortening swap means the Dehn pass was not final; restart from here.
            return surface_canonical(std::move(cand));
          }
          if (seen.insert(cand).second) {
            if (seen.size() > kClosureCap)
              throw SizeError("surface normal-form closure exceeded " + std::to_string(kClosureCap) +
                              " words");
            next.push_back(std::move(cand));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return *seen.begin();  // set orders by length-free lex; all entries have equal length
}

Word GroupSpec::normal_form(const Word& w) const {
  if (w.normalized()) return w;
  switch (family_) {
    case Family::free_group: {
      Word out(free_reduce(w.letters()), true);
      return out;
    }
    case Family::free_abelian: {
      return from_exponents(exponents(w));
    }
    case Family::surface: {
      return Word(surface_canonical(w.letters()), true);
    }
  }
  throw Error("unreachable family");
}

Word GroupSpec::product(const Word& a, const Word& b) const { return normal_form(concat(a, b)); }

Word GroupSpec::inverse(const Word& w) const {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : ls) l = inverse_of(l);
  return normal_form(Word(std::move(ls)));
}

Word GroupSpec::conjugate(const Word& g, const Word& w) const {
  return product(product(g, w), inverse(g));
}

bool GroupSpec::is_identity(const Word& w) const { return normal_form(w).empty(); }

std::optional<std::uint32_t> CayleyBall::find(const Word& normal) const {
  auto it = index_.find(normal.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t CayleyBall::at(const Word& normal) const {
  auto v = find(normal);
  if (!v) throw InputError("word outside ball of radius " + std::to_string(radius_));
  return *v;
}

CayleyBall build_ball(const GroupSpec& G, int radius) {
  if (radius < 0) throw InputError("negative ball radius");
  int cap = 0;
  switch (G.family()) {
    case Family::free_group: cap = kMaxFreeRadius; break;
    case Family::free_abelian: cap = kMaxAbelianRadius; break;
    case Family::surface: cap = kMaxSurfaceRadius; break;
  }
  if (radius > cap)
    throw SizeError("ball radius " + std::to_string(radius) + " exceeds the " + G.name() +
                    " bound " + std::to_string(cap));

  CayleyBall ball(G, radius);
  ball.vertices_.push_back(Word::identity());
  ball.index_.emplace(Word::identity().key(), 0);
  std::vector<std::uint32_t> shell{0};
  for (int d = 1; d <= radius; ++d) {
    std::vector<Word> next;
    for (std::uint32_t v : shell) {
      for (int code = 0; code < G.alphabet_size(); ++code) {
        Word w = G.product(ball.vertices_[v], Word({static_cast<Letter>(code)}));
        if (static_cast<int>(w.length()) != d) continue;  // stayed inside or fell back
        if (ball.index_.count(w.key())) continue;
        ball.index_.emplace(w.key(), 0);  // placeholder to dedupe within the shell
        next.push_back(std::move(w));
      }
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    std::vector<std::uint32_t> new_shell;
    for (auto& w : next) {
      std::uint32_t id = static_cast<std::uint32_t>(ball.vertices_.size());
      if (ball.vertices_.size() >= kMaxBallVertices)
        throw SizeError("ball exceeds the vertex budget " + std::to_string(kMaxBallVertices));
      ball.index_[w.key()] = id;
      ball.vertices_.push_back(std::move(w));
      new_shell.push_back(id);
    }
    shell = std::move(new_shell);
    if (shell.empty()) break;
  }

  ball.adj_.resize(ball.vertices_.size());
  for (std::uint32_t v = 0; v < ball.vertices_.size(); ++v) {
    for (int code = 0; code < G.alphabet_size(); ++code) {
      Word w = G.product(ball.vertices_[v], Word({static_cast<Letter>(code)}));
      auto u = ball.find(w);
      if (u && *u != v) ball.adj_[v].push_back(*u);
    }
    auto& a = ball.adj_[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return ball;
}

}  // namespace ccx
