#include "ccx/subgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "ccx/error.hpp"

namespace ccx {

namespace {

// Row-style Hermite normal form: returns the nonzero rows with strictly
// increasing pivot columns, positive pivots, and entries above each pivot
// reduced into [0, pivot).
std::vector<std::vector<long long>> hermite_rows(std::vector<std::vector<long long>> rows, int cols) {
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool lone = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        long long q = rows[i][c] / rows[r][c];
        for (int j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) lone = false;
      }
      if (lone) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0) {
        for (int j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
      }
      for (std::size_t i = 0; i < r; ++i) {
        long long q = rows[i][c] / rows[r][c];
        if (rows[i][c] % rows[r][c] < 0) q -= 1;
        if (q == 0) continue;
        for (int j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

std::vector<int> pivot_columns(const std::vector<std::vector<long long>>& hnf, int cols) {
  std::vector<int> pivots;
  for (const auto& row : hnf) {
    for (int c = 0; c < cols; ++c) {
      if (row[c] != 0) {
        pivots.push_back(c);
        break;
      }
    }
  }
  return pivots;
}

// Reduces x by the HNF rows. In exact mode returns nullopt unless every pivot
// coefficient divides cleanly (membership test); otherwise floors, producing
// the canonical coset residue.
std::optional<std::vector<long long>> reduce_by_hnf(const std::vector<std::vector<long long>>& hnf,
                                                    const std::vector<int>& pivots,
                                                    std::vector<long long> x, bool exact) {
  for (std::size_t i = 0; i < hnf.size(); ++i) {
    long long p = hnf[i][pivots[i]];
    long long v = x[pivots[i]];
    long long q = v / p;
    if (exact) {
      if (v % p != 0) return std::nullopt;
    } else if (v % p < 0) {
      q -= 1;
    }
    if (q == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= q * hnf[i][j];
  }
  if (exact) {
    for (long long v : x) {
      if (v != 0) return std::nullopt;
    }
  }
  return x;
}

std::string join_numbers(const std::vector<long long>& v) {
  std::string out;
  for (long long n : v) {
    out += std::to_string(n);
    out += ',';
  }
  return out;
}

}  // namespace

Subgroup::Subgroup(GroupSpec group, std::vector<Word> generators, int surface_cap)
    : group_(std::move(group)), surface_cap_(surface_cap) {
  for (const Word& g : generators) {
    Word nf = group_.normal_form(g);
    if (!nf.empty()) generators_.push_back(std::move(nf));
  }
  trivial_ = generators_.empty();

  switch (group_.family()) {
    case Family::free_group:
      graph_ = SubgroupGraph::fold(generators_, group_);
      trivial_ = graph_->is_trivial();
      break;
    case Family::free_abelian: {
      std::vector<std::vector<long long>> rows;
      for (const Word& g : generators_) rows.push_back(group_.exponents(g));
      hnf_ = hermite_rows(std::move(rows), group_.rank());
      pivots_ = pivot_columns(hnf_, group_.rank());
      trivial_ = hnf_.empty();
      break;
    }
    case Family::surface: {
      if (surface_cap_ <= 0) throw InputError("surface subgroups need a positive element cap");
      std::vector<Word> step;
      for (const Word& g : generators_) {
        step.push_back(g);
        step.push_back(group_.inverse(g));
      }
      elements_.push_back(Word::identity());
      element_keys_.insert(Word::identity().key());
      std::deque<Word> frontier(elements_.begin(), elements_.end());
      while (!frontier.empty()) {
        Word h = std::move(frontier.front());
        frontier.pop_front();
        for (const Word& s : step) {
          Word next = group_.product(h, s);
          if (next.length() > static_cast<std::size_t>(surface_cap_)) continue;
          if (!element_keys_.insert(next.key()).second) continue;
          if (element_keys_.size() > kMaxSubgroupElements) {
            throw SizeError("surface subgroup element enumeration exceeds " +
                            std::to_string(kMaxSubgroupElements) + " elements");
          }
          elements_.push_back(next);
          frontier.push_back(std::move(next));
        }
      }
      std::sort(elements_.begin(), elements_.end(), shortlex_less);
      break;
    }
  }
}

bool Subgroup::contains(const Word& w) const {
  switch (group_.family()) {
    case Family::free_group:
      return graph_->accepts(group_.normal_form(w));
    case Family::free_abelian:
      return reduce_by_hnf(hnf_, pivots_, group_.exponents(w), true).has_value();
    case Family::surface:
      return element_keys_.count(group_.normal_form(w).key()) != 0;
  }
  return false;
}

bool Subgroup::contains_conjugate(const Word& g, const Word& w) const {
  if (group_.family() == Family::free_abelian) return contains(w);
  return contains(group_.product(group_.product(group_.inverse(g), w), g));
}

std::string Subgroup::right_coset_key(const Word& g) const {
  switch (group_.family()) {
    case Family::free_group: {
      Word nf = group_.normal_form(g);
      int at = SubgroupGraph::basepoint();
      for (std::size_t i = 0; i < nf.length(); ++i) {
        int next = graph_->step(at, nf.letters()[i]);
        if (next == SubgroupGraph::kNone) {
          std::string key = "t:" + std::to_string(at) + ":";
          for (std::size_t j = i; j < nf.length(); ++j) key += static_cast<char>('0' + nf.letters()[j]);
          return key;
        }
        at = next;
      }
      return "v:" + std::to_string(at);
    }
    case Family::free_abelian: {
      auto residue = reduce_by_hnf(hnf_, pivots_, group_.exponents(g), false);
      return "r:" + join_numbers(*residue);
    }
    case Family::surface: {
      Word best = group_.normal_form(g);
      for (const Word& h : elements_) {
        Word cand = group_.product(h, g);
        if (shortlex_less(cand, best)) best = std::move(cand);
      }
      return "s:" + best.key();
    }
  }
  return {};
}

std::string Subgroup::left_coset_key(const Word& g) const { return right_coset_key(group_.inverse(g)); }

Ends Subgroup::ends() const {
  if (trivial_) return Ends::zero;
  switch (group_.family()) {
    case Family::free_group:
      return graph_->cycle_rank() == 1 ? Ends::two : Ends::infinitely_many;
    case Family::free_abelian:
      return lattice_rank() == 1 ? Ends::two : Ends::one;
    case Family::surface: {
      for (std::size_t i = 0; i < generators_.size(); ++i) {
        for (std::size_t j = i + 1; j < generators_.size(); ++j) {
          Word comm = group_.product(group_.product(generators_[i], generators_[j]),
                                     group_.inverse(group_.product(generators_[j], generators_[i])));
          if (!comm.empty()) {
            throw UnsupportedFamilyError("ends of a noncommutative surface subgroup are not determined here");
          }
        }
      }
      return Ends::two;
    }
  }
  return Ends::zero;
}

const SubgroupGraph& Subgroup::graph() const {
  if (group_.family() != Family::free_group) {
    throw UnsupportedFamilyError("subgroup graphs exist for free ambients only");
  }
  return *graph_;
}

int Subgroup::lattice_rank() const {
  if (group_.family() != Family::free_abelian) {
    throw UnsupportedFamilyError("lattice rank exists for free-abelian ambients only");
  }
  return static_cast<int>(hnf_.size());
}

const std::vector<std::vector<long long>>& Subgroup::lattice_basis() const {
  if (group_.family() != Family::free_abelian) {
    throw UnsupportedFamilyError("lattice bases exist for free-abelian ambients only");
  }
  return hnf_;
}

const std::vector<Word>& Subgroup::bounded_elements() const {
  if (group_.family() != Family::surface) {
    throw UnsupportedFamilyError("bounded element lists exist for surface ambients only");
  }
  return elements_;
}

int abelian_intersection_rank(const Subgroup& A, const Subgroup& B) {
  if (A.group().family() != Family::free_abelian || B.group().family() != Family::free_abelian ||
      A.group().rank() != B.group().rank()) {
    throw AmbientMismatchError("lattice intersection rank needs a common free-abelian ambient");
  }
  int cols = A.group().rank();
  std::vector<std::vector<long long>> stacked = A.lattice_basis();
  for (const auto& row : B.lattice_basis()) stacked.push_back(row);
  int sum_rank = static_cast<int>(hermite_rows(std::move(stacked), cols).size());
  return A.lattice_rank() + B.lattice_rank() - sum_rank;
}

}  // namespace ccx
