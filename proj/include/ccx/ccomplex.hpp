#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccx/group.hpp"
#include "ccx/subgroup.hpp"

namespace ccx {

// How pairwise-infinite-intersection questions are decided: exactly through
// fiber products of folded graphs (free ambients only), or by searching the
// truncated ball for a nontrivial common element.
enum class OracleMode { exact, witness_bounded };

// One coset gH meeting the ball, named by its ShortLex-least element.
struct Coset {
  Word representative;
  std::vector<std::uint32_t> ball_vertices;  // ascending ball vertex ids
};

enum class EvidenceKind {
  infinite_with_certificate,  // exact: intersection of conjugates is infinite
  infinite_with_witness,      // bounded: a nontrivial common element was found
  no_witness_up_to,           // bounded: no common element within the ball
  trivial_exact,              // exact: intersection of conjugates is trivial
};

struct IntersectionEvidence {
  EvidenceKind kind;
  std::optional<Word> element;  // the certificate or witness element
  int searched_radius = 0;      // ball radius examined (bounded verdicts)
};

struct CComplexEdge {
  int u, v;  // coset indices, u < v
  IntersectionEvidence evidence;
};

struct CComplexCell {
  std::vector<int> vertices;  // ascending coset indices, size = dimension + 1
  IntersectionEvidence evidence;
};

// Truncation of the complex whose vertices are cosets gH and whose simplices
// are coset tuples with a common infinite intersection of the conjugates
// g_i H g_i^-1.
struct CComplex {
  OracleMode mode;
  int radius = 0;
  int dim_cap = 1;
  std::vector<Coset> vertices;
  std::vector<CComplexEdge> edges;
  // higher_cells[k] holds the cells of dimension k + 2.
  std::vector<std::vector<CComplexCell>> higher_cells;
};

// All cosets gH meeting the ball, in ShortLex order of their representatives.
// For surface ambients the subgroup's element cap must be at least twice the
// ball radius, which makes the grouping exact on the ball.
std::vector<Coset> enumerate_cosets(const Subgroup& H, const CayleyBall& ball);

// Whether gHg^-1 and kHk^-1 share an infinite subgroup. Requires gH != kH
// (PreconditionError otherwise). Exact mode needs a free ambient.
IntersectionEvidence infinite_intersection(const Subgroup& H, const Word& g, const Word& k,
                                           OracleMode mode, const CayleyBall& ball);

// Builds the truncated complex: cosets, edges with per-edge evidence, and
// higher cells up to dim_cap (at most 4), each carrying its own evidence.
// Cells are only attached once all their faces are present, so the result is
// simplicially closed by construction.
CComplex build_ccomplex(const Subgroup& H, const CayleyBall& ball, int dim_cap, OracleMode mode);

struct ComponentReport {
  std::vector<int> component_of;  // per coset index, labels are 0..count-1
  int count = 0;
  bool is_connected = false;
  bool is_totally_disconnected = false;
  bool at_truncation = false;  // verdicts are relative to the ball in bounded mode
};

ComponentReport connected_components(const CComplex& complex);

}  // namespace ccx
