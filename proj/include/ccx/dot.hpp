#pragma once

#include <string>

#include "ccx/ccomplex.hpp"
#include "ccx/group.hpp"
#include "ccx/regnbhd.hpp"
#include "ccx/stallings.hpp"

namespace ccx {

// DOT renderings of the graph-shaped results. All identifiers and labels are
// emitted as quoted strings with the two DOT escapes applied, so the output
// parses under the standard grammar regardless of the words inside.

// Folded subgroup graph: directed, one edge per positive letter, basepoint
// drawn with a double circle.
std::string dot_subgroup_graph(const SubgroupGraph& g, const GroupSpec& G, const std::string& name);

// Coset complex 1-skeleton: undirected, vertices labeled by coset
// representatives, edges by their evidence kind.
std::string dot_ccomplex(const CComplex& c, const GroupSpec& G, const std::string& name);

// Crossing graph on family members.
std::string dot_crossing_graph(const CrossingGraph& g, const TranslateFamily& F,
                               const std::string& name);

// Bipartite tree: circles for pretree points, boxes for stars.
std::string dot_bipartite_tree(const BipartiteTree& t, const std::string& name);

// Tree with one edge per family member, labeled by the member's description.
std::string dot_dunwoody_tree(const DunwoodyTree& t, const TranslateFamily& F,
                              const std::string& name);

// Quotient skeleton: directed multigraph on vertex orbits, edges labeled by
// representative member and stabilizer basis.
std::string dot_quotient(const QuotientSkeleton& q, const TranslateFamily& F, const GroupSpec& G,
                         const std::string& name);

}  // namespace ccx
