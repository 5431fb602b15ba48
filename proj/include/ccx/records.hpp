#pragma once

#include <string>

#include <json.hpp>

#include "ccx/aisets.hpp"
#include "ccx/ccomplex.hpp"
#include "ccx/group.hpp"
#include "ccx/regnbhd.hpp"
#include "ccx/stallings.hpp"
#include "ccx/subgroup.hpp"

namespace ccx::records {

// Insertion-ordered JSON keeps records byte-stable across runs.
using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ccx-record/1";

std::string to_string(TriBool t);
std::string to_string(Finiteness f);
std::string to_string(OracleMode m);
std::string to_string(EvidenceKind k);
std::string to_string(SplitOutcome o);

json word_list(const GroupSpec& G, const std::vector<Word>& words);
json profile(const FinitenessProfile& p);
json evidence(const GroupSpec& G, const IntersectionEvidence& e);
json subgroup_graph(const GroupSpec& G, const SubgroupGraph& g);
json intersection(const GroupSpec& G, const IntersectionReport& r);
json ccomplex(const GroupSpec& G, const CComplex& c);
json components(const ComponentReport& r);
json boundary(const BoundaryReport& r);
json nontriviality(const NontrivialityReport& r);
json corner_quad(const CornerQuad& q);
json crossing(const CrossingReport& r);
json coend(const CoendReport& r);
json condition_star(const ConditionStarReport& r);
json family(const TranslateFamily& F);
json crossing_graph(const CrossingGraph& g);
json partition(const CCCPartition& p);
json pretree_check(const PretreeCheck& c);
json bipartite_tree(const BipartiteTree& t);
json stabilizer(const GroupSpec& G, const StabilizerReport& r);
json dunwoody_check(const DunwoodyCheck& c);
json quotient(const GroupSpec& G, const QuotientSkeleton& q);
json dunwoody_tree(const DunwoodyTree& t);
json split_report(const GroupSpec& G, const SplitReport& r);

// Serialized with a trailing newline, 2-space indent; this is the byte form
// compared by the determinism checks.
std::string dump(const json& record);

}  // namespace ccx::records
