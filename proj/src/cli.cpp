#include "ccx/cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ccx/aisets.hpp"
#include "ccx/ccomplex.hpp"
#include "ccx/dot.hpp"
#include "ccx/error.hpp"
#include "ccx/group.hpp"
#include "ccx/instance_spec.hpp"
#include "ccx/records.hpp"
#include "ccx/regnbhd.hpp"
#include "ccx/stallings.hpp"
#include "ccx/subgroup.hpp"

namespace ccx {

namespace {

using records::json;

struct Options {
  std::string spec_path;
  std::string group_arg;
  int radius = -1;
  int translate_radius = -1;
  int window = -1;
  int dim_cap = -1;
  int max_n = 6;
  std::string mode;
  std::string name;
  std::string with;
  std::string word;
  std::string out;
  long long seed = 0;
  bool assume_one_end = false;
};

InstanceSpec load_spec(const Options& o) {
  if (!o.spec_path.empty() && !o.group_arg.empty())
    throw InputError("give --spec or --group, not both");
  if (!o.spec_path.empty()) {
    std::ifstream in(o.spec_path, std::ios::binary);
    if (!in) throw InputError("cannot read spec file '" + o.spec_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
  }
  if (o.group_arg.empty()) throw InputError("give --spec FILE or --group FAMILY:N");
  std::size_t colon = o.group_arg.find(':');
  if (colon == std::string::npos)
    throw InputError("--group wants FAMILY:N, for example free:2 or abelian:2");
  std::string family = o.group_arg.substr(0, colon);
  std::string count = o.group_arg.substr(colon + 1);
  std::string text = "[group]\nfamily = " + family + "\n" +
                     (family == "surface" ? "genus = " : "rank = ") + count + "\n";
  return parse_spec(text);
}

void apply_overrides(InstanceSpec& spec, const Options& o) {
  auto& r = spec.run;
  if (o.radius >= 0) r.radius = o.radius;
  if (o.translate_radius >= 0) r.translate_radius = o.translate_radius;
  if (o.window >= 0) r.window = o.window;
  if (o.dim_cap >= 0) r.dim_cap = o.dim_cap;
  if (!o.mode.empty()) r.mode = o.mode;
  // A --radius override shrinks dependent radii that were not themselves
  // overridden, so lowering the ball does not dead-end on stale defaults.
  if (o.radius >= 0 && o.translate_radius < 0 && r.translate_radius >= r.radius)
    r.translate_radius = r.radius - 1;
  if (o.radius >= 0 && o.window < 0 && r.window > r.radius) r.window = r.radius;
  if (r.mode != "exact" && r.mode != "witness-bounded")
    throw InputError("mode must be exact or witness-bounded, got '" + r.mode + "'");
  if (r.radius < 1 || r.radius > 12) throw InputError("radius must be between 1 and 12");
  if (r.translate_radius < 0 || r.translate_radius >= r.radius)
    throw InputError("translate_radius must be between 0 and radius - 1");
  if (r.window < 1 || r.window > r.radius) throw InputError("window must be between 1 and radius");
  if (r.dim_cap < 1 || r.dim_cap > 4) throw InputError("dim_cap must be between 1 and 4");
}

// Shared lazily built state for one command.
struct Ctx {
  InstanceSpec spec;
  GroupSpec G;
  std::shared_ptr<const CayleyBall> ball_;
  std::vector<std::pair<std::string, std::shared_ptr<const Subgroup>>> subgroup_cache;

  explicit Ctx(InstanceSpec s) : spec(std::move(s)), G(spec.group()) {}

  int surface_cap() const { return 2 * spec.run.radius; }

  const std::shared_ptr<const CayleyBall>& ball() {
    if (!ball_) ball_ = std::make_shared<const CayleyBall>(build_ball(G, spec.run.radius));
    return ball_;
  }

  std::shared_ptr<const Subgroup> subgroup(const std::string& name) {
    for (const auto& [n, s] : subgroup_cache)
      if (n == name) return s;
    const auto& decl = spec.subgroup_named(name);
    auto sub = std::make_shared<const Subgroup>(G, spec.generator_words(decl),
                                                G.family() == Family::surface ? surface_cap() : 0);
    subgroup_cache.emplace_back(name, sub);
    return sub;
  }

  AISet set(const std::string& name) {
    const auto& decl = spec.aiset_named(name);
    return materialize(spec.rule_of(decl), ball(), subgroup(decl.subgroup));
  }

  // Every declared set, materialized in declaration order.
  std::vector<AISet> all_sets() {
    if (spec.aisets.empty()) throw InputError("the spec declares no aiset blocks");
    std::vector<AISet> sets;
    sets.reserve(spec.aisets.size());
    for (const auto& d : spec.aisets) sets.push_back(set(d.name));
    return sets;
  }

  // The single declared name when --name was omitted and only one candidate exists.
  std::string pick(const std::string& given, bool want_aiset) const {
    if (!given.empty()) return given;
    if (want_aiset && spec.aisets.size() == 1) return spec.aisets.front().name;
    if (!want_aiset && spec.subgroups.size() == 1) return spec.subgroups.front().name;
    throw InputError(std::string("give --name: the spec declares ") +
                     (want_aiset ? "no unique aiset" : "no unique subgroup"));
  }
};

SubgroupGraph folded(Ctx& ctx, const std::string& name) {
  const auto& decl = ctx.spec.subgroup_named(name);
  return SubgroupGraph::fold(ctx.spec.generator_words(decl), ctx.G);
}

std::string tri_line(const char* label, TriBool t) {
  return std::string(label) + ": " + records::to_string(t) + "\n";
}

// One command's working result; `definite` false means exit code 2.
struct Handler {
  json result;
  std::string table;
  std::vector<std::pair<std::string, std::string>> artifacts;
  bool definite = true;
};

void handle_ball(Ctx& ctx, Handler& h) {
  const auto& ball = *ctx.ball();
  std::vector<std::size_t> sphere(static_cast<std::size_t>(ball.radius()) + 1, 0);
  for (std::uint32_t v = 0; v < ball.size(); ++v) ++sphere[static_cast<std::size_t>(ball.distance(v))];
  h.result["radius"] = ball.radius();
  h.result["size"] = ball.size();
  h.result["sphere_sizes"] = sphere;
  h.table = "ball of radius " + std::to_string(ball.radius()) + " in " + ctx.G.name() + ": " +
            std::to_string(ball.size()) + " vertices\n";
}

void handle_subgroup_fold(Ctx& ctx, const std::string& name, Handler& h) {
  SubgroupGraph g = folded(ctx, name);
  h.result["subgroup"] = name;
  h.result["graph"] = records::subgroup_graph(ctx.G, g);
  h.artifacts.emplace_back("fold_" + name + ".dot", dot_subgroup_graph(g, ctx.G, name));
  h.table = "folded graph of " + name + ": " + std::to_string(g.vertex_count()) + " vertices, " +
            std::to_string(g.edge_count()) + " edges, rank " + std::to_string(g.cycle_rank()) +
            "\n";
}

void handle_subgroup_member(Ctx& ctx, const std::string& name, const std::string& word,
                            Handler& h) {
  if (word.empty()) throw InputError("subgroup member needs --word");
  const Word w = ctx.G.parse_word(word);
  auto sub = ctx.subgroup(name);
  bool member = sub->contains(w);
  h.result["subgroup"] = name;
  h.result["word"] = ctx.G.format(ctx.G.normal_form(w));
  h.result["member"] = member;
  if (ctx.G.family() == Family::surface) h.result["element_cap"] = sub->element_cap();
  h.table = ctx.G.format(w) + (member ? " is " : " is not ") + "a member of " + name + "\n";
}

void handle_subgroup_intersect(Ctx& ctx, const std::string& name, const std::string& with,
                               Handler& h) {
  h.result["subgroup"] = name;
  h.result["with"] = with;
  if (ctx.G.family() == Family::free_group) {
    SubgroupGraph a = folded(ctx, name);
    SubgroupGraph b = folded(ctx, with);
    IntersectionReport rep = fiber_product(a, b);
    SubgroupGraph meet = intersect(a, b);
    h.result["intersection_graph"] = records::subgroup_graph(ctx.G, meet);
    h.result["fiber_product"] = records::intersection(ctx.G, rep);
    h.artifacts.emplace_back("intersect_" + name + "_" + with + ".dot",
                             dot_subgroup_graph(meet, ctx.G, name + "&" + with));
    h.table = "intersection of " + name + " and " + with + ": rank " +
              std::to_string(meet.cycle_rank()) + ", " +
              std::to_string(rep.components.size()) + " double cosets in the fiber product\n";
  } else if (ctx.G.family() == Family::free_abelian) {
    auto a = ctx.subgroup(name);
    auto b = ctx.subgroup(with);
    int rank = abelian_intersection_rank(*a, *b);
    h.result["intersection_rank"] = rank;
    h.result["rank_a"] = a->lattice_rank();
    h.result["rank_b"] = b->lattice_rank();
    h.table = "intersection of " + name + " and " + with + " has rank " + std::to_string(rank) +
              "\n";
  } else {
    throw UnsupportedFamilyError("subgroup intersect supports free and abelian ambients");
  }
}

void handle_subgroup_malnormal(Ctx& ctx, const std::string& name, Handler& h) {
  SubgroupGraph g = folded(ctx, name);
  MalnormalityReport rep = is_almost_malnormal(g, ctx.G);
  h.result["subgroup"] = name;
  h.result["almost_malnormal"] = rep.almost_malnormal;
  if (rep.witness) h.result["witness"] = ctx.G.format(*rep.witness);
  h.table = name + (rep.almost_malnormal ? " is almost malnormal" : " is not almost malnormal");
  if (rep.witness) h.table += ", witness " + ctx.G.format(*rep.witness);
  h.table += "\n";
}

void handle_subgroup_height(Ctx& ctx, const std::string& name, int max_n, Handler& h) {
  if (max_n < 1) throw InputError("--max-n must be at least 1");
  SubgroupGraph g = folded(ctx, name);
  HeightResult rep = height(g, max_n, ctx.G);
  h.result["subgroup"] = name;
  h.result["max_n"] = max_n;
  h.result["exceeded_bound"] = rep.exceeded_bound;
  if (!rep.exceeded_bound) h.result["height"] = rep.height;
  h.definite = !rep.exceeded_bound;
  h.table = rep.exceeded_bound
                ? "height of " + name + " exceeds the bound " + std::to_string(max_n) + "\n"
                : "height of " + name + ": " + std::to_string(rep.height) + "\n";
}

void handle_subgroup_commensurable(Ctx& ctx, const std::string& name, const std::string& with,
                                   Handler& h) {
  h.result["subgroup"] = name;
  h.result["with"] = with;
  bool verdict = false;
  if (ctx.G.family() == Family::free_group) {
    verdict = commensurable(folded(ctx, name), folded(ctx, with));
  } else if (ctx.G.family() == Family::free_abelian) {
    auto a = ctx.subgroup(name);
    auto b = ctx.subgroup(with);
    int meet = abelian_intersection_rank(*a, *b);
    verdict = meet == a->lattice_rank() && meet == b->lattice_rank();
    h.result["intersection_rank"] = meet;
  } else {
    throw UnsupportedFamilyError("subgroup commensurable supports free and abelian ambients");
  }
  h.result["commensurable"] = verdict;
  h.table = name + " and " + with + (verdict ? " are" : " are not") + " commensurable\n";
}

CComplex built_complex(Ctx& ctx, const std::string& name) {
  return build_ccomplex(*ctx.subgroup(name), *ctx.ball(), ctx.spec.run.dim_cap,
                        ctx.spec.oracle_mode());
}

void handle_ccomplex_build(Ctx& ctx, const std::string& name, Handler& h) {
  CComplex c = built_complex(ctx, name);
  h.result["subgroup"] = name;
  h.result["complex"] = records::ccomplex(ctx.G, c);
  h.artifacts.emplace_back("ccomplex_" + name + ".dot", dot_ccomplex(c, ctx.G, name));
  h.table = "coset complex of " + name + " at radius " + std::to_string(c.radius) + ": " +
            std::to_string(c.vertices.size()) + " cosets, " + std::to_string(c.edges.size()) +
            " edges\n";
}

void handle_ccomplex_components(Ctx& ctx, const std::string& name, Handler& h) {
  CComplex c = built_complex(ctx, name);
  ComponentReport rep = connected_components(c);
  h.result["subgroup"] = name;
  h.result["complex"] = records::ccomplex(ctx.G, c);
  h.result["components"] = records::components(rep);
  h.artifacts.emplace_back("ccomplex_" + name + ".dot", dot_ccomplex(c, ctx.G, name));
  h.definite = !rep.at_truncation;
  h.table = "coset complex of " + name + ": " + std::to_string(rep.count) + " components, " +
            (rep.is_totally_disconnected ? "totally disconnected" : "not totally disconnected") +
            (rep.at_truncation ? " (at truncation)" : "") + "\n";
}

void handle_aiset_boundary(Ctx& ctx, const std::string& name, Handler& h) {
  AISet X = ctx.set(name);
  BoundaryReport rep = boundary(X);
  h.result["aiset"] = name;
  h.result["set_size"] = X.count();
  h.result["boundary"] = records::boundary(rep);
  h.definite = rep.complete;
  h.table = "boundary of " + name + ": " + std::to_string(rep.vertices.size()) + " of " +
            std::to_string(X.count()) + " members\n";
}

void handle_aiset_profile(Ctx& ctx, const std::string& name, Handler& h) {
  AISet X = ctx.set(name);
  FinitenessProfile p = h_finiteness(X, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["profile"] = records::profile(p);
  h.definite = p.cls != Finiteness::inconclusive;
  h.table = "profile of " + name + ": " + records::to_string(p.cls) + "\n";
}

void handle_aiset_nontrivial(Ctx& ctx, const std::string& name, Handler& h) {
  AISet X = ctx.set(name);
  NontrivialityReport rep = is_nontrivial_ai_set(X, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["report"] = records::nontriviality(rep);
  h.definite = rep.nontrivial != TriBool::undecided;
  h.table = tri_line(("nontrivial almost invariant set " + name).c_str(), rep.nontrivial);
}

void handle_aiset_corners(Ctx& ctx, const std::string& name, const std::string& with, Handler& h) {
  AISet X = ctx.set(name);
  AISet Y = ctx.set(with);
  CornerQuad q = corners(X, Y, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["with"] = with;
  h.result["corners"] = records::corner_quad(q);
  for (const auto& p : q.wrt_x)
    if (p.cls == Finiteness::inconclusive) h.definite = false;
  for (const auto& p : q.wrt_y)
    if (p.cls == Finiteness::inconclusive) h.definite = false;
  std::ostringstream line;
  line << "corners of (" << name << ", " << with << "):";
  for (const auto& c : q.corner) line << " " << c.count();
  line << "\n";
  h.table = line.str();
}

void handle_aiset_cross(Ctx& ctx, const std::string& name, const std::string& with, Handler& h) {
  AISet X = ctx.set(name);
  AISet Y = ctx.set(with);
  CrossingReport rep = crosses(X, Y, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["with"] = with;
  h.result["crossing"] = records::crossing(rep);
  h.definite = rep.forward != TriBool::undecided && rep.reverse != TriBool::undecided;
  h.table = tri_line(("crosses(" + name + ", " + with + ")").c_str(), rep.forward) +
            tri_line(("crosses(" + with + ", " + name + ")").c_str(), rep.reverse);
}

void handle_aiset_leq(Ctx& ctx, const std::string& name, const std::string& with, Handler& h) {
  AISet X = ctx.set(name);
  AISet Y = ctx.set(with);
  TriBool fwd = leq(X, Y, ctx.spec.run.window);
  TriBool rev = leq(Y, X, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["with"] = with;
  h.result["leq_forward"] = records::to_string(fwd);
  h.result["leq_reverse"] = records::to_string(rev);
  h.definite = fwd != TriBool::undecided && rev != TriBool::undecided;
  h.table = tri_line((name + " <= " + with).c_str(), fwd) +
            tri_line((with + " <= " + name).c_str(), rev);
}

void handle_aiset_coend(Ctx& ctx, const std::string& name, Handler& h) {
  AISet X = ctx.set(name);
  CoendReport rep = coend_witness(X, ctx.spec.run.window);
  h.result["aiset"] = name;
  h.result["coend"] = records::coend(rep);
  h.definite = rep.invariant != TriBool::undecided;
  for (const auto& c : rep.components)
    if (c.profile.cls == Finiteness::inconclusive) h.definite = false;
  h.table = "components of the complement of " + name + ": " +
            std::to_string(rep.components.size()) + ", subgroup-infinite: " +
            std::to_string(rep.h_infinite_count) + "\n";
}

TranslateFamily family_of(Ctx& ctx) {
  return build_family(ctx.all_sets(), ctx.spec.run.translate_radius, ctx.spec.run.window);
}

void family_summary(Ctx& ctx, const TranslateFamily& F, Handler& h) {
  h.result["family"] = records::family(F);
  h.table += "translate family: " + std::to_string(F.member_count()) + " members over " +
             std::to_string(F.bases.size()) + " base sets at translate radius " +
             std::to_string(F.translate_radius) + "\n";
}

void handle_regnbhd_cccs(Ctx& ctx, Handler& h) {
  TranslateFamily F = family_of(ctx);
  family_summary(ctx, F, h);
  CrossingGraph g = build_crossing_graph(F);
  CCCPartition p = cccs(F);
  h.result["crossing_graph"] = records::crossing_graph(g);
  h.result["partition"] = records::partition(p);
  h.artifacts.emplace_back("crossing_graph.dot", dot_crossing_graph(g, F, "crossing"));
  h.table += "crossing graph: " + std::to_string(g.edges.size()) +
             " edges, cross-connected components: " + std::to_string(p.count) + "\n";
}

void handle_regnbhd_pretree(Ctx& ctx, Handler& h) {
  TranslateFamily F = family_of(ctx);
  family_summary(ctx, F, h);
  CCCPartition p = cccs(F);
  Pretree T = pretree_from_family(F, p);
  PretreeCheck check = verify_pretree(T);
  h.result["partition"] = records::partition(p);
  h.result["points"] = T.points;
  h.result["axioms"] = records::pretree_check(check);
  h.table += "pretree on " + std::to_string(T.points) + " points: axioms " +
             (check.ok ? "pass" : ("fail at " + check.axiom)) + "\n";
}

void handle_regnbhd_tree(Ctx& ctx, Handler& h) {
  TranslateFamily F = family_of(ctx);
  family_summary(ctx, F, h);
  CCCPartition p = cccs(F);
  Pretree T = pretree_from_family(F, p);
  BipartiteTree tree = build_tree(T);
  h.result["partition"] = records::partition(p);
  h.result["tree"] = records::bipartite_tree(tree);
  h.artifacts.emplace_back("tree.dot", dot_bipartite_tree(tree, "tree"));
  h.table += "bipartite tree: " + std::to_string(tree.points) + " points, " +
             std::to_string(tree.stars.size()) + " stars, " + std::to_string(tree.edges.size()) +
             " edges\n";
}

void handle_regnbhd_dunwoody(Ctx& ctx, Handler& h) {
  TranslateFamily F = family_of(ctx);
  family_summary(ctx, F, h);
  DunwoodyCheck check = verify_dunwoody(F);
  h.result["criterion"] = records::dunwoody_check(check);
  if (!check.d1 || !check.d3 || !check.d4) {
    h.table += "tree criterion fails\n";
    return;
  }
  if (!check.intervals_stable) {
    h.definite = false;
    h.table += "intervals not stable at this truncation\n";
    return;
  }
  DunwoodyTree t = dunwoody_tree(F, check);
  h.result["tree"] = records::dunwoody_tree(t);
  h.result["quotient"] = records::quotient(ctx.G, t.quotient);
  h.artifacts.emplace_back("dunwoody_tree.dot", dot_dunwoody_tree(t, F, "dunwoody"));
  h.artifacts.emplace_back("quotient.dot", dot_quotient(t.quotient, F, ctx.G, "quotient"));
  h.table += "tree criterion passes: tree with " + std::to_string(t.vertex_count) +
             " vertices, quotient with " + std::to_string(t.quotient.edge_orbits) +
             " edge orbits\n";
}

void handle_pipeline_split(Ctx& ctx, bool assume_one_end, Handler& h) {
  if (ctx.spec.aisets.empty()) throw InputError("the spec declares no aiset blocks");
  std::vector<SplitBase> bases;
  for (const auto& d : ctx.spec.aisets) {
    SplitBase base;
    base.rule = ctx.spec.rule_of(d);
    base.subgroup_generators = ctx.spec.generator_words(ctx.spec.subgroup_named(d.subgroup));
    bases.push_back(std::move(base));
  }
  SplitOptions opt;
  opt.ball_radius = ctx.spec.run.radius;
  opt.translate_radius = ctx.spec.run.translate_radius;
  opt.window = ctx.spec.run.window;
  opt.dim_cap = ctx.spec.run.dim_cap;
  opt.mode = ctx.spec.oracle_mode();
  opt.assume_one_end = assume_one_end;
  SplitReport rep = split_pipeline(ctx.G, bases, opt);
  h.result["report"] = records::split_report(ctx.G, rep);
  h.definite = rep.outcome != SplitOutcome::inconclusive_at_truncation;
  if (rep.tree.points > 0) h.artifacts.emplace_back("tree.dot", dot_bipartite_tree(rep.tree, "tree"));
  if (rep.dtree_built) {
    h.artifacts.emplace_back("dunwoody_tree.dot",
                             dot_dunwoody_tree(rep.dtree, rep.family, "dunwoody"));
    h.artifacts.emplace_back("quotient.dot",
                             dot_quotient(rep.dtree.quotient, rep.family, ctx.G, "quotient"));
  }
  h.table = "pipeline outcome: " + records::to_string(rep.outcome) + "\n";
  for (const auto& note : rep.notes) h.table += "note: " + note + "\n";
}

std::string join_args(const json& arguments) {
  std::string out;
  for (const auto& [k, v] : arguments.items()) {
    out += " ";
    out += k;
    out += "=";
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult result;
  Options o;

  CLI::App app{"coset complexes and splittings of groups", "ccx"};
  app.require_subcommand(0);
  auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--spec", o.spec_path, "instance spec file");
    cmd->add_option("--group", o.group_arg, "ambient group FAMILY:N, instead of --spec");
    cmd->add_option("--radius", o.radius, "ball radius override");
    cmd->add_option("--translate-radius", o.translate_radius, "translating ball radius override");
    cmd->add_option("--window", o.window, "finiteness window override");
    cmd->add_option("--dim-cap", o.dim_cap, "complex dimension cap override");
    cmd->add_option("--mode", o.mode, "oracle mode: exact or witness-bounded");
    cmd->add_option("--seed", o.seed, "seed recorded in the output");
    cmd->add_option("--out", o.out, "directory for the record and DOT artifacts");
    cmd->add_option("--name", o.name, "subgroup or aiset name");
    cmd->add_option("--with", o.with, "second subgroup or aiset name");
    cmd->add_option("--word", o.word, "word argument");
    cmd->add_option("--max-n", o.max_n, "height search bound");
    cmd->add_flag("--assume-one-end", o.assume_one_end,
                  "run the pipeline even when the ambient group has more than one end");
  };
  add_shared(&app);

  std::vector<std::string> leaf_names;
  auto add_leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    cmd->fallthrough();
    return cmd;
  };

  add_leaf(&app, "ball", "build a Cayley ball and report its profile");
  CLI::App* sub = add_leaf(&app, "subgroup", "subgroup calculus");
  add_leaf(sub, "fold", "fold the generators into a subgroup graph");
  add_leaf(sub, "member", "membership of --word");
  add_leaf(sub, "intersect", "intersection with --with");
  add_leaf(sub, "malnormal", "almost malnormality");
  add_leaf(sub, "height", "height up to --max-n");
  add_leaf(sub, "commensurable", "commensurability with --with");
  CLI::App* ccx = add_leaf(&app, "ccomplex", "coset complex");
  add_leaf(ccx, "build", "build the truncated complex");
  add_leaf(ccx, "components", "connected components of the complex");
  CLI::App* ai = add_leaf(&app, "aiset", "almost invariant sets");
  add_leaf(ai, "boundary", "vertex boundary");
  add_leaf(ai, "profile", "finiteness profile");
  add_leaf(ai, "nontrivial", "nontriviality audit");
  add_leaf(ai, "corners", "corner profiles with --with");
  add_leaf(ai, "cross", "crossing verdict with --with");
  add_leaf(ai, "leq", "partial order against --with");
  add_leaf(ai, "coend", "components of the complement");
  CLI::App* rn = add_leaf(&app, "regnbhd", "translate families and trees");
  add_leaf(rn, "cccs", "cross-connected components");
  add_leaf(rn, "pretree", "pretree and its axioms");
  add_leaf(rn, "tree", "bipartite tree of the pretree");
  add_leaf(rn, "dunwoody", "tree criterion and the tree it yields");
  CLI::App* pipe = add_leaf(&app, "pipeline", "end-to-end runs");
  add_leaf(pipe, "split", "search for a splitting");

  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    const CLI::App* walk = &app;
    while (!walk->get_subcommands().empty()) {
      walk = walk->get_subcommands().front();
      if (!command.empty()) command += " ";
      command += walk->get_name();
    }
  } catch (const CLI::CallForHelp&) {
    result.table = app.help();
    json record;
    record["schema"] = records::kSchema;
    record["command"] = "help";
    record["status"] = "help";
    result.record = records::dump(record);
    return result;
  } catch (const CLI::ParseError& e) {
    json record;
    record["schema"] = records::kSchema;
    record["status"] = "error";
    record["error_kind"] = "usage";
    record["error"] = e.what();
    result.record = records::dump(record);
    result.table = std::string(e.what()) + "\n";
    result.exit_code = 1;
    return result;
  }

  result.out_dir = o.out;

  json record;
  record["schema"] = records::kSchema;
  record["command"] = command.empty() ? "help" : command;

  auto finish_error = [&](const char* kind, const std::string& what) {
    record["status"] = "error";
    record["error_kind"] = kind;
    record["error"] = what;
    result.record = records::dump(record);
    result.table = std::string(kind) + ": " + what + "\n";
    result.exit_code = 1;
    return result;
  };

  try {
    if (command.empty()) {
      result.table = app.help();
      record["status"] = "help";
      result.record = records::dump(record);
      return result;
    }

    InstanceSpec spec = load_spec(o);
    apply_overrides(spec, o);
    Ctx ctx(std::move(spec));

    record["group"] = ctx.G.name();
    record["spec"] = serialize_spec(ctx.spec);
    record["options"] = {{"radius", ctx.spec.run.radius},
                         {"translate_radius", ctx.spec.run.translate_radius},
                         {"window", ctx.spec.run.window},
                         {"dim_cap", ctx.spec.run.dim_cap},
                         {"mode", ctx.spec.run.mode},
                         {"seed", o.seed}};
    json arguments = json::object();
    if (!o.name.empty()) arguments["name"] = o.name;
    if (!o.with.empty()) arguments["with"] = o.with;
    if (!o.word.empty()) arguments["word"] = o.word;
    if (command == "subgroup height") arguments["max_n"] = o.max_n;
    if (o.assume_one_end) arguments["assume_one_end"] = true;

    Handler h;
    if (command == "ball") {
      handle_ball(ctx, h);
    } else if (command == "subgroup fold") {
      handle_subgroup_fold(ctx, ctx.pick(o.name, false), h);
    } else if (command == "subgroup member") {
      handle_subgroup_member(ctx, ctx.pick(o.name, false), o.word, h);
    } else if (command == "subgroup intersect") {
      if (o.with.empty()) throw InputError("subgroup intersect needs --with");
      handle_subgroup_intersect(ctx, ctx.pick(o.name, false), o.with, h);
    } else if (command == "subgroup malnormal") {
      handle_subgroup_malnormal(ctx, ctx.pick(o.name, false), h);
    } else if (command == "subgroup height") {
      handle_subgroup_height(ctx, ctx.pick(o.name, false), o.max_n, h);
    } else if (command == "subgroup commensurable") {
      if (o.with.empty()) throw InputError("subgroup commensurable needs --with");
      handle_subgroup_commensurable(ctx, ctx.pick(o.name, false), o.with, h);
    } else if (command == "ccomplex build") {
      handle_ccomplex_build(ctx, ctx.pick(o.name, false), h);
    } else if (command == "ccomplex components") {
      handle_ccomplex_components(ctx, ctx.pick(o.name, false), h);
    } else if (command == "aiset boundary") {
      handle_aiset_boundary(ctx, ctx.pick(o.name, true), h);
    } else if (command == "aiset profile") {
      handle_aiset_profile(ctx, ctx.pick(o.name, true), h);
    } else if (command == "aiset nontrivial") {
      handle_aiset_nontrivial(ctx, ctx.pick(o.name, true), h);
    } else if (command == "aiset corners") {
      if (o.with.empty()) throw InputError("aiset corners needs --with");
      handle_aiset_corners(ctx, ctx.pick(o.name, true), o.with, h);
    } else if (command == "aiset cross") {
      if (o.with.empty()) throw InputError("aiset cross needs --with");
      handle_aiset_cross(ctx, ctx.pick(o.name, true), o.with, h);
    } else if (command == "aiset leq") {
      if (o.with.empty()) throw InputError("aiset leq needs --with");
      handle_aiset_leq(ctx, ctx.pick(o.name, true), o.with, h);
    } else if (command == "aiset coend") {
      handle_aiset_coend(ctx, ctx.pick(o.name, true), h);
    } else if (command == "regnbhd cccs") {
      handle_regnbhd_cccs(ctx, h);
    } else if (command == "regnbhd pretree") {
      handle_regnbhd_pretree(ctx, h);
    } else if (command == "regnbhd tree") {
      handle_regnbhd_tree(ctx, h);
    } else if (command == "regnbhd dunwoody") {
      handle_regnbhd_dunwoody(ctx, h);
    } else if (command == "pipeline split") {
      handle_pipeline_split(ctx, o.assume_one_end, h);
    } else {
      throw InputError("'" + command + "' needs a subcommand; see ccx --help");
    }

    record["arguments"] = std::move(arguments);
    record["result"] = std::move(h.result);
    json artifact_names = json::array();
    for (const auto& [file, text] : h.artifacts) {
      (void)text;
      artifact_names.push_back(file);
    }
    record["artifacts"] = std::move(artifact_names);
    record["status"] = h.definite ? "definite" : "inconclusive-at-truncation";
    result.record = records::dump(record);
    result.table = "ccx " + command + join_args(record["arguments"]) + "\n" + h.table;
    result.artifacts = std::move(h.artifacts);
    result.exit_code = h.definite ? 0 : 2;
    return result;
  } catch (const InconclusiveError& e) {
    record["status"] = "inconclusive-at-truncation";
    record["detail"] = e.what();
    result.record = records::dump(record);
    result.table = std::string("inconclusive at this truncation: ") + e.what() + "\n";
    result.exit_code = 2;
    return result;
  } catch (const SpecParseError& e) {
    return finish_error("spec-parse", e.what());
  } catch (const SizeError& e) {
    return finish_error("size", e.what());
  } catch (const PreconditionError& e) {
    return finish_error("precondition", e.what());
  } catch (const UnsupportedFamilyError& e) {
    return finish_error("unsupported-family", e.what());
  } catch (const AmbientMismatchError& e) {
    return finish_error("ambient-mismatch", e.what());
  } catch (const InputError& e) {
    return finish_error("input", e.what());
  } catch (const Error& e) {
    return finish_error("internal", e.what());
  } catch (const std::exception& e) {
    return finish_error("unexpected", e.what());
  }
}

}  // namespace ccx
