#pragma once

// The homcount command line. run() is kept separate from main() so the test
// suite can drive it in-process.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "homcount/acceptance.hpp"
#include "homcount/homcount.hpp"
#include "homcount/textio.hpp"

namespace homcount::cli {

enum Exit : int { ok = 0, differ = 1, usage = 2, cap = 3 };

namespace detail {

inline const std::map<std::string, MorphismClass>& morphism_classes() {
  static const std::map<std::string, MorphismClass> m{{"hom", MorphismClass::hom},
                                                      {"mono", MorphismClass::mono},
                                                      {"strong-mono", MorphismClass::strong_mono},
                                                      {"surjection", MorphismClass::surjection},
                                                      {"quotient", MorphismClass::quotient}};
  return m;
}

inline const std::map<std::string, FactorisationSystem>& systems() {
  static const std::map<std::string, FactorisationSystem> m{{"se-m", FactorisationSystem::se_m},
                                                            {"e-sm", FactorisationSystem::e_sm}};
  return m;
}

inline const std::map<std::string, Side>& sides() {
  static const std::map<std::string, Side> m{{"right", Side::right}, {"left", Side::left}};
  return m;
}

// Test families for profiles and distinguishing: `auto` restricts to
// undirected graphs when every input is one.
enum class Family { automatic, all, undirected };

inline const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> m{
      {"auto", Family::automatic}, {"all", Family::all}, {"undirected", Family::undirected}};
  return m;
}

inline StructureClass resolve(Family f, std::initializer_list<const Structure*> inputs) {
  if (f == Family::all) return StructureClass::all;
  if (f == Family::undirected) return StructureClass::undirected_graphs;
  for (const auto* s : inputs)
    if (!is_undirected_graph(*s)) return StructureClass::all;
  return StructureClass::undirected_graphs;
}

struct Loader {
  std::map<std::string, Document> docs;

  const Document& doc(const std::string& path) {
    auto it = docs.find(path);
    if (it == docs.end()) it = docs.emplace(path, parse_document(read_file(path))).first;
    return it->second;
  }
  const Named<Structure>& structure(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    return select_block(doc(ref.path).structures, ref, "structure");
  }
  const Named<FiniteTree>& tree(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    return select_block(doc(ref.path).trees, ref, "tree");
  }
  const Named<RationalTreeSpec>& tree_spec(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    return select_block(doc(ref.path).tree_specs, ref, "rtree");
  }
  const Named<FiniteGroup>& group(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    return select_block(doc(ref.path).groups, ref, "group");
  }
  const Named<Tower>& tower(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    return select_block(doc(ref.path).towers, ref, "tower");
  }
  // Every group in the file, or the one block named.
  std::vector<FiniteGroup> groups(const std::string& arg) {
    const auto ref = FileRef::parse(arg);
    std::vector<FiniteGroup> out;
    if (ref.name) {
      out.push_back(group(arg).value);
    } else {
      for (const auto& g : doc(ref.path).groups) out.push_back(g.value);
      if (out.empty()) throw InvalidArgument("no group in '" + ref.path + "'");
    }
    return out;
  }
};

inline std::string kernel_text(const Partition& p) { return p.to_string(); }

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace detail;
  CLI::App app{"Homomorphism-counting laboratory for finite relational structures, rooted trees and "
               "towers of finite groups.",
               "homcount"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string cls_name = "hom", sys_name = "se-m", side_name = "right", family_name = "auto";
  std::size_t budget = 3, k = 2, depth = 3;
  std::optional<std::size_t> limit;
  std::string level = "desk";
  std::vector<std::string> inputs;
  std::size_t stirling_n = 0;
  std::optional<std::size_t> stirling_a;

  auto add_system = [&](CLI::App* c) {
    c->add_option("--system", sys_name, "Factorisation system: se-m (surjection, mono) or e-sm (quotient, strong mono)")
        ->check(CLI::IsMember(systems()));
  };
  auto add_class = [&](CLI::App* c) {
    c->add_option("--class", cls_name, "Morphism class: hom, mono, strong-mono, surjection, quotient")
        ->check(CLI::IsMember(morphism_classes()));
  };
  auto add_side = [&](CLI::App* c) {
    c->add_option("--side", side_name, "right: count hom(w, a); left: count hom(a, w)")
        ->check(CLI::IsMember(sides()));
  };
  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", family_name, "Test structures: auto, all, undirected")
        ->check(CLI::IsMember(families()));
  };
  auto add_inputs = [&](CLI::App* c, std::size_t n, const std::string& what) {
    c->add_option("inputs", inputs, what)->required()->expected(static_cast<int>(n));
  };

  auto* count = app.add_subcommand(
      "count", "Number of morphisms c -> a in the chosen class: the entries |hom(c, a)| of Lovasz's theorem.");
  add_class(count);
  add_system(count);
  count->add_option("--limit", limit, "Also list up to this many morphisms, one map per line");
  add_inputs(count, 2, "c.struct a.struct (FILE or FILE:NAME)");

  auto* profile = app.add_subcommand(
      "profile", "Hom-count profile of a over every structure up to the budget, as used in Lovasz's theorem "
                 "(both the right and the left version).");
  add_side(profile);
  add_class(profile);
  add_system(profile);
  add_family(profile);
  profile->add_option("--budget", budget, "Largest test structure")->check(CLI::PositiveNumber);
  add_inputs(profile, 1, "a.struct");

  auto* dist = app.add_subcommand(
      "distinguish", "Search for a structure whose hom counts separate a and b (Lovasz's theorem: "
                     "non-isomorphic finite structures always have one). Exit 1 when found.");
  add_side(dist);
  add_class(dist);
  add_system(dist);
  add_family(dist);
  dist->add_option("--budget", budget, "Largest test structure")->check(CLI::PositiveNumber);
  add_inputs(dist, 2, "a.struct b.struct");

  auto* iso = app.add_subcommand(
      "iso", "Decide isomorphism by counting homomorphisms from all structures no larger than the inputs "
             "(Lovasz's theorem), cross-checked against canonical forms. Exit 1 when not isomorphic.");
  add_system(iso);
  add_inputs(iso, 2, "a.struct b.struct");

  auto* mob = app.add_subcommand(
      "mobius", "Quotient poset Q(c) with its Hasse diagram and Mobius values mu(x, top); with a target a, "
                "the embedding count |emb(c, a)| = sum over quotients of mu times hom counts.");
  add_system(mob);
  mob->add_option("inputs", inputs, "c.struct [a.struct]")->required()->expected(1, 2);

  auto* kern = app.add_subcommand(
      "kernel", "Stirling kernel decomposition: hom(c, a) as a disjoint union over quotients of c of the "
                "generic morphisms out of each quotient.");
  add_system(kern);
  add_inputs(kern, 2, "c.struct a.struct");

  auto* stir = app.add_subcommand(
      "stirling", "Stirling numbers S(n, m) and the finite-set identity a^n = sum_m S(n, m) a(a-1)...(a-m+1).");
  stir->add_option("n", stirling_n, "Size of the source set")->required();
  stir->add_option("a", stirling_a, "Size of the target set");

  auto* tw = app.add_subcommand("treewidth", "Exact tree-width of the Gaifman graph.");
  tw->add_flag("--decomposition", "Also print the bags and edges of an optimal tree decomposition");
  add_inputs(tw, 1, "a.struct");

  auto* ck = app.add_subcommand(
      "ck", "Counting-logic equivalence with k variables: equal hom counts from every structure of "
            "tree-width below k (Dvorak / Dell-Grohe-Rattan), checked against Weisfeiler-Leman. Exit 1 when "
            "a witness separates the inputs.");
  ck->add_option("--k", k, "Number of variables")->check(CLI::PositiveNumber);
  ck->add_option("--budget", budget, "Largest test structure")->check(CLI::PositiveNumber);
  add_family(ck);
  add_inputs(ck, 2, "a.struct b.struct");

  auto* trees = app.add_subcommand("trees", "Rooted trees: morphism counts determine trees up to isomorphism.");
  trees->require_subcommand(1);
  auto* tcount = trees->add_subcommand("count", "Number of tree morphisms r -> p.");
  add_inputs(tcount, 2, "r.tree p.tree");
  auto* tdist = trees->add_subcommand(
      "distinguish", "Search for a finite tree whose morphism counts separate p and q. Exit 1 when found.");
  tdist->add_option("--budget", budget, "Largest test tree")->check(CLI::PositiveNumber);
  add_inputs(tdist, 2, "p.tree q.tree");
  auto* ttrunc = trees->add_subcommand(
      "truncate", "Finite truncation of a rational (finitely branching, possibly infinite) tree.");
  ttrunc->add_option("--depth", depth, "Keep nodes at depth at most this");
  add_inputs(ttrunc, 1, "spec.tree (an rtree block)");

  auto* tower = app.add_subcommand(
      "tower", "Towers of finite groups: continuous hom counts into finite groups determine topologically "
               "finitely generated profinite groups.");
  tower->require_subcommand(1);
  auto* wcount = tower->add_subcommand("count", "Continuous hom count from the tower into a finite group.");
  add_inputs(wcount, 2, "t.tower c.group");
  auto* wdist = tower->add_subcommand(
      "distinguish", "Search a family of finite groups for one whose continuous hom counts separate the "
                     "towers. Exit 1 when found.");
  add_inputs(wdist, 3, "t1.tower t2.tower family.groups");
  auto* wsurj = tower->add_subcommand(
      "surjections", "Which finite groups are continuous quotients of the tower.");
  add_inputs(wsurj, 2, "t.tower family.groups");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite: every counting theorem checked "
                                              "exhaustively on a small family. Exit 1 on any failure.");
  self->add_option("--level", level, "desk (full) or quick")->check(CLI::IsMember({"desk", "quick"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }
  const MorphismClass cls = morphism_classes().at(cls_name);
  const FactorisationSystem sys = systems().at(sys_name);
  const Side side = sides().at(side_name);
  const Family family = families().at(family_name);

  try {
    const Caps caps = caps_from_environment();
    Loader load;

    if (*count) {
      const auto& c = load.structure(inputs[0]).value;
      const auto& a = load.structure(inputs[1]).value;
      const MorphismCounter counter(c, cls, sys);
      const auto r = counter.run(std::make_shared<const Structure>(a), limit.has_value(), limit);
      out << r.count << '\n';
      if (r.witnesses)
        for (const auto& m : *r.witnesses) {
          out << "map";
          for (auto x : m.map()) out << '\t' << x;
          out << '\n';
        }
      return ok;
    }

    if (*profile) {
      const auto& a = load.structure(inputs[0]).value;
      const auto tests = enumerate_structures(a.signature_ptr(), budget, resolve(family, {&a}), caps);
      const auto p = hom_profile(a, tests, side, cls, sys);
      for (std::size_t i = 0; i < tests.size(); ++i)
        out << to_hex(canonical_form(tests[i], caps)) << '\t' << p.counts[i] << '\n';
      return ok;
    }

    if (*dist) {
      const auto& a = load.structure(inputs[0]).value;
      const auto& b = load.structure(inputs[1]).value;
      const auto d = distinguish(a, b, budget, side, cls, sys, caps, resolve(family, {&a, &b}));
      for (const auto& w : d.warnings) err << "warning: " << w << '\n';
      if (!d.distinguished()) {
        out << to_string(d.verdict) << '\t' << d.tested << '\n';
        return ok;
      }
      write_structure(out, *d.witness, "witness");
      out << "counts\t" << d.counts->first << '\t' << d.counts->second << '\n';
      return differ;
    }

    if (*iso) {
      const auto& a = load.structure(inputs[0]).value;
      const auto& b = load.structure(inputs[1]).value;
      const bool by_counting = decide_isomorphic_by_counting(a, b, sys, caps);
      if (by_counting != are_isomorphic(a, b, caps))
        throw InvariantViolation("counting and canonical forms disagree");
      out << (by_counting ? "isomorphic" : "not-isomorphic") << '\n';
      return by_counting ? ok : differ;
    }

    if (*mob) {
      const auto& c = load.structure(inputs[0]).value;
      const QuotientPoset q = quotient_poset(c, sys, caps);
      const auto column = mobius_column(q.order(), q.top());
      out << "# elements\nindex\tkernel\tblocks\ttuples\tmu_to_top\n";
      for (std::size_t i = 0; i < q.size(); ++i)
        out << i << '\t' << kernel_text(q[i].kernel) << '\t' << q[i].kernel.block_count() << '\t'
            << q[i].codomain->tuple_count() << '\t' << column[i] << '\n';
      out << "# hasse\nlower\tupper\n";
      for (const auto& [x, y] : q.order().hasse_edges()) out << x << '\t' << y << '\n';
      if (inputs.size() == 2) {
        const auto& a = load.structure(inputs[1]).value;
        Count total = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
          if (column[i] != 0) total += column[i] * count_homs(*q[i].codomain, a);
        const Count direct = count_morphisms(c, a, embedding_class(sys), sys).count;
        if (total != direct) throw InvariantViolation("Mobius sum disagrees with the direct embedding count");
        out << "# embeddings\n" << total << '\n';
      }
      return ok;
    }

    if (*kern) {
      const auto& c = load.structure(inputs[0]).value;
      const auto& a = load.structure(inputs[1]).value;
      const auto d = kernel_decomposition(c, a, sys, caps);
      out << "kernel\tblocks\tgeneric\n";
      for (const auto& row : d.rows)
        out << kernel_text(row.kernel) << '\t' << row.kernel.block_count() << '\t' << row.generic << '\n';
      out << "total\t\t" << d.total << '\n';
      return ok;
    }

    if (*stir) {
      if (!stirling_a) {
        out << "m\tS(n,m)\n";
        for (std::size_t m = 0; m <= stirling_n; ++m) out << m << '\t' << stirling_number(stirling_n, m) << '\n';
        return ok;
      }
      const std::size_t a = *stirling_a;
      Count total = 0, power = 1;
      for (std::size_t i = 0; i < stirling_n; ++i) power *= a;
      out << "m\tS(n,m)\tfalling\tproduct\n";
      for (std::size_t m = 0; m <= stirling_n; ++m) {
        const Count s = stirling_number(stirling_n, m), f = falling_factorial(a, m);
        total += s * f;
        out << m << '\t' << s << '\t' << f << '\t' << s * f << '\n';
      }
      out << "total\t\t\t" << total << '\n';
      if (total != power) throw InvariantViolation("Stirling identity failed");
      return ok;
    }

    if (*tw) {
      const auto& a = load.structure(inputs[0]).value;
      if (tw->count("--decomposition") == 0) {
        out << treewidth(a, caps) << '\n';
        return ok;
      }
      const auto td = tree_decomposition(a, caps);
      out << td.width << '\n';
      for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "bag\t" << i;
        for (auto x : td.bags[i]) out << '\t' << x;
        out << '\n';
      }
      for (const auto& [x, y] : td.edges) out << "edge\t" << x << '\t' << y << '\n';
      return ok;
    }

    if (*ck) {
      const auto& a = load.structure(inputs[0]).value;
      const auto& b = load.structure(inputs[1]).value;
      const TestPreset preset = family == Family::all          ? TestPreset::all
                                : family == Family::undirected ? TestPreset::undirected_graphs
                                                               : TestPreset::automatic;
      const auto v = ck_profile_equal(a, b, k, budget, preset, caps);
      out << (v.equivalent ? "equivalent" : "not-equivalent") << '\t' << to_string(v.method) << '\t' << v.tested
          << '\n';
      if (v.witness) {
        write_structure(out, *v.witness, "witness");
        out << "counts\t" << v.counts->first << '\t' << v.counts->second << '\n';
      }
      return v.equivalent ? ok : differ;
    }

    if (*tcount) {
      out << count_tree_morphisms(load.tree(inputs[0]).value, load.tree(inputs[1]).value) << '\n';
      return ok;
    }
    if (*tdist) {
      const auto d = distinguish_trees(load.tree(inputs[0]).value, load.tree(inputs[1]).value, budget, caps);
      if (!d.distinguished()) {
        out << to_string(d.verdict) << '\t' << d.tested << '\n';
        return ok;
      }
      write_tree(out, *d.witness, "witness");
      out << "counts\t" << d.counts->first << '\t' << d.counts->second << '\n';
      return differ;
    }
    if (*ttrunc) {
      const auto& spec = load.tree_spec(inputs[0]);
      write_tree(out, truncate(spec.value, depth, caps), spec.name);
      return ok;
    }

    if (*wcount) {
      const auto& t = load.tower(inputs[0]).value;
      const auto r = continuous_hom_count(t, load.group(inputs[1]).value);
      out << "count\t" << r.count << '\n' << "stabilized\t" << (r.stabilized ? "yes" : "no") << '\n';
      for (std::size_t i = 0; i < r.levels.size(); ++i) out << "level\t" << i << '\t' << r.levels[i] << '\n';
      return ok;
    }
    if (*wdist) {
      const auto family_groups = load.groups(inputs[2]);
      const auto d = distinguish_towers(load.tower(inputs[0]).value, load.tower(inputs[1]).value, family_groups);
      for (const auto& w : d.warnings) err << "warning: " << w << '\n';
      if (!d.distinguished()) {
        out << to_string(d.verdict) << '\t' << d.tested << '\n';
        return ok;
      }
      write_group(out, *d.witness, d.witness->name());
      out << "counts\t" << d.counts->first << '\t' << d.counts->second << '\n';
      return differ;
    }
    if (*wsurj) {
      const auto family_groups = load.groups(inputs[1]);
      const auto p = surjection_profile(load.tower(inputs[0]).value, family_groups);
      for (std::size_t i = 0; i < p.size(); ++i)
        out << family_groups[i].name() << '\t' << (p[i] ? "yes" : "no") << '\n';
      return ok;
    }

    if (*self) {
      acceptance::Suite suite(level == "quick" ? acceptance::Config::quick() : acceptance::Config::desk());
      bool all = true;
      suite.run_all([&](const acceptance::Outcome& o) {
        all = all && o.passed;
        out << "criterion " << o.id << '\t' << (o.passed ? "PASS" : "FAIL") << '\t' << o.title << '\t'
            << o.detail << '\n';
        out.flush();
      });
      return all ? ok : differ;
    }
  } catch (const LimitExceeded& e) {
    err << "homcount: " << e.what() << '\n';
    return cap;
  } catch (const ParseError& e) {
    err << "homcount: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "homcount: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace homcount::cli
