#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace homcount;

namespace {

TEST(TextIO, ParsesAllBlockKinds) {
  const auto doc = parse_document(R"(
# comment
signature E/2 R/3
structure a size 3
E: (0,1) (1, 2)
R: (0,1,2)
end
tree t size 3 parents - 0 0 end
rtree bin states 1 start 0 children 0 0 ; end
group Z2 cyclic 2 end
group Z3 order 3 table 0 1 2 / 1 2 0 / 2 0 1 end
group P product Z2 Z3 end
tower tw levels Z2 Z2 maps 0 1 end
)");
  ASSERT_EQ(doc.structures.size(), 1u);
  const auto& a = doc.structures[0].value;
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.relation(0).size(), 2u);
  EXPECT_EQ(a.relation(1).size(), 1u);
  EXPECT_EQ(doc.trees[0].value.size(), 3u);
  EXPECT_EQ(doc.tree_specs[0].name, "bin");
  EXPECT_EQ(doc.groups.size(), 3u);
  EXPECT_EQ(doc.groups[2].value.order(), 6u);
  EXPECT_EQ(doc.towers[0].value.level_count(), 2u);
}

TEST(TextIO, ReportsLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_document(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("signature E/2\nstructure a size 2\nE: (0,2)\nend\n"), 3u);
  EXPECT_EQ(line_of("signature E/2\nstructure a size 2\nE: (0)\nend\n"), 3u);
  EXPECT_EQ(line_of("signature E/2\nstructure a size 2\nF: (0,1)\nend\n"), 3u);
  EXPECT_EQ(line_of("structure a size 2\nend\n"), 1u);
  EXPECT_EQ(line_of("signature E/2\nstructure a size 1\nend\nstructure a size 1\nend\n"), 4u);
  EXPECT_EQ(line_of("group G order 2 table 0 1 / 1 1 end\n"), 1u);
  EXPECT_EQ(line_of("bogus\n"), 1u);
}

TEST(TextIO, WriteThenReadRoundTrips) {
  std::mt19937 rng(19);
  auto sig = make_signature({{"U", 1}, {"E", 2}, {"R", 3}});
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_structure(sig, 1 + trial % 4, 0.2, rng);
    std::ostringstream os;
    write_structure(os, a, "x");
    const auto doc = parse_document(os.str());
    EXPECT_EQ(doc.structures.at(0).value, a);
  }
  const FiniteTree t({FiniteTree::kNoParent, 0, 0, 1});
  std::ostringstream ts;
  write_tree(ts, t, "t");
  EXPECT_EQ(ts.str(), "tree t size 4 parents - 0 0 1 end\n");
  EXPECT_EQ(parse_document(ts.str()).trees.at(0).value, t);
  std::ostringstream gs;
  write_group(gs, cyclic_group(3), "Z3");
  EXPECT_TRUE(std::ranges::equal(parse_document(gs.str()).groups.at(0).value.table(), cyclic_group(3).table()));
}

TEST(TextIO, FileRefs) {
  const auto plain = FileRef::parse("data/c6.struct");
  EXPECT_FALSE(plain.name.has_value());
  const auto named = FileRef::parse("data/graphs.struct:k3");
  EXPECT_EQ(named.path, "data/graphs.struct");
  EXPECT_EQ(*named.name, "k3");
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("homcount_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    write("c6.struct", "signature E/2\nstructure c6 size 6\nE: (0,1) (1,0) (1,2) (2,1) (2,3) (3,2) (3,4) (4,3) "
                       "(4,5) (5,4) (5,0) (0,5)\nend\n");
    write("2c3.struct", "signature E/2\nstructure twoc3 size 6\nE: (0,1) (1,0) (1,2) (2,1) (2,0) (0,2)\n"
                        "E: (3,4) (4,3) (4,5) (5,4) (5,3) (3,5)\nend\n");
    write("k3.struct", "signature E/2\nstructure k3 size 3\nE: (0,1) (1,0) (1,2) (2,1) (2,0) (0,2)\nend\n");
    write("bad.struct", "signature E/2\nstructure x size 2\nE: (0,5)\nend\n");
    write("trees.tree", "tree fork size 5 parents - 0 0 1 1 end\ntree broom size 5 parents - 0 1 1 1 end\n"
                        "rtree bin states 1 start 0 children 0 0 ; end\n");
    write("towers.tower", "group Z2 cyclic 2 end\ngroup Z4 cyclic 4 end\ngroup V product Z2 Z2 end\n"
                          "tower t levels Z2 Z4 maps 0 1 0 1 end\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "homcount");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::filesystem::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, CountPrintsOneInteger) {
  EXPECT_EQ(run({"count", "--class", "hom", path("c6.struct"), path("k3.struct")}), 0);
  EXPECT_EQ(out_.str(), "66\n");
  EXPECT_EQ(run({"count", "--class", "mono", path("k3.struct"), path("k3.struct"), "--limit", "2"}), 0);
  const auto text = out_.str();
  EXPECT_EQ(text.substr(0, 2), "6\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST_F(Cli, DistinguishFindsTheTriangle) {
  EXPECT_EQ(run({"distinguish", "--budget", "3", path("c6.struct"), path("2c3.struct")}), 1);
  const auto text = out_.str();
  const auto doc = parse_document(text.substr(0, text.find("counts")));
  ASSERT_EQ(doc.structures.size(), 1u);
  EXPECT_TRUE(are_isomorphic(doc.structures[0].value, complete_graph(3)));
  EXPECT_NE(out_.str().find("counts\t0\t12\n"), std::string::npos);
  EXPECT_EQ(run({"distinguish", "--budget", "2", path("c6.struct"), path("2c3.struct")}), 0);
}

TEST_F(Cli, OutputIsDeterministic) {
  run({"profile", "--budget", "3", path("k3.struct")});
  const auto first = out_.str();
  run({"profile", "--budget", "3", path("k3.struct")});
  EXPECT_EQ(out_.str(), first);
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 1 + 1 + 2 + 4);
}

TEST_F(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"iso", path("c6.struct"), path("2c3.struct")}), 1);
  EXPECT_EQ(out_.str(), "not-isomorphic\n");
  EXPECT_EQ(run({"treewidth", path("c6.struct")}), 0);
  EXPECT_EQ(out_.str(), "2\n");
  EXPECT_EQ(run({"ck", "--k", "2", "--budget", "6", path("c6.struct"), path("2c3.struct")}), 0);
  EXPECT_EQ(run({"ck", "--k", "3", "--budget", "3", path("c6.struct"), path("2c3.struct")}), 1);
  EXPECT_EQ(run({"stirling", "3", "2"}), 0);
  EXPECT_NE(out_.str().find("total\t\t\t8\n"), std::string::npos);
  EXPECT_EQ(run({"kernel", path("k3.struct"), path("k3.struct")}), 0);
  EXPECT_NE(out_.str().find("total\t\t6\n"), std::string::npos);
  EXPECT_EQ(run({"mobius", "--system", "e-sm", path("k3.struct"), path("k3.struct")}), 0);
  EXPECT_NE(out_.str().find("# embeddings\n6\n"), std::string::npos);
  EXPECT_EQ(run({"trees", "distinguish", "--budget", "5", path("trees.tree:fork"), path("trees.tree:broom")}), 1);
  EXPECT_EQ(run({"trees", "truncate", "--depth", "2", path("trees.tree:bin")}), 0);
  EXPECT_EQ(out_.str(), "tree bin size 7 parents - 0 0 1 1 2 2 end\n");
  EXPECT_EQ(run({"tower", "count", path("towers.tower:t"), path("towers.tower:Z4")}), 0);
  EXPECT_NE(out_.str().find("count\t4\n"), std::string::npos);
  EXPECT_EQ(run({"tower", "surjections", path("towers.tower:t"), path("towers.tower")}), 0);
  EXPECT_EQ(out_.str(), "Z2\tyes\nZ4\tyes\nV\tno\n");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"count", path("c6.struct")}), 2);
  EXPECT_EQ(run({"count", path("bad.struct"), path("c6.struct")}), 2);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos);
  EXPECT_EQ(run({"count", path("missing.struct"), path("c6.struct")}), 2);
  EXPECT_EQ(run({"count", "--system", "xx", path("c6.struct"), path("c6.struct")}), 2);
  EXPECT_EQ(run({"count", "--help"}), 0);
  EXPECT_NE(out_.str().find("Lovasz"), std::string::npos);
  ::setenv("HOMCOUNT_CAP", "3", 1);
  EXPECT_EQ(run({"distinguish", "--budget", "3", path("c6.struct"), path("2c3.struct")}), 3);
  ::unsetenv("HOMCOUNT_CAP");
}

}  // namespace
