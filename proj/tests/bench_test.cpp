#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "vegraph/bench.hpp"
#include "vegraph/encoders.hpp"
#include "vegraph/minisolver.hpp"
#include "vegraph/oracle.hpp"

namespace vegraph {
namespace {

std::size_t grid_arcs(int r, int c) { return 2 * (r * (c - 1) + c * (r - 1)) - 2; }

TEST(GridHc, TableSizes) {
  struct Row {
    int rows, cols;
    int nodes;
    std::size_t arcs;
  };
  for (auto [r, c, nodes, arcs] :
       {Row{11, 11, 121, 438}, Row{5, 20, 100, 348}, Row{5, 41, 205, 726}}) {
    auto inst = gen_grid_hc({r, c});
    EXPECT_EQ(inst.graph.node_count(), nodes);
    EXPECT_EQ(inst.graph.arc_count(), arcs);
  }
}

TEST(GridHc, ArcCountFormula) {
  for (int r = 2; r <= 7; ++r)
    for (int c = 2; c <= 7; ++c) {
      auto inst = gen_grid_hc({r, c});
      EXPECT_EQ(inst.graph.arc_count(), grid_arcs(r, c));
      EXPECT_NO_THROW(inst.validate());
    }
}

TEST(GridHc, AnchorOrientation) {
  auto inst = gen_grid_hc({3, 4});
  const Node anchor = 1, right = 2, below = 5;
  EXPECT_TRUE(inst.graph.has_arc(below, anchor));
  EXPECT_TRUE(inst.graph.has_arc(anchor, right));
  EXPECT_FALSE(inst.graph.has_arc(anchor, below));
  EXPECT_FALSE(inst.graph.has_arc(right, anchor));
  EXPECT_EQ(inst.constraints, (std::vector<Constraint>{Constraint::acyclic(anchor)}));
}

TEST(GridHc, RejectsDegenerateGrids) {
  EXPECT_THROW(gen_grid_hc({1, 5}), std::invalid_argument);
  EXPECT_THROW(gen_grid_hc({4, 0}), std::invalid_argument);
}

TEST(GridHc, TwoByTwoHasExactlyOneModel) {
  auto inst = gen_grid_hc({2, 2});
  int models = 0;
  const std::uint64_t total = std::uint64_t{1} << inst.base.var_count;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Model m(inst.base.var_count);
    for (Var v = 1; v <= inst.base.var_count; ++v) m.set(v, (bits >> (v - 1)) & 1U);
    if (verify(inst, m).all_pass()) {
      ++models;
      EXPECT_TRUE(testing::is_hamiltonian_cycle(decode_model(inst, m)));
    }
  }
  EXPECT_EQ(models, 1);
}

// 2x4 has cycle covers other than its boundary; only acyclicity rules them out.
TEST(GridHc, TwoByFourExhaustive) {
  auto inst = gen_grid_hc({2, 4});
  ASSERT_LE(inst.base.var_count, max_enumerated_vars);
  for (const char* method : {"ve", "tc", "tr"}) {
    auto enc = encode_instance(inst, {{*parse_method(method)}, {}});
    auto r = brute_force_check(inst, enc);
    EXPECT_TRUE(r.sound && r.complete) << method;
    EXPECT_GT(r.base_models, 1u) << method;
  }
  int hamiltonian = 0;
  const std::uint64_t total = std::uint64_t{1} << inst.base.var_count;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Model m(inst.base.var_count);
    for (Var v = 1; v <= inst.base.var_count; ++v) m.set(v, (bits >> (v - 1)) & 1U);
    if (verify(inst, m).all_pass()) {
      ++hamiltonian;
      EXPECT_TRUE(testing::is_hamiltonian_cycle(decode_model(inst, m)));
    }
  }
  EXPECT_EQ(hamiltonian, 1);  // the boundary, in the anchor's direction
}

TEST(GridHc, ParityRule) {
  for (int r = 2; r <= 4; ++r)
    for (int c = 2; c <= 4; ++c) {
      auto inst = gen_grid_hc({r, c});
      auto enc = encode_instance(inst, {});
      auto result = solve(enc.conjoin(inst.base));
      const bool expect_sat = r % 2 == 0 || c % 2 == 0;
      ASSERT_EQ(result.status == SolveStatus::sat, expect_sat) << r << "x" << c;
      if (expect_sat) {
        auto base_model = result.model.resized(inst.base.var_count);
        EXPECT_TRUE(verify(inst, base_model).all_pass());
        EXPECT_TRUE(testing::is_hamiltonian_cycle(decode_model(inst, base_model))) << r << "x" << c;
      }
    }
}

TEST(GridHc, MinDegreeWidthOnNarrowGrids) {
  for (int c : {20, 41, 60}) {
    auto inst = gen_grid_hc({5, c});
    auto p = elimination_profile(inst, OrderingSpec::min_degree());
    EXPECT_LE(p.width, 6) << "5x" << c;
  }
}

TEST(GenRandom, Shape) {
  auto inst = gen_random(6, 10, ConstraintKind::reach, 3);
  EXPECT_EQ(inst.graph.node_count(), 6);
  EXPECT_EQ(inst.graph.arc_count(), 10u);
  EXPECT_EQ(inst.base.var_count, 10);
  EXPECT_TRUE(inst.base.clauses.empty());
  ASSERT_EQ(inst.constraints.size(), 1u);
  EXPECT_EQ(inst.constraints[0].kind, ConstraintKind::reach);
  EXPECT_NE(inst.constraints[0].s, inst.constraints[0].t);
  for (const Arc& a : inst.graph.arcs()) EXPECT_FALSE(a.is_loop());
  std::set<Var> vars(inst.arc_var.begin(), inst.arc_var.end());
  EXPECT_EQ(vars.size(), 10u);
  EXPECT_NO_THROW(inst.validate());
}

TEST(GenRandom, DeterministicPerSeed) {
  EXPECT_EQ(gen_random(7, 12, ConstraintKind::ereach, 9), gen_random(7, 12, ConstraintKind::ereach, 9));
  EXPECT_NE(gen_random(7, 12, ConstraintKind::ereach, 9), gen_random(7, 12, ConstraintKind::ereach, 10));
}

TEST(GenRandom, Bounds) {
  EXPECT_EQ(gen_random(4, 12, ConstraintKind::acyclic, 1).graph.arc_count(), 12u);
  EXPECT_EQ(gen_random(1, 0, ConstraintKind::acyclic, 1).graph.arc_count(), 0u);
  EXPECT_THROW(gen_random(4, 13, ConstraintKind::acyclic, 1), std::invalid_argument);
  EXPECT_THROW(gen_random(1, 0, ConstraintKind::reach, 1), std::invalid_argument);
  EXPECT_THROW(gen_random(0, 0, ConstraintKind::acyclic, 1), std::invalid_argument);
}

}  // namespace
}  // namespace vegraph
