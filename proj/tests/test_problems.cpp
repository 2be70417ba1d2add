#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ftlab/graph.hpp"
#include "ftlab/problems.hpp"
#include "ftlab/rng.hpp"

using namespace ftlab;

TEST_CASE("onemax and leadingones evaluate bit counts") {
  OneMax om{8};
  LeadingOnes lo{8};
  BitString x = BitString::zeros(8);
  REQUIRE(om.evaluate(x) == 0);
  REQUIRE(lo.evaluate(x) == 0);
  x.flip(0);
  x.flip(1);
  x.flip(3);
  REQUIRE(om.evaluate(x) == 3);
  REQUIRE(lo.evaluate(x) == 2);
  REQUIRE(om.optimum() == 8);
  REQUIRE(lo.optimum() == 8);
  REQUIRE(OneMax::fitness_label(5) == "5");
  REQUIRE(OneMax::fitness_value(5) == 5.0);
}

TEST_CASE("big unsigned integers compare and print correctly") {
  BigUint a = BigUint::ones_in_range(0, 10);  // 1023
  REQUIRE(a.to_decimal() == "1023");
  REQUIRE(a.to_double() == 1023.0);
  BigUint b = BigUint::from_u64(1024, 11);
  REQUIRE(a < b);
  REQUIRE(b > a);
  REQUIRE(a == BigUint::from_u64(1023, 10));

  // 2^100 - 2^3 needs more than one word
  BigUint c = BigUint::ones_in_range(3, 100);
  BigUint d = BigUint::ones_in_range(0, 100);
  REQUIRE(c < d);
  REQUIRE(d.to_decimal() == "1267650600228229401496703205375");
  REQUIRE(BigUint::zero(100).to_decimal() == "0");
}

TEST_CASE("binval is the binary value with bit i worth 2^i") {
  BinVal bv{70};
  BitString x = BitString::zeros(70);
  x.flip(69);
  REQUIRE(bv.evaluate(x) == BigUint::ones_in_range(69, 70));
  REQUIRE(bv.optimum() == BigUint::ones_in_range(0, 70));
  REQUIRE(bv.target_for_gap_exponent(3) == BigUint::ones_in_range(3, 70));
  REQUIRE_THROWS_AS(bv.target_for_gap_exponent(70), std::invalid_argument);
  REQUIRE(bv.target_for_gap_exponent(0) == bv.optimum());
}

static WeightedGraph triangle_plus_one() {
  // vertices 0-3; the triangle 0-1-2 plus a pendant vertex 3
  WeightedGraph g;
  g.n_vertices = 4;
  g.edges = {{0, 1, 5}, {1, 2, 3}, {0, 2, 4}, {2, 3, 7}};
  return g;
}

TEST_CASE("graph parse, serialize and validate") {
  WeightedGraph g = triangle_plus_one();
  g.validate();
  std::string text = g.serialize();
  std::istringstream in(text);
  WeightedGraph back = WeightedGraph::parse(in);
  REQUIRE(back.n_vertices == 4);
  REQUIRE(back.n_edges() == 4);
  REQUIRE(back.serialize() == text);
  REQUIRE(back.max_weight() == 7);

  std::istringstream bad_header("x");
  REQUIRE_THROWS_AS(WeightedGraph::parse(bad_header), std::invalid_argument);
  std::istringstream missing_edge("3 2\n0 1 4\n");
  REQUIRE_THROWS_AS(WeightedGraph::parse(missing_edge), std::invalid_argument);
  std::istringstream disconnected("4 2\n0 1 1\n2 3 1\n");
  REQUIRE_THROWS_AS(WeightedGraph::parse(disconnected), std::invalid_argument);
  std::istringstream self_loop("2 1\n0 0 1\n");
  REQUIRE_THROWS_AS(WeightedGraph::parse(self_loop), std::invalid_argument);
  std::istringstream zero_weight("2 1\n0 1 0\n");
  REQUIRE_THROWS_AS(WeightedGraph::parse(zero_weight), std::invalid_argument);
}

TEST_CASE("component counts and selection weights") {
  WeightedGraph g = triangle_plus_one();
  BitString none = BitString::zeros(4);
  REQUIRE(component_count(g, none) == 4);
  REQUIRE(selection_weight(g, none) == 0);
  BitString all = BitString::ones(4);
  REQUIRE(component_count(g, all) == 1);
  REQUIRE(selection_weight(g, all) == 19);
  BitString tree = BitString::zeros(4);
  tree.flip(1);  // 1-2 (3)
  tree.flip(2);  // 0-2 (4)
  tree.flip(3);  // 2-3 (7)
  REQUIRE(component_count(g, tree) == 1);
  REQUIRE(selection_weight(g, tree) == 14);
}

TEST_CASE("minimum and maximum spanning trees on a known graph") {
  WeightedGraph g = triangle_plus_one();
  REQUIRE(mst_weight_oracle(g) == 14);  // edges 3 + 4 + 7
  BitString heavy = maximum_spanning_tree(g);
  REQUIRE(component_count(g, heavy) == 1);
  REQUIRE(heavy.count_ones() == 3);
  REQUIRE(selection_weight(g, heavy) == 16);  // edges 5 + 4 + 7
}

TEST_CASE("spanning-tree problem encodes components and weight in one value") {
  MstProblem problem(triangle_plus_one());
  REQUIRE(problem.dimension() == 4);
  REQUIRE(problem.optimum_weight == 14);
  REQUIRE(problem.penalty == 4ull * 4ull * 7ull);
  REQUIRE(problem.optimum() == 14);

  BitString none = BitString::zeros(4);
  auto f = problem.evaluate(none);
  REQUIRE(problem.components_of(f) == 4);
  REQUIRE(problem.weight_of(f) == 0);
  REQUIRE(f == static_cast<std::int64_t>(3 * problem.penalty));

  BitString all = BitString::ones(4);
  auto fa = problem.evaluate(all);
  REQUIRE(problem.components_of(fa) == 1);
  REQUIRE(problem.weight_of(fa) == 19);
  REQUIRE(fa > problem.optimum());  // minimizing: connected but heavy is worse

  // a too-small penalty would let weights leak into the component digit
  REQUIRE_THROWS_AS(MstProblem(triangle_plus_one(), 20), std::invalid_argument);
}

TEST_CASE("random connected graphs satisfy their contract") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t nv = 2 + rng.next_below(7);
    std::size_t full = nv * (nv - 1) / 2;
    std::size_t me = (nv - 1) + rng.next_below(full - nv + 2);
    WeightedGraph g = random_connected_graph(nv, me, 10, rng);
    REQUIRE(g.n_vertices == nv);
    REQUIRE(g.n_edges() == me);
    REQUIRE_NOTHROW(g.validate());
    for (const auto& e : g.edges) {
      REQUIRE(e.w >= 1);
      REQUIRE(e.w <= 10);
    }
  }
  REQUIRE_THROWS_AS(random_connected_graph(5, 3, 10, rng), std::invalid_argument);
  REQUIRE_THROWS_AS(random_connected_graph(5, 11, 10, rng), std::invalid_argument);
}
