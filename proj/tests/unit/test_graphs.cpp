#include <catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "endoquant/algebra/errors.hpp"
#include "endoquant/graphs/enumerate.hpp"
#include "endoquant/graphs/graph_io.hpp"
#include "endoquant/graphs/partition.hpp"

using namespace endoquant;

namespace {

// One regular vertex of weight 3, one edge in, two edges out.
FGraph example_graph() {
  FGraph g({3}, 0);
  g.at(0, 1) = 1;
  g.at(1, 2) = 2;
  return g;
}

// Oracle for the class list: every multiplicity matrix over every vertex-kind
// assignment, filtered by validate_graph.
std::set<GraphKey> brute_force_classes(int max_degree, int max_internal) {
  std::set<GraphKey> out;
  for (int n = 0; n <= max_internal; ++n) {
    // kinds: weights -1..max_degree-2, or special (encoded as 100)
    std::vector<int> choices;
    for (int w = -1; w <= std::max(-1, max_degree - 2); ++w) choices.push_back(w);
    choices.push_back(100);
    std::vector<int> kind(static_cast<std::size_t>(n), 0);
    std::function<void(int)> kinds = [&](int i) {
      if (i < n) {
        for (int c : choices) {
          kind[i] = c;
          kinds(i + 1);
        }
        return;
      }
      std::vector<int> weights;
      int k = 0;
      for (int c : kind) {
        if (c == 100) {
          ++k;
        } else {
          weights.push_back(c);
        }
      }
      // only sorted weight lists: relabelling covers the rest
      if (!std::is_sorted(weights.begin(), weights.end())) return;
      FGraph proto(weights, k);
      int wsum = std::accumulate(weights.begin(), weights.end(), 0);
      int max_edges = max_degree - wsum;
      std::vector<std::pair<int, int>> slots;
      for (int a = 0; a < proto.size(); ++a) {
        for (int b = 1; b < proto.size(); ++b) {
          if (a != b && a != proto.sink()) slots.emplace_back(a, b);
        }
      }
      std::function<void(std::size_t, int, FGraph&)> fill = [&](std::size_t s, int left, FGraph& g) {
        if (s == slots.size()) {
          try {
            validate_graph(g);
          } catch (const InvalidInput&) {
            return;
          }
          out.insert(canonicalize(g).key);
          return;
        }
        for (int m = 0; m <= left; ++m) {
          g.at(slots[s].first, slots[s].second) = m;
          fill(s + 1, left - m, g);
        }
        g.at(slots[s].first, slots[s].second) = 0;
      };
      FGraph g = proto;
      if (max_edges >= 0) fill(0, max_edges, g);
    };
    kinds(0);
  }
  return out;
}

std::int64_t factorial64(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("validate_graph") {
  CHECK_NOTHROW(validate_graph(FGraph::lambda(3)));
  CHECK_NOTHROW(validate_graph(example_graph()));
  FGraph thin({-1}, 0);
  thin.at(0, 1) = 1;
  thin.at(1, 2) = 1;
  CHECK_THROWS_AS(validate_graph(thin), InvalidInput);
  thin.at(1, 2) = 2;
  CHECK_NOTHROW(validate_graph(thin));

  // s1 -> s2 contradicts s2 > s1
  FGraph order({}, 2);
  order.at(0, 1) = 1;
  order.at(1, 2) = 1;
  order.at(2, 3) = 1;
  CHECK_THROWS_AS(validate_graph(order), InvalidInput);
  FGraph ok({}, 2);
  ok.at(0, 2) = 1;
  ok.at(2, 1) = 1;
  ok.at(1, 3) = 1;
  CHECK_NOTHROW(validate_graph(ok));

  FGraph cycle({0, 0}, 0);
  cycle.at(0, 1) = 1;
  cycle.at(1, 2) = 1;
  cycle.at(2, 1) = 1;
  cycle.at(2, 3) = 1;
  CHECK_THROWS_AS(validate_graph(cycle), InvalidInput);
  FGraph dangling({0}, 0);
  dangling.at(0, 1) = 1;
  CHECK_THROWS_AS(validate_graph(dangling), InvalidInput);
}

TEST_CASE("canonical forms and automorphisms") {
  for (int n = 0; n <= 5; ++n) CHECK(canonicalize(FGraph::lambda(n)).aut == factorial64(n));
  CHECK(canonicalize(example_graph()).aut == 2);
  CHECK(nu_degree(example_graph()) == 6);
  CHECK(nu_degree(FGraph::lambda(1)) == 1);
  CHECK(nu_degree(FGraph::lambda(0)) == 0);

  // relabelling regular vertices gives the same class
  FGraph g({0, -1, 0}, 1);
  g.at(0, 1) = 1;
  g.at(0, 2) = 2;
  g.at(2, 3) = 1;
  g.at(1, 4) = 1;
  g.at(3, 5) = 1;
  g.at(4, 5) = 1;
  g.at(2, 5) = 1;
  validate_graph(g);
  GraphClass c = canonicalize(g);
  std::vector<int> perm{0, 1, 2};
  do {
    GraphClass d = canonicalize(permute_regular(g, perm));
    CHECK(d.key == c.key);
    CHECK(d.aut == c.aut);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(canonicalize(c.graph).key == c.key);
}

TEST_CASE("enumeration against brute force") {
  auto n0 = enumerate(0, Family::N);
  REQUIRE(n0.size() == 1);
  CHECK(n0[0].graph == canonicalize(FGraph::lambda(0)).graph);

  VertexFilter plain;
  plain.regular = [](int w, int, int) { return w == -1; };
  plain.special = [](int, int) { return false; };
  auto m1 = enumerate(1, Family::M, plain);
  REQUIRE(m1.size() == 2);
  CHECK(m1[0].key == canonicalize(FGraph::lambda(0)).key);
  CHECK(m1[1].key == canonicalize(FGraph::lambda(1)).key);

  for (int D = 0; D <= 3; ++D) {
    auto listed = enumerate(D, Family::M);
    std::set<GraphKey> keys;
    for (const auto& g : listed) keys.insert(g.key);
    CHECK(keys.size() == listed.size());
    CHECK(keys == brute_force_classes(D, 2 * D - 2 < 0 ? 0 : 2 * D - 2));
  }
}

TEST_CASE("enumerated classes are closed and consistent") {
  auto all = enumerate(3, Family::M);
  std::set<GraphKey> keys;
  for (const auto& g : all) keys.insert(g.key);
  CHECK(keys.size() == all.size());
  for (const auto& g : all) {
    CHECK(g.degree <= 3);
    CHECK_NOTHROW(validate_graph(g.graph));
    CHECK(canonicalize(g.graph).key == g.key);
    CHECK(brute_force_aut(g.graph) == g.aut);
    CHECK(graph_from_json(graph_to_json(g.graph)) == g.graph);
  }
  // N is the subset without internal-internal edges
  auto nclasses = enumerate(3, Family::N);
  std::size_t in_n = 0;
  for (const auto& g : all) in_n += g.graph.in_family_n() ? 1 : 0;
  CHECK(in_n == nclasses.size());
}

TEST_CASE("N keys: lambda formula and independent count") {
  for (int D = 0; D <= 3; ++D) {
    NKeyBounds b;
    b.max_degree = D;
    for (int w = -1; w <= D - 2; ++w) b.weights.push_back(w);
    auto keys = n_keys(b);
    auto classes = enumerate(D, Family::N);
    CHECK(keys.size() == classes.size());
    std::set<GraphKey> from_keys;
    for (const auto& k : keys) {
      FGraph g = validate_graph(realize(k));
      CHECK(nu_degree(g) == nu_degree(k));
      GraphClass c = canonicalize(g);
      CHECK(lambda_order(k) == c.aut);
      CHECK(lambda_order(k) == brute_force_aut(g));
      from_keys.insert(c.key);
    }
    std::set<GraphKey> listed;
    for (const auto& c : classes) listed.insert(c.key);
    CHECK(from_keys == listed);
  }
  NGraphKey lam;
  lam.n[{1, 1, -1}] = 4;
  CHECK(lambda_order(lam) == 24);
  NGraphKey ex;
  ex.n[{1, 2, 3}] = 1;
  CHECK(lambda_order(ex) == 2);
  CHECK(canonicalize(realize(ex)).key == canonicalize(example_graph()).key);
  NGraphKey sp;
  sp.specials = {{2, 2}};
  CHECK(lambda_order(sp) == 4);
  CHECK(brute_force_aut(realize(sp)) == 4);
}

TEST_CASE("concatenation") {
  for (int n = 0; n <= 3; ++n) {
    std::vector<int> tau(static_cast<std::size_t>(n));
    std::iota(tau.begin(), tau.end(), 0);
    do {
      CHECK(concatenate(FGraph::lambda(n), FGraph::lambda(n), tau) == FGraph::lambda(n));
    } while (std::next_permutation(tau.begin(), tau.end()));
  }
  CHECK(canonicalize(concatenate(example_graph(), FGraph::lambda(2), {1, 0})).key == canonicalize(example_graph()).key);
  FGraph v({0}, 0);
  v.at(0, 1) = 1;
  v.at(1, 2) = 1;
  CHECK(concatenate(FGraph::lambda(1), v, {0}) == v);
  CHECK_THROWS_AS(concatenate(example_graph(), v, {0}), InvalidInput);

  // specials of the first factor sit above
  FGraph s1({}, 1);
  s1.at(0, 1) = 1;
  s1.at(1, 2) = 1;
  FGraph cat = concatenate(s1, s1, {0});
  CHECK(cat.at(0, 2) == 1);
  CHECK(cat.at(2, 1) == 1);
  CHECK(cat.at(1, 3) == 1);
  CHECK_NOTHROW(validate_graph(cat));
}

TEST_CASE("admissible partitions and splitting") {
  auto lam = admissible_partitions(FGraph::lambda(3));
  REQUIRE(lam.size() == 1);
  Split s = split(FGraph::lambda(3), lam[0]);
  CHECK(s.first == FGraph::lambda(3));
  CHECK(s.second == FGraph::lambda(3));
  CHECK(admissible_partitions(example_graph()).size() == 2);

  FGraph chain({0, 0}, 0);
  chain.at(0, 1) = 1;
  chain.at(1, 2) = 1;
  chain.at(2, 3) = 1;
  for (const auto& pi : admissible_partitions(chain)) CHECK(!(pi.in_v1[1] && !pi.in_v1[0]));
  CHECK(admissible_partitions(chain).size() == 3);

  for (const auto& g : enumerate(3, Family::M)) {
    for (const auto& pi : admissible_partitions(g.graph)) {
      Split sp = split(g.graph, pi);
      CHECK_NOTHROW(validate_graph(sp.first));
      CHECK_NOTHROW(validate_graph(sp.second));
      CHECK(canonicalize(concatenate(sp.first, sp.second, sp.tau)).key == g.key);
      CHECK(nu_degree(sp.first) + nu_degree(sp.second) - sp.first.p() == g.degree);
    }
  }
}

TEST_CASE("frontal vertices and sigma partitions") {
  FrontalStats ex = frontal_stats(example_graph());
  CHECK(ex.regular == std::vector<int>{1});
  CHECK(ex.chain == 0);
  FrontalStats lam = frontal_stats(FGraph::lambda(2));
  CHECK(lam.regular.empty());
  CHECK(lam.chain == 0);
  FGraph two({}, 2);
  two.at(0, 2) = 1;
  two.at(2, 1) = 1;
  two.at(1, 3) = 1;
  CHECK(frontal_stats(two).chain == 1);

  CHECK(sigma_partition(example_graph(), 0).in_v1 == std::vector<bool>{true});
  for (const auto& g : enumerate(3, Family::M)) {
    FrontalStats f = frontal_stats(g.graph);
    if (g.graph.internal() > 0) CHECK(f.regular.size() + static_cast<std::size_t>(f.chain) > 0);
    auto parts = admissible_partitions(g.graph);
    for (int i = 0; i <= g.graph.specials; ++i) {
      AdmissiblePartition sig = sigma_partition(g.graph, i);
      REQUIRE(is_admissible(g.graph, sig));
      Split sp = split(g.graph, sig);
      CHECK(sp.second.specials == i);
      CHECK(frontal_stats(sp.second).regular.empty());
      if (i == 0) CHECK(sp.second == FGraph::lambda(g.graph.p()));
      int matching = 0;
      for (const auto& pi : parts) {
        Split t = split(g.graph, pi);
        if (t.second.specials == i && frontal_stats(t.second).regular.empty()) ++matching;
      }
      CHECK(matching == 1);
    }
    if (f.regular.empty() && g.graph.specials > 0) {
      CHECK(sigma_partition(g.graph, g.graph.specials).in_v1 == std::vector<bool>(static_cast<std::size_t>(g.graph.internal()), false));
    }
  }
}

TEST_CASE("concatenation / partition duality") {
  auto classes = enumerate(2, Family::M);
  std::map<GraphKey, std::int64_t> aut_of;
  for (const auto& c : classes) aut_of[c.key] = c.aut;
  int pairs = 0;
  for (const auto& a : classes) {
    for (const auto& b : classes) {
      int n = a.graph.p();
      if (n != b.graph.q()) continue;
      ++pairs;
      std::map<GraphKey, std::pair<GraphClass, std::int64_t>> t_count;
      std::vector<int> tau(static_cast<std::size_t>(n));
      std::iota(tau.begin(), tau.end(), 0);
      do {
        GraphClass c = canonicalize(concatenate(a.graph, b.graph, tau));
        auto [it, fresh] = t_count.try_emplace(c.key, c, 0);
        it->second.second += 1;
      } while (std::next_permutation(tau.begin(), tau.end()));
      for (const auto& [key, entry] : t_count) {
        const auto& [gamma, T] = entry;
        std::int64_t P = 0;
        for (const auto& pi : admissible_partitions(gamma.graph)) {
          Split sp = split(gamma.graph, pi);
          if (canonicalize(sp.first).key == a.key && canonicalize(sp.second).key == b.key) ++P;
        }
        INFO(describe(a.graph) << " # " << describe(b.graph));
        CHECK(T * gamma.aut == P * a.aut * b.aut);
      }
    }
  }
  CHECK(pairs > 10);
}

TEST_CASE("graph JSON exchange") {
  nlohmann::json j = graph_to_json(example_graph());
  CHECK(j.dump() == R"({"edges":[["in","r0"],["r0","out"],["r0","out"]],"regular":[3],"specials":0})");
  CHECK(graph_from_json(j) == example_graph());
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"regular":[],"specials":0,"edges":[["in","r4"]]})")),
                  InvalidInput);
}
