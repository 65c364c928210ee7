#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "selfcomm/lifting.hpp"

using namespace selfcomm;
using namespace fixtures;

TEST_SUITE_BEGIN("lifting");

namespace {

SocialGraph undirected_path3() {
    SocialGraph g;
    g.n = 3;
    g.directed = false;
    g.out.resize(3);
    g.add_edge(0, 1, Rational(1));
    g.add_edge(1, 2, Rational(1));
    return g;
}

SocialGraph random_graph(int n, Rng& rng, bool directed) {
    SocialGraph g;
    g.n = n;
    g.directed = directed;
    g.out.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = directed ? 0 : i; j < n; ++j) {
            if (!directed && j == i) continue;
            if (directed && j == i) continue;
            if (rng.below(2)) {
                Rational w(1 + static_cast<long long>(rng.below(10)), 10);
                bool present = false;
                for (const auto& [u, ww] : g.out[i]) present = present || u == j;
                if (!present) g.add_edge(i, j, w);
            }
        }
    return g;
}

}  // namespace

TEST_CASE("direct lift is the adjacency map") {
    SocialGraph g;
    g.n = 3;
    g.directed = true;
    g.out.resize(3);
    g.add_edge(0, 1, Rational(4, 5));
    WeightedSystem sys = direct_lift(g);
    CHECK(sys.weight(0, 1) == Rational(4, 5));
    CHECK(sys.weight(1, 0) == 0);
    CHECK(sys.weight(0, 2) == 0);

    SocialGraph sym = undirected_path3();
    WeightedSystem ssym = direct_lift(sym);
    CHECK(ssym.weight(0, 1) == ssym.weight(1, 0));
}

TEST_CASE("shortest-path lift") {
    WeightedSystem sys = shortest_path_lift(undirected_path3());
    CHECK(sys.weight(0, 1) == 1);
    CHECK(sys.weight(0, 2) == Rational(1, 2));
    CHECK(sys.weight(0, 0) == 1);

    SocialGraph disconnected;
    disconnected.n = 3;
    disconnected.out.resize(3);
    disconnected.add_edge(0, 1, Rational(1));
    CHECK(shortest_path_lift(disconnected).weight(0, 2) == 0);

    // weighted path with two 0.5 edges: distances normalized by the minimum
    SocialGraph half;
    half.n = 3;
    half.out.resize(3);
    half.add_edge(0, 1, Rational(1, 2));
    half.add_edge(1, 2, Rational(1, 2));
    WeightedSystem hsys = shortest_path_lift(half);
    CHECK(hsys.weight(0, 1) == 1);
    CHECK(hsys.weight(0, 2) == Rational(1, 2));
}

TEST_CASE("personalized pagerank lift") {
    SocialGraph pair;
    pair.n = 2;
    pair.out.resize(2);
    pair.add_edge(0, 1, Rational(1));
    LiftConfig config;
    config.method = LiftConfig::Method::ppr;
    WeightedSystem sys = ppr_lift(pair, config);
    CHECK(sys.weight(0, 0) == 1);  // teleport keeps home mass dominant
    CHECK(sys.weight(0, 1) > 0);
    CHECK(sys.weight(0, 1) < 1);

    SocialGraph iso;
    iso.n = 2;
    iso.out.resize(2);
    WeightedSystem isys = ppr_lift(iso, config);
    CHECK(isys.weight(0, 0) == 1);
    CHECK(isys.weight(0, 1) == 0);

    Rng rng(8);
    SocialGraph g = random_graph(6, rng, false);
    WeightedSystem rows = ppr_lift(g, config);
    for (int i = 0; i < 6; ++i) {
        Rational mx(0);
        for (const auto& [j, w] : rows.rows[i]) mx = std::max(mx, w);
        CHECK(mx == 1);  // every row max-normalized exactly
    }
}

TEST_CASE("effective resistance lift") {
    SocialGraph triangle;
    triangle.n = 3;
    triangle.out.resize(3);
    triangle.add_edge(0, 1, Rational(1));
    triangle.add_edge(1, 2, Rational(1));
    triangle.add_edge(0, 2, Rational(1));
    LiftConfig config;
    WeightedSystem tsys = resistance_lift(triangle, config);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(to_double(tsys.weight(i, j)) == doctest::Approx(1.0));

    std::vector<double> r = effective_resistances(undirected_path3(), 0);
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(r[2] == doctest::Approx(2.0));
    WeightedSystem psys = resistance_lift(undirected_path3(), config);
    CHECK(to_double(psys.weight(0, 1)) == doctest::Approx(1.0));
    CHECK(to_double(psys.weight(0, 2)) == doctest::Approx(0.5));

    SocialGraph edge;
    edge.n = 2;
    edge.out.resize(2);
    edge.add_edge(0, 1, Rational(1));
    WeightedSystem esys = resistance_lift(edge, config);
    CHECK(to_double(esys.weight(0, 1)) == doctest::Approx(1.0));
    CHECK(to_double(esys.weight(1, 0)) == doctest::Approx(1.0));

    // symmetry of the resistance metric on random connected graphs
    Rng rng(21);
    for (int rep = 0; rep < 5; ++rep) {
        SocialGraph g = random_graph(6, rng, false);
        for (int i = 0; i < 6; ++i) {
            std::vector<double> ri = effective_resistances(g, i);
            for (int j = 0; j < 6; ++j) {
                if (j == i || ri[j] < 0) continue;
                std::vector<double> rj = effective_resistances(g, j);
                CHECK(ri[j] == doctest::Approx(rj[i]).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("graph community verification") {
    // two disjoint directed triangles
    SocialGraph g;
    g.n = 6;
    g.directed = true;
    g.out.resize(6);
    for (int base : {0, 3})
        for (int q = 0; q < 3; ++q) g.add_edge(base + q, base + (q + 1) % 3, Rational(1));
    for (int q = 0; q < 3; ++q) g.add_edge(3 + q, 3 + (q + 2) % 3, Rational(1));
    for (int q = 0; q < 3; ++q) g.add_edge(q, (q + 2) % 3, Rational(1));
    CHECK(verify_graph_community(g, {0, 1, 2}, {Rational(1), Rational(2, 3), Rational(1, 3)}).ok);

    // complete digraph on 4 nodes: any 3-subset leaks 3 votes to the outsider
    SocialGraph k4;
    k4.n = 4;
    k4.directed = true;
    k4.out.resize(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) k4.add_edge(i, j, Rational(1));
    CHECK_FALSE(verify_graph_community(k4, {0, 1, 2}, {Rational(1), Rational(2, 3), Rational(1, 2)}).ok);
    // whole set: outside condition vacuous
    CHECK(verify_graph_community(k4, {0, 1, 2, 3}, {Rational(1), Rational(3, 4), Rational(0)}).ok);
}

TEST_CASE("graph verifier equals the weighted verifier on the direct lift") {
    Rng rng(33);
    for (int rep = 0; rep < 10; ++rep) {
        SocialGraph g = random_graph(6, rng, rep % 2 == 0);
        WeightedSystem lifted = direct_lift(g);
        CommunityParams grid[] = {{Rational(1), Rational(1, 2), Rational(1, 4)},
                                  {Rational(1), Rational(2, 3), Rational(1, 3)}};
        for (const auto& p : grid)
            for (const auto& S : all_subsets(6))
                CHECK(verify_graph_community(g, S, p).ok ==
                      verify_weighted_community(lifted, S, p).ok);
    }
}

TEST_CASE("alpha-beta cluster checks") {
    SocialGraph triangle;
    triangle.n = 3;
    triangle.out.resize(3);
    for (int i = 0; i < 3; ++i) triangle.add_edge(i, i, Rational(1));
    triangle.add_edge(0, 1, Rational(1));
    triangle.add_edge(1, 2, Rational(1));
    triangle.add_edge(0, 2, Rational(1));
    CHECK(verify_alpha_beta_cluster(triangle, {0, 1, 2}, Rational(1), Rational(1, 2)));

    SocialGraph cycle;
    cycle.n = 4;
    cycle.out.resize(4);
    for (int i = 0; i < 4; ++i) {
        cycle.add_edge(i, i, Rational(1));
        cycle.add_edge(i, (i + 1) % 4, Rational(1));
    }
    CHECK(verify_alpha_beta_cluster(cycle, {0, 1}, Rational(1), Rational(1, 2)));

    SocialGraph edgeless;
    edgeless.n = 3;
    edgeless.out.resize(3);
    for (int i = 0; i < 3; ++i) edgeless.add_edge(i, i, Rational(1));
    for (int i = 0; i < 3; ++i)
        CHECK(verify_alpha_beta_cluster(edgeless, {i}, Rational(1), Rational(1, 2)));

    SocialGraph no_loops = undirected_path3();
    CHECK_THROWS_AS(verify_alpha_beta_cluster(no_loops, {0}, Rational(1), Rational(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("graph validation") {
    SocialGraph g;
    g.n = 2;
    g.out.resize(2);
    g.add_edge(0, 1, Rational(1));
    CHECK_THROWS_AS(g.add_edge(0, 1, Rational(1, 2)), std::invalid_argument);  // parallel
    CHECK_THROWS_AS(g.add_edge(0, 1, Rational(2)), std::invalid_argument);     // weight > 1
    CHECK_THROWS_AS(g.add_edge(0, 5, Rational(1)), std::invalid_argument);     // out of range
    CHECK_NOTHROW(g.validate());
}

TEST_SUITE_END();
