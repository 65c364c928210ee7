#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "selfcomm/generators.hpp"
#include "selfcomm/reduction.hpp"

using namespace selfcomm;
using namespace fixtures;

TEST_SUITE_BEGIN("reduction");

TEST_CASE("circulant bipartite blocks are degree-regular") {
    auto edges = build_bipartite_regular(4, 2);
    CHECK(edges.size() == 8);
    std::vector<int> outdeg(4, 0), indeg(4, 0);
    bool left0_right0 = false, left0_right1 = false;
    for (auto [l, r] : edges) {
        ++outdeg[l];
        ++indeg[r];
        if (l == 0 && r == 0) left0_right0 = true;
        if (l == 0 && r == 1) left0_right1 = true;
    }
    CHECK(left0_right0);
    CHECK(left0_right1);
    for (int i = 0; i < 4; ++i) {
        CHECK(outdeg[i] == 2);
        CHECK(indeg[i] == 2);
    }
    CHECK(build_bipartite_regular(5, 0).empty());
    CHECK(build_bipartite_regular(3, 3).size() == 9);
    CHECK_THROWS_AS(build_bipartite_regular(3, 4), std::invalid_argument);
}

TEST_CASE("reduction of the weighted fixture") {
    WeightedSystem w = inst_w();
    CommunityParams p{Rational(1), Rational(1, 2), Rational(1, 4)};
    auto [ranked, blob_map] = reduce(w, p, 2, Rational(1, 10));
    CHECK(blob_map.k == 10);
    CHECK(ranked.n == 30);  // n * ceil(1/eps)
    MemberSet image;
    for (MemberId s : {0, 1})
        for (int q = blob_map.forward(s).first; q < blob_map.forward(s).second; ++q)
            image.push_back(q);
    std::sort(image.begin(), image.end());
    // contract: (theta, alpha - eps, beta) on the reduced instance
    CHECK(verify_ranked_community(ranked, image, {Rational(1), Rational(2, 5), Rational(1, 4)}).ok);

    CHECK_THROWS_AS(reduce(w, p, 2, Rational(3, 4)), std::invalid_argument);  // eps >= alpha

    WeightedSystem zero;
    zero.n = 2;
    zero.rows.resize(2);
    auto [empty_ranked, m2] = reduce(zero, p, 1, Rational(1, 4));
    for (const auto& r : empty_ranked.rankings) CHECK(r.empty());
}

TEST_CASE("p = 1 edges become complete bipartite blocks") {
    WeightedSystem w;
    w.n = 2;
    w.rows.resize(2);
    w.set_weight(0, 1, Rational(1));
    auto [ranked, blob_map] = reduce(w, {Rational(1), Rational(1, 2), Rational(1, 4)}, 2,
                                     Rational(1, 4));
    for (int i = 0; i < blob_map.k; ++i)
        CHECK(ranked.rankings[i].size() == static_cast<size_t>(blob_map.k));
}

TEST_CASE("map back rounds, filters, and inverts the fixture image") {
    WeightedSystem w = inst_w();
    CommunityParams p{Rational(1), Rational(1, 2), Rational(1, 4)};
    auto [ranked, blob_map] = reduce(w, p, 2, Rational(1, 10));
    MemberSet image;
    for (MemberId s : {0, 1})
        for (int q = blob_map.forward(s).first; q < blob_map.forward(s).second; ++q)
            image.push_back(q);
    std::sort(image.begin(), image.end());

    CommunitySet back = map_back({image}, blob_map, w, p);
    CHECK(back.size() == 1);
    CHECK(back.contains({0, 1}));

    // stray set: blob 0 almost complete, blob 1 underrepresented -> rounds to {0}, fails, dropped
    MemberSet stray(image.begin(), image.begin() + 14);
    CHECK(map_back({stray}, blob_map, w, p).size() == 0);

    CHECK(map_back({}, blob_map, w, p).size() == 0);
}

TEST_CASE("planted weighted round trip") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        PlantedWeighted pw = gen_planted_weighted(14, 5, rng);
        REQUIRE(verify_weighted_community(pw.system, pw.community, pw.params).ok);
        Rational eps = pw.params.gamma() / 2;
        auto [ranked, blob_map] = reduce(pw.system, pw.params, 5, eps);
        MemberSet image;
        for (MemberId s : pw.community)
            for (int q = blob_map.forward(s).first; q < blob_map.forward(s).second; ++q)
                image.push_back(q);
        std::sort(image.begin(), image.end());
        CommunityParams relaxed{pw.params.theta, pw.params.alpha - eps, pw.params.beta};
        CHECK(verify_ranked_community(ranked, image, relaxed).ok);
        CommunitySet back = map_back({image}, blob_map, pw.system, pw.params);
        CHECK(back.size() == 1);
        CHECK(back.contains(pw.community));
    }
}

TEST_CASE("blob map arithmetic") {
    BlobMap map;
    map.k = 3;
    map.n_original = 4;
    CHECK(map.reduced_n() == 12);
    for (int s = 0; s < 4; ++s)
        for (int q = map.forward(s).first; q < map.forward(s).second; ++q)
            CHECK(map.backward(q) == s);
}

TEST_SUITE_END();
