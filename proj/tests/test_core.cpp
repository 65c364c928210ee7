#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "selfcomm/core.hpp"
#include "selfcomm/enumerate.hpp"

using namespace selfcomm;
using namespace fixtures;

TEST_SUITE_BEGIN("core");

TEST_CASE("ranked vote counting on the 4-member fixture") {
    RankedSystem sys = inst_a();
    VoteTally tally = vote_count_ranked(sys, {0, 1}, 2);
    CHECK(tally.at(0) == 2);
    CHECK(tally.at(1) == 2);
    CHECK(tally.at(2) == 0);
    CHECK(tally.at(3) == 0);

    CHECK(vote_count_ranked(sys, {}, 3).total() == 0);

    VoteTally full = vote_count_ranked(sys, {2, 3}, 4);
    for (int i = 0; i < 4; ++i) CHECK(full.at(i) == 2);
}

TEST_CASE("vote counting respects multiset voters and partial lists") {
    RankedSystem sys = inst_a();
    sys.rankings[1] = {1};  // partial list
    VoteTally tally = vote_count_ranked(sys, {0, 0, 1}, 2);
    CHECK(tally.at(0) == 2);
    CHECK(tally.at(1) == 3);
    CHECK(tally.total() == 5);  // 2+2 from voter 0 twice, 1 from the short list
}

TEST_CASE("capped vote vector") {
    SUBCASE("boundary entry scaled") {
        std::vector<Rational> w{Rational(1), Rational(7, 10), Rational(1, 2), Rational(1, 5)};
        auto out = capped_vote_vector(w, Rational(2));
        CHECK(out == std::vector<Rational>{Rational(1), Rational(7, 10), Rational(3, 10),
                                           Rational(0)});
    }
    SUBCASE("cap not binding") {
        std::vector<Rational> w{Rational(2, 5), Rational(3, 10)};
        CHECK(capped_vote_vector(w, Rational(2)) == w);
    }
    SUBCASE("tied boundary shares the residual") {
        std::vector<Rational> w{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
        auto out = capped_vote_vector(w, Rational(5, 4));
        CHECK(out == std::vector<Rational>{Rational(1, 2), Rational(3, 8), Rational(3, 8)});
    }
    SUBCASE("negative weight rejected") {
        CHECK_THROWS_AS(capped_vote_vector({Rational(-1, 2)}, Rational(1)), std::invalid_argument);
    }
    SUBCASE("matches the naive group-wise restatement on random rows") {
        Rng rng(7);
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<Rational> w;
            int len = 1 + static_cast<int>(rng.below(8));
            for (int i = 0; i < len; ++i)
                w.push_back(Rational(static_cast<long long>(rng.below(11)), 10));
            Rational cap(1 + static_cast<long long>(rng.below(30)), 10);
            CHECK(capped_vote_vector(w, cap) == naive_capped(w, cap));
        }
    }
}

TEST_CASE("weighted tally on the 3-member fixture") {
    WeightedSystem sys = inst_w();
    VoteTally tally = weighted_vote_tally(sys, {0, 1}, 2, Rational(1));
    CHECK(tally.at(0) == 1);
    CHECK(tally.at(1) == 1);
    CHECK(tally.at(2) == Rational(2, 5));

    VoteTally capped = weighted_vote_tally(sys, {0}, 1, Rational(1, 2));
    CHECK(capped.at(0) == 0);
    CHECK(capped.at(1) == Rational(1, 2));
    CHECK(capped.at(2) == 0);

    WeightedSystem zero;
    zero.n = 3;
    zero.rows.resize(3);
    CHECK(weighted_vote_tally(zero, {0, 1, 2}, 3, Rational(1)).total() == 0);
}

TEST_CASE("ranked verification") {
    RankedSystem sys = inst_a();
    CommunityParams p{Rational(1), Rational(1), Rational(1, 2)};
    CHECK(verify_ranked_community(sys, {0, 1}, p).ok);
    CHECK_FALSE(verify_ranked_community(sys, {0, 2}, p).ok);
    CHECK_THROWS_AS(verify_ranked_community(sys, {}, p), std::invalid_argument);

    RankedSystem b = inst_b();
    CommunityParams pb{Rational(1), Rational(3, 4), Rational(1, 4)};
    CHECK(verify_ranked_community(b, inst_b_a1(), pb).ok);
    CHECK(verify_ranked_community(b, inst_b_a2(), pb).ok);
}

TEST_CASE("weighted verification") {
    WeightedSystem sys = inst_w();
    CHECK(verify_weighted_community(sys, {0, 1}, {Rational(1), Rational(1, 2), Rational(1, 4)}).ok);
    CHECK_FALSE(
        verify_weighted_community(sys, {0, 1}, {Rational(1), Rational(3, 5), Rational(1, 4)}).ok);
    // whole set: no outsiders, alpha below the smallest tally fraction
    CHECK(verify_weighted_community(sys, {0, 1, 2}, {Rational(1), Rational(1, 10), Rational(1, 20)})
              .ok);
}

TEST_CASE("good seeds") {
    RankedSystem sys = inst_a();
    CHECK(is_good_seed(sys, {0, 1}, 0, Rational(1)));
    CHECK(is_good_seed(sys, {0, 1}, 1, Rational(1)));
    CHECK_THROWS_AS(is_good_seed(sys, {0, 1}, 2, Rational(1)), std::invalid_argument);
    RankedSystem miss = inst_a();
    miss.rankings[0] = {2, 3};  // prefix misses S entirely
    CHECK_FALSE(is_good_seed(miss, {0, 1}, 0, Rational(1)));
}

TEST_CASE("tally conservation and monotonicity on random systems") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 3 + static_cast<int>(rng.below(8));
        RankedSystem sys = random_partial(n, rng);
        MemberSet voters;
        for (int i = 0; i < n; ++i)
            if (rng.below(2)) voters.push_back(i);
        for (long long prefix = 1; prefix <= n; ++prefix) {
            VoteTally tally = vote_count_ranked(sys, voters, prefix);
            Rational expected(0);
            for (MemberId s : voters) expected += sys.prefix_len(s, prefix);
            CHECK(tally.total() == expected);
            if (prefix > 1) {
                VoteTally prev = vote_count_ranked(sys, voters, prefix - 1);
                for (int i = 0; i < n; ++i) CHECK(tally.at(i) >= prev.at(i));
            }
        }
    }
}

TEST_CASE("weighted tally conservation") {
    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 2 + static_cast<int>(rng.below(6));
        WeightedSystem sys;
        sys.n = n;
        sys.rows.resize(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng.below(2)) sys.set_weight(i, j, Rational(static_cast<long long>(rng.below(11)), 10));
        MemberSet voters;
        for (int i = 0; i < n; ++i) voters.push_back(i);
        long long t = 1 + static_cast<long long>(rng.below(4));
        Rational theta(1 + static_cast<long long>(rng.below(4)), 2);
        VoteTally tally = weighted_vote_tally(sys, voters, t, theta);
        Rational expected(0);
        for (MemberId s : voters) {
            Rational row(0);
            for (int j = 0; j < n; ++j) row += sys.weight(s, j);
            expected += std::min(row, Rational(theta * t));
        }
        CHECK(tally.total() == expected);
    }
}

TEST_CASE("verifier equals the naive reimplementation on all subsets") {
    Rng rng(17);
    CommunityParams grid[] = {{Rational(1), Rational(1), Rational(1, 2)},
                              {Rational(1), Rational(2, 3), Rational(1, 3)},
                              {Rational(1, 2), Rational(1, 2), Rational(1, 4)},
                              {Rational(2), Rational(3, 4), Rational(1, 2)}};
    for (int rep = 0; rep < 6; ++rep) {
        int n = 4 + static_cast<int>(rng.below(4));
        RankedSystem sys = rep % 2 ? random_partial(n, rng) : random_total(n, rng);
        for (const auto& p : grid)
            for (const auto& S : all_subsets(n))
                CHECK(verify_ranked_community(sys, S, p).ok == naive_verify_ranked(sys, S, p));
    }
    for (int rep = 0; rep < 4; ++rep) {
        int n = 3 + static_cast<int>(rng.below(3));
        WeightedSystem sys;
        sys.n = n;
        sys.rows.resize(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rng.below(3)) sys.set_weight(i, j, Rational(static_cast<long long>(rng.below(11)), 10));
        for (const auto& p : grid)
            for (const auto& S : all_subsets(n))
                CHECK(verify_weighted_community(sys, S, p).ok == naive_verify_weighted(sys, S, p));
    }
}

TEST_CASE("whole set verifies for total rankings at alpha = 1") {
    Rng rng(19);
    for (int rep = 0; rep < 5; ++rep) {
        int n = 3 + static_cast<int>(rng.below(8));
        RankedSystem sys = random_total(n, rng);
        MemberSet V;
        for (int i = 0; i < n; ++i) V.push_back(i);
        CHECK(verify_ranked_community(sys, V, {Rational(1), Rational(1), Rational(1, 2)}).ok);
        CHECK(verify_ranked_community(sys, V, {Rational(2), Rational(1), Rational(9, 10)}).ok);
    }
}

TEST_CASE("good-seed count meets the (2 alpha - 1) t bound on verified communities") {
    Rng rng(23);
    CommunityParams grid[] = {{Rational(1), Rational(1), Rational(1, 2)},
                              {Rational(1), Rational(2, 3), Rational(1, 3)},
                              {Rational(1), Rational(3, 4), Rational(1, 4)}};
    for (int rep = 0; rep < 6; ++rep) {
        int n = 4 + static_cast<int>(rng.below(5));
        RankedSystem sys = random_total(n, rng, /*self_first=*/true);
        for (const auto& p : grid) {
            CommunitySet oracle = brute_force_oracle(sys, p, {1, n});
            for (const auto& [S, tag] : oracle.entries) {
                long long good = 0;
                for (MemberId v : S)
                    if (is_good_seed(sys, S, v, p.theta)) ++good;
                CHECK(Rational(good) >= (2 * p.alpha - 1) * static_cast<long long>(S.size()));
            }
        }
    }
}

TEST_CASE("prefix length and rational helpers") {
    CHECK(vote_prefix_len(Rational(1), 5) == 5);
    CHECK(vote_prefix_len(Rational(1, 2), 5) == 3);
    CHECK(vote_prefix_len(Rational(2), 3) == 6);
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.75") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(format_rational(Rational(3, 4)) == "3/4");
    CHECK(format_rational(Rational(5)) == "5");
    CHECK(format_rational_decimal(Rational(3, 8)) == "0.375");
    CHECK(parse_rational(format_rational_decimal(Rational(7, 20))) == Rational(7, 20));
}

TEST_CASE("validation rejects malformed systems and params") {
    RankedSystem sys = inst_a();
    sys.rankings[0] = {0, 0};
    CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
    sys.rankings[0] = {0, 7};
    CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
    CHECK_THROWS_AS((CommunityParams{Rational(1), Rational(1, 2), Rational(1, 2)}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((CommunityParams{Rational(0), Rational(1), Rational(0)}).validate(),
                    std::invalid_argument);
    CHECK_NOTHROW((CommunityParams{Rational(1), Rational(1), Rational(0)}).validate());
}

TEST_SUITE_END();
