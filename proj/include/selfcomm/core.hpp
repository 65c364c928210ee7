#pragma once

#include <unordered_map>
#include <vector>

#include "selfcomm/rational.hpp"

namespace selfcomm {

using MemberId = int;
// Sorted ascending, no duplicates, unless a caller explicitly passes a multiset
// of voters (vote counting respects multiplicity).
using MemberSet = std::vector<MemberId>;

struct RankedSystem {
    int n = 0;
    // rankings[i] may be partial (shorter than n) and may or may not contain i.
    std::vector<std::vector<MemberId>> rankings;

    long long prefix_len(MemberId v, long long cut) const {
        long long len = static_cast<long long>(rankings[v].size());
        return cut < len ? cut : len;
    }
    void validate() const;  // throws std::invalid_argument
};

struct WeightedSystem {
    int n = 0;
    // Sparse rows sorted by target id; absent means 0.  Weights in [0,1].
    std::vector<std::vector<std::pair<MemberId, Rational>>> rows;

    Rational weight(MemberId i, MemberId j) const;
    void set_weight(MemberId i, MemberId j, const Rational& w);
    void validate() const;
};

struct CommunityParams {
    Rational theta;
    Rational alpha;
    Rational beta;

    Rational gamma() const { return alpha - beta; }
    void validate() const;  // 0 <= beta < alpha <= 1, theta > 0
};

struct VoteTally {
    std::unordered_map<MemberId, Rational> votes;

    Rational at(MemberId i) const {
        auto it = votes.find(i);
        return it == votes.end() ? Rational(0) : it->second;
    }
    Rational total() const;
};

struct Community {
    MemberSet members;
    CommunityParams params;
    bool verified = false;
};

struct VerifyResult {
    bool ok = false;
    VoteTally tally;  // witness certificate
    explicit operator bool() const { return ok; }
};

// Number of voters whose prefix (first min(prefix_len, list length) entries)
// contains each member.  `voters` may contain repeats (multiset semantics).
VoteTally vote_count_ranked(const RankedSystem& system, const MemberSet& voters,
                            long long prefix_len);

// Descending-prefix truncation of a weight row to total `cap`.  Entries tied at
// the boundary value share the residual budget; larger entries pass through.
std::vector<Rational> capped_vote_vector(const std::vector<Rational>& weights,
                                         const Rational& cap);

VoteTally weighted_vote_tally(const WeightedSystem& system, const MemberSet& voters,
                              long long target_size, const Rational& theta);

VerifyResult verify_ranked_community(const RankedSystem& system, const MemberSet& S,
                                     const CommunityParams& params);

VerifyResult verify_weighted_community(const WeightedSystem& system, const MemberSet& S,
                                       const CommunityParams& params);

// True iff |pi_v(1:ceil(theta*|S|)) intersect S| >= |S|/2.  Requires v in S.
bool is_good_seed(const RankedSystem& system, const MemberSet& S, MemberId v,
                  const Rational& theta);

// ceil(theta * t): the ranked vote prefix length.
long long vote_prefix_len(const Rational& theta, long long t);

bool set_contains(const MemberSet& sorted_set, MemberId v);

}  // namespace selfcomm
