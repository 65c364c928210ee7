#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/rng.hpp"

namespace selfcomm {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumConfig {
    CommunityParams params;
    long long size = 0;  // target community size t
    double delta = 0.1;
    // 0 means "derive the default from the params"
    long long k1 = 0;
    long long k2 = 0;
    long long n2 = 0;
    long long candidate_budget = 2'000'000;
    long long n2_cap = 64;  // practical ceiling on purification repetitions
    std::uint64_t rng_seed = 1;
    int threads = 1;

    long long default_k1() const;  // ceil(ln(16/gamma)/alpha)
    long long default_k2() const;  // ceil((8/gamma^2) ln(32 theta k1/(gamma delta)))
    long long default_n2() const;  // ceil((2 theta k1)^k2 ln(1/delta)), capped at n2_cap
    long long effective_k1() const { return k1 > 0 ? k1 : default_k1(); }
    long long effective_k2() const { return k2 > 0 ? k2 : default_k2(); }
    long long effective_n2() const { return n2 > 0 ? n2 : default_n2(); }
};

// Deduplicated, verified communities keyed by sorted member set (lexicographic
// order doubles as the stable output order).  Identity ignores params: the same
// set may verify at several settings.
struct CommunitySet {
    std::map<MemberSet, std::string> entries;  // members -> provenance tag

    bool add(const MemberSet& members, const std::string& provenance) {
        return entries.emplace(members, provenance).second;
    }
    bool contains(const MemberSet& members) const { return entries.count(members) > 0; }
    size_t size() const { return entries.size(); }
    void merge(const CommunitySet& other) {
        for (const auto& [m, p] : other.entries) entries.emplace(m, p);
    }
};

// Greedy prefix cover of S: repeatedly pick the member of S whose vote prefix
// covers the most still-uncovered members.  Stops once uncovered <= (gamma/16)|S|
// or ceil(ln(16/gamma)/alpha) pickers were taken.  Returns (pickers, union of
// their prefixes).
std::pair<MemberSet, MemberSet> greedy_cover(const RankedSystem& system, const MemberSet& S,
                                             const CommunityParams& params);

// All C(n, k1) candidate supersets: union of the ceil(theta*t)-prefixes over
// every size-k1 subset of V.
std::vector<MemberSet> rough_list_exhaustive(const RankedSystem& system,
                                             const EnumConfig& config);

// Sampling refinement: U2 (k2 draws with replacement from S1) -> S2 (members of
// S1 above the (alpha-gamma/2) vote fraction) -> S3 (all of V above the same
// fraction of S2).  May return a non-community; callers filter via the verifier.
MemberSet purify(const RankedSystem& system, const MemberSet& S1,
                 const CommunityParams& params, long long t, long long k2, Rng& rng);

CommunitySet enumerate_main(const RankedSystem& system, const EnumConfig& config);

// Exact Pr[x = R(R(y))] where R(v) is uniform over the first min(ceil(theta*t),
// list length) entries of pi_v.
Rational rr_probability(const RankedSystem& system, MemberId y, MemberId x, long long t,
                        const Rational& theta);

// Two-hop candidate supersets: for every size-(ceil(ln(1/alpha)/alpha)+1) subset
// U0, members whose summed rr_probability from U0 clears alpha/(2 theta^2 t).
std::vector<MemberSet> rough_list_alt(const RankedSystem& system, const EnumConfig& config);

// Exhaustive multiset baseline: every size-k multiset U of V, every t in
// [size_range.first, size_range.second]; keeps verifier-passing vote winners.
CommunitySet enumerate_quasipoly(const RankedSystem& system, const CommunityParams& params,
                                 std::optional<long long> k_override,
                                 std::pair<long long, long long> size_range,
                                 long long budget = 2'000'000);

// Ground truth by scanning every nonempty subset.  Refuses above the limit.
CommunitySet brute_force_oracle(const RankedSystem& system, const CommunityParams& params,
                                std::pair<long long, long long> size_range, int limit = 14);
CommunitySet brute_force_oracle(const WeightedSystem& system, const CommunityParams& params,
                                std::pair<long long, long long> size_range, int limit = 14);

// Saturating binomial coefficient (caps at `cap`).
long long binomial_capped(long long n, long long k, long long cap);

// Advance a sorted k-subset of [0,n) to its lexicographic successor; false when
// exhausted.
bool next_k_subset(std::vector<int>& idx, int n);

}  // namespace selfcomm
