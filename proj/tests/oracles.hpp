// Shared fixtures and naive reference implementations used to cross-check the
// library.  Everything here is deliberately written the slow, obvious way
// (dense scans, no sparsity or early exits) so the two code paths share no
// logic beyond the frozen contract.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/multifacet.hpp"
#include "selfcomm/rng.hpp"

namespace fixtures {

using namespace selfcomm;

inline RankedSystem inst_a() {
    RankedSystem sys;
    sys.n = 4;
    sys.rankings = {{0, 1, 2, 3}, {1, 0, 2, 3}, {2, 3, 0, 1}, {3, 2, 0, 1}};
    return sys;
}

// Two overlapping size-8 sets on 16 members: A1 = {0..7}, A2 = {6..13}.
inline RankedSystem inst_b() {
    RankedSystem sys;
    sys.n = 16;
    auto range = [](std::vector<MemberId>& v, int lo, int hi) {
        for (int j = lo; j < hi; ++j) v.push_back(j);
    };
    sys.rankings.resize(16);
    for (int i = 0; i < 16; ++i) {
        auto& r = sys.rankings[i];
        if (i < 6) {  // A1 only
            range(r, 0, 8);
            range(r, 8, 14);
            range(r, 14, 16);
        } else if (i < 8) {  // overlap
            range(r, 0, 14);
            range(r, 14, 16);
        } else if (i < 14) {  // A2 only
            range(r, 6, 14);
            range(r, 0, 6);
            range(r, 14, 16);
        } else {
            range(r, 0, 16);
        }
    }
    return sys;
}

inline MemberSet inst_b_a1() { return {0, 1, 2, 3, 4, 5, 6, 7}; }
inline MemberSet inst_b_a2() { return {6, 7, 8, 9, 10, 11, 12, 13}; }

inline WeightedSystem inst_w() {
    WeightedSystem sys;
    sys.n = 3;
    sys.rows.resize(3);
    sys.set_weight(0, 1, Rational(1));
    sys.set_weight(0, 2, Rational(1, 5));
    sys.set_weight(1, 0, Rational(1));
    sys.set_weight(1, 2, Rational(1, 5));
    sys.set_weight(2, 0, Rational(1, 2));
    sys.set_weight(2, 1, Rational(1, 2));
    return sys;
}

// Facet 1 = inst_a rankings, facet 2 = each list reversed.
inline FacetedSystem f_inst() {
    FacetedSystem sys;
    sys.n = 4;
    sys.f = 2;
    sys.rankings.resize(4);
    RankedSystem base = inst_a();
    for (int i = 0; i < 4; ++i) {
        sys.rankings[i].push_back(base.rankings[i]);
        std::vector<MemberId> rev(base.rankings[i].rbegin(), base.rankings[i].rend());
        sys.rankings[i].push_back(rev);
    }
    return sys;
}

// Random total-permutation system; self ranked first with probability 1/2.
inline RankedSystem random_total(int n, Rng& rng, bool self_first = false) {
    RankedSystem sys;
    sys.n = n;
    sys.rankings.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<MemberId> ids;
        for (int j = 0; j < n; ++j) ids.push_back(j);
        for (size_t a = ids.size(); a > 1; --a)
            std::swap(ids[a - 1], ids[rng.below(static_cast<std::uint64_t>(a))]);
        if (self_first || rng.below(2) == 0) {
            auto it = std::find(ids.begin(), ids.end(), i);
            std::rotate(ids.begin(), it, it + 1);
        }
        sys.rankings[i] = ids;
    }
    return sys;
}

// Random partial-list system (lengths 1..n).
inline RankedSystem random_partial(int n, Rng& rng) {
    RankedSystem sys = random_total(n, rng);
    for (int i = 0; i < n; ++i)
        sys.rankings[i].resize(1 + rng.below(static_cast<std::uint64_t>(n)));
    return sys;
}

// ---- naive reference implementations ----

inline std::vector<Rational> naive_ranked_tally(const RankedSystem& sys, const MemberSet& voters,
                                                long long prefix) {
    std::vector<Rational> tally(sys.n, Rational(0));
    for (MemberId s : voters) {
        long long L = std::min<long long>(prefix, sys.rankings[s].size());
        for (long long q = 0; q < L; ++q) tally[sys.rankings[s][q]] += 1;
    }
    return tally;
}

// Frozen capping contract, stated group-wise on distinct values: larger-than-
// boundary entries pass whole; the boundary group keeps whole copies while a
// further whole copy would still fit strictly under the leftover budget, and
// the remaining boundary entries split what is left equally.
inline std::vector<Rational> naive_capped(const std::vector<Rational>& w, const Rational& cap) {
    Rational total(0);
    for (const auto& v : w) total += v;
    if (total <= cap) return w;
    std::map<Rational, long long, std::greater<Rational>> groups;
    for (const auto& v : w)
        if (v > 0) ++groups[v];
    Rational kept(0);
    Rational boundary(-1);
    long long tied = 0;
    for (const auto& [value, count] : groups) {
        if (kept + value * count <= cap) {
            kept += value * count;
            continue;
        }
        boundary = value;
        tied = count;
        break;
    }
    std::vector<Rational> out(w.size(), Rational(0));
    if (boundary < 0) return w;  // unreachable when total > cap
    long long full = 0;
    if (kept + boundary <= cap) {
        full = floor_to_int((cap - kept) / boundary) - 1;
        if (full < 0) full = 0;
        if (full > tied) full = tied;
    }
    Rational share = tied > full ? (cap - kept - boundary * full) / (tied - full) : Rational(0);
    long long fulls_left = full;
    std::map<Rational, long long, std::greater<Rational>> seen;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] > boundary) {
            out[i] = w[i];
        } else if (w[i] == boundary) {
            if (fulls_left > 0) {
                out[i] = boundary;
                --fulls_left;
            } else {
                out[i] = share;
            }
        }
    }
    return out;
}

inline std::vector<Rational> naive_weighted_tally(const WeightedSystem& sys,
                                                  const MemberSet& voters, long long t,
                                                  const Rational& theta) {
    std::vector<Rational> tally(sys.n, Rational(0));
    for (MemberId s : voters) {
        std::vector<Rational> row(sys.n, Rational(0));
        for (int j = 0; j < sys.n; ++j) row[j] = sys.weight(s, j);
        std::vector<Rational> capped = naive_capped(row, theta * t);
        for (int j = 0; j < sys.n; ++j) tally[j] += capped[j];
    }
    return tally;
}

inline bool naive_verify_ranked(const RankedSystem& sys, const MemberSet& S,
                                const CommunityParams& p) {
    long long t = static_cast<long long>(S.size());
    long long prefix = ceil_to_int(p.theta * t);
    std::vector<Rational> tally = naive_ranked_tally(sys, S, prefix);
    for (int j = 0; j < sys.n; ++j) {
        bool member = std::binary_search(S.begin(), S.end(), j);
        if (member && tally[j] < p.alpha * t) return false;
        if (!member && tally[j] > p.beta * t) return false;
    }
    return true;
}

inline bool naive_verify_weighted(const WeightedSystem& sys, const MemberSet& S,
                                  const CommunityParams& p) {
    long long t = static_cast<long long>(S.size());
    std::vector<Rational> tally = naive_weighted_tally(sys, S, t, p.theta);
    for (int j = 0; j < sys.n; ++j) {
        bool member = std::binary_search(S.begin(), S.end(), j);
        if (member && tally[j] < p.alpha * t) return false;
        if (!member && tally[j] > p.beta * t) return false;
    }
    return true;
}

// All nonempty subsets of [0,n) as sorted member sets (n small).
inline std::vector<MemberSet> all_subsets(int n) {
    std::vector<MemberSet> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        MemberSet S;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) S.push_back(i);
        out.push_back(S);
    }
    return out;
}

}  // namespace fixtures
