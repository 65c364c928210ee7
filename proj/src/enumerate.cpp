#include "selfcomm/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "selfcomm/parallel.hpp"

namespace selfcomm {

namespace {

// non-decreasing index tuples = multisets
bool next_multiset(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - 1) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[i];
            return true;
        }
    }
    return false;
}

MemberSet prefix_union(const RankedSystem& system, const std::vector<int>& members,
                       long long prefix) {
    MemberSet out;
    for (int u : members) {
        long long L = system.prefix_len(u, prefix);
        const auto& list = system.rankings[u];
        out.insert(out.end(), list.begin(), list.begin() + L);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

bool next_k_subset(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

long long binomial_capped(long long n, long long k, long long cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        if (r > cap) return cap + 1;
        // r * (n-k+i) cannot overflow while r <= cap <= ~9e15/n
        r = r * (n - k + i) / i;
    }
    return r > cap ? cap + 1 : r;
}

long long EnumConfig::default_k1() const {
    double g = to_double(params.gamma());
    double a = to_double(params.alpha);
    return static_cast<long long>(std::ceil(std::log(16.0 / g) / a));
}

long long EnumConfig::default_k2() const {
    double g = to_double(params.gamma());
    double th = to_double(params.theta);
    double k1v = static_cast<double>(effective_k1());
    return static_cast<long long>(
        std::ceil(8.0 / (g * g) * std::log(32.0 * th * k1v / (g * delta))));
}

long long EnumConfig::default_n2() const {
    double th = to_double(params.theta);
    double k1v = static_cast<double>(effective_k1());
    double k2v = static_cast<double>(effective_k2());
    double raw = std::pow(2.0 * th * k1v, k2v) * std::log(1.0 / delta);
    if (!std::isfinite(raw) || raw > static_cast<double>(n2_cap)) return n2_cap;
    long long v = static_cast<long long>(std::ceil(raw));
    return v < 1 ? 1 : v;
}

std::pair<MemberSet, MemberSet> greedy_cover(const RankedSystem& system, const MemberSet& S,
                                             const CommunityParams& params) {
    if (S.empty()) throw std::invalid_argument("empty member set");
    params.validate();
    long long t = static_cast<long long>(S.size());
    long long prefix = vote_prefix_len(params.theta, t);
    Rational slack = params.gamma() / 16 * t;
    double a = to_double(params.alpha);
    double g = to_double(params.gamma());
    long long max_pickers = static_cast<long long>(std::ceil(std::log(16.0 / g) / a));

    MemberSet uncovered = S;  // sorted
    MemberSet pickers;
    while (Rational(static_cast<long long>(uncovered.size())) > slack &&
           static_cast<long long>(pickers.size()) < max_pickers) {
        MemberId best = -1;
        long long best_cover = -1;
        for (MemberId s : S) {
            long long L = system.prefix_len(s, prefix);
            const auto& list = system.rankings[s];
            long long cover = 0;
            for (long long p = 0; p < L; ++p)
                if (set_contains(uncovered, list[p])) ++cover;
            if (cover > best_cover) {
                best_cover = cover;
                best = s;
            }
        }
        if (best_cover <= 0) break;  // nobody covers anything new
        pickers.push_back(best);
        long long L = system.prefix_len(best, prefix);
        const auto& list = system.rankings[best];
        MemberSet covered_now(list.begin(), list.begin() + L);
        std::sort(covered_now.begin(), covered_now.end());
        MemberSet rest;
        std::set_difference(uncovered.begin(), uncovered.end(), covered_now.begin(),
                            covered_now.end(), std::back_inserter(rest));
        uncovered = std::move(rest);
    }
    std::sort(pickers.begin(), pickers.end());
    std::vector<int> picker_ints(pickers.begin(), pickers.end());
    MemberSet covered = prefix_union(system, picker_ints, prefix);
    return {pickers, covered};
}

std::vector<MemberSet> rough_list_exhaustive(const RankedSystem& system,
                                             const EnumConfig& config) {
    long long k1 = config.effective_k1();
    if (k1 > system.n) k1 = system.n;
    long long count = binomial_capped(system.n, k1, config.candidate_budget);
    if (count > config.candidate_budget)
        throw BudgetExceeded(
            "candidate count C(n,k1) exceeds the budget; try the local strategy, the "
            "two-hop rough list, or a smaller k1");
    long long prefix = vote_prefix_len(config.params.theta, config.size);
    std::vector<MemberSet> out;
    out.reserve(count);
    std::vector<int> idx(k1);
    for (long long i = 0; i < k1; ++i) idx[i] = static_cast<int>(i);
    if (k1 == 0) return out;
    do {
        out.push_back(prefix_union(system, idx, prefix));
    } while (next_k_subset(idx, system.n));
    return out;
}

MemberSet purify(const RankedSystem& system, const MemberSet& S1,
                 const CommunityParams& params, long long t, long long k2, Rng& rng) {
    if (S1.empty()) throw std::invalid_argument("empty candidate superset");
    long long prefix = vote_prefix_len(params.theta, t);
    Rational fraction = params.alpha - params.gamma() / 2;

    MemberSet u2(k2);
    for (long long i = 0; i < k2; ++i)
        u2[i] = S1[rng.below(static_cast<std::uint64_t>(S1.size()))];

    VoteTally first = vote_count_ranked(system, u2, prefix);
    Rational thr1 = fraction * k2;
    MemberSet s2;
    for (MemberId i : S1)
        if (first.at(i) >= thr1) s2.push_back(i);
    if (s2.empty()) return {};

    VoteTally second = vote_count_ranked(system, s2, prefix);
    Rational thr2 = fraction * static_cast<long long>(s2.size());
    MemberSet s3;
    for (const auto& [i, v] : second.votes)
        if (v >= thr2) s3.push_back(i);
    std::sort(s3.begin(), s3.end());
    return s3;
}

CommunitySet enumerate_main(const RankedSystem& system, const EnumConfig& config) {
    config.params.validate();
    if (config.size < 1) throw std::invalid_argument("target size must be >= 1");
    std::vector<MemberSet> candidates = rough_list_exhaustive(system, config);
    long long k2 = config.effective_k2();
    long long n2 = config.effective_n2();

    std::vector<CommunitySet> partial(candidates.size());
    parallel_for(static_cast<long long>(candidates.size()), config.threads, [&](long long c) {
        const MemberSet& s1 = candidates[c];
        if (s1.empty()) return;
        for (long long rep = 0; rep < n2; ++rep) {
            Rng rng = Rng::derive(config.rng_seed, {static_cast<std::uint64_t>(c),
                                                    static_cast<std::uint64_t>(rep)});
            MemberSet s3 = purify(system, s1, config.params, config.size, k2, rng);
            if (s3.empty()) continue;
            if (!verify_ranked_community(system, s3, config.params).ok) continue;
            partial[c].add(s3, "exhaustive-rough+purify");
            // early exit once the find is stable under re-purification
            Rng again = Rng::derive(config.rng_seed, {static_cast<std::uint64_t>(c),
                                                      static_cast<std::uint64_t>(rep),
                                                      0x57ab1eULL});
            MemberSet s3b = purify(system, s3, config.params, config.size, k2, again);
            if (s3b == s3) break;
        }
    });
    CommunitySet out;
    for (const auto& p : partial) out.merge(p);
    return out;
}

Rational rr_probability(const RankedSystem& system, MemberId y, MemberId x, long long t,
                        const Rational& theta) {
    long long cut = vote_prefix_len(theta, t);
    long long Ly = system.prefix_len(y, cut);
    if (Ly == 0) throw std::invalid_argument("seed has an empty prefix");
    Rational total = 0;
    const auto& list = system.rankings[y];
    for (long long p = 0; p < Ly; ++p) {
        MemberId z = list[p];
        long long Lz = system.prefix_len(z, cut);
        if (Lz == 0) continue;  // dead branch: no second hop
        const auto& zlist = system.rankings[z];
        for (long long q = 0; q < Lz; ++q) {
            if (zlist[q] == x) {
                total += Rational(1) / (Ly * Lz);
                break;
            }
        }
    }
    return total;
}

std::vector<MemberSet> rough_list_alt(const RankedSystem& system, const EnumConfig& config) {
    config.params.validate();
    double a = to_double(config.params.alpha);
    long long k1p = static_cast<long long>(std::ceil(std::log(1.0 / a) / a)) + 1;
    if (k1p > system.n) k1p = system.n;
    long long count = binomial_capped(system.n, k1p, config.candidate_budget);
    if (count > config.candidate_budget)
        throw BudgetExceeded("subset count C(n,k1') exceeds the budget");
    long long cut = vote_prefix_len(config.params.theta, config.size);
    Rational threshold =
        config.params.alpha / (2 * config.params.theta * config.params.theta * config.size);

    std::vector<MemberSet> out;
    out.reserve(count);
    std::vector<int> idx(k1p);
    for (long long i = 0; i < k1p; ++i) idx[i] = static_cast<int>(i);
    do {
        std::unordered_map<MemberId, Rational> score;
        for (int y : idx) {
            long long Ly = system.prefix_len(y, cut);
            if (Ly == 0) continue;
            const auto& list = system.rankings[y];
            for (long long p = 0; p < Ly; ++p) {
                MemberId z = list[p];
                long long Lz = system.prefix_len(z, cut);
                if (Lz == 0) continue;
                Rational w = Rational(1) / (Ly * Lz);
                const auto& zlist = system.rankings[z];
                for (long long q = 0; q < Lz; ++q) score[zlist[q]] += w;
            }
        }
        MemberSet s1;
        for (const auto& [x, sc] : score)
            if (sc >= threshold) s1.push_back(x);
        std::sort(s1.begin(), s1.end());
        out.push_back(std::move(s1));
    } while (next_k_subset(idx, system.n));
    return out;
}

CommunitySet enumerate_quasipoly(const RankedSystem& system, const CommunityParams& params,
                                 std::optional<long long> k_override,
                                 std::pair<long long, long long> size_range, long long budget) {
    params.validate();
    double g = to_double(params.gamma());
    long long k = k_override.value_or(
        static_cast<long long>(std::ceil(2.0 * std::log(4.0 * system.n) / (g * g))));
    if (k < 1) k = 1;
    long long count = binomial_capped(system.n + k - 1, k, budget);
    if (count > budget)
        throw BudgetExceeded("multiset count C(n+k-1,k) exceeds the budget; lower k or use "
                             "enumerate_main");

    Rational fraction = params.alpha - params.gamma() / 2;
    Rational thr = fraction * k;
    CommunitySet out;
    std::vector<int> idx(k, 0);
    do {
        MemberSet voters(idx.begin(), idx.end());
        for (long long t = size_range.first; t <= size_range.second; ++t) {
            if (t < 1 || t > system.n) continue;
            VoteTally tally =
                vote_count_ranked(system, voters, vote_prefix_len(params.theta, t));
            MemberSet su;
            for (const auto& [i, v] : tally.votes)
                if (v >= thr) su.push_back(i);
            if (su.empty()) continue;
            std::sort(su.begin(), su.end());
            if (out.contains(su)) continue;
            if (verify_ranked_community(system, su, params).ok)
                out.add(su, "quasipoly-multiset");
        }
    } while (next_multiset(idx, system.n));
    return out;
}

namespace {

template <class System, class Verify>
CommunitySet oracle_scan(const System& system, std::pair<long long, long long> size_range,
                         int limit, Verify&& verify) {
    if (system.n < 1) throw std::invalid_argument("empty system");
    if (system.n > limit)
        throw std::invalid_argument("brute-force oracle limit exceeded (n=" +
                                    std::to_string(system.n) + ")");
    CommunitySet out;
    for (std::uint64_t mask = 1; mask < (1ULL << system.n); ++mask) {
        long long sz = __builtin_popcountll(mask);
        if (sz < size_range.first || sz > size_range.second) continue;
        MemberSet S;
        for (int i = 0; i < system.n; ++i)
            if (mask & (1ULL << i)) S.push_back(i);
        if (verify(S)) out.add(S, "brute-force-oracle");
    }
    return out;
}

}  // namespace

CommunitySet brute_force_oracle(const RankedSystem& system, const CommunityParams& params,
                                std::pair<long long, long long> size_range, int limit) {
    return oracle_scan(system, size_range, limit, [&](const MemberSet& S) {
        return verify_ranked_community(system, S, params).ok;
    });
}

CommunitySet brute_force_oracle(const WeightedSystem& system, const CommunityParams& params,
                                std::pair<long long, long long> size_range, int limit) {
    return oracle_scan(system, size_range, limit, [&](const MemberSet& S) {
        return verify_weighted_community(system, S, params).ok;
    });
}

}  // namespace selfcomm
