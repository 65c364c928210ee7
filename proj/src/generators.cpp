#include "selfcomm/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "selfcomm/enumerate.hpp"

namespace selfcomm {

namespace {

std::vector<MemberId> shuffled(std::vector<MemberId> ids, Rng& rng) {
    for (size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[rng.below(static_cast<std::uint64_t>(i))]);
    return ids;
}

}  // namespace

MemberSet BlobInstance::blob(long long index) const {
    MemberSet out;
    for (long long i = index * blob_size; i < (index + 1) * blob_size; ++i)
        out.push_back(static_cast<MemberId>(i));
    return out;
}

BlobInstance gen_blob_instance(long long L, long long b, Rng& rng, long long max_union,
                               const Rational& theta) {
    if (L < 1 || b < 1) throw std::invalid_argument("blob count and size must be >= 1");
    BlobInstance inst;
    inst.blob_count = L;
    inst.blob_size = b;
    long long n = L * b;
    inst.system.n = static_cast<int>(n);
    inst.system.rankings.resize(n);

    for (long long g = 0; g < L; ++g) {
        std::vector<MemberId> outsiders;
        outsiders.reserve(n - b);
        for (long long j = 0; j < n; ++j)
            if (j / b != g) outsiders.push_back(static_cast<MemberId>(j));
        for (long long i = g * b; i < (g + 1) * b; ++i) {
            auto& list = inst.system.rankings[i];
            list.reserve(n);
            list.push_back(static_cast<MemberId>(i));  // self first
            for (long long j = g * b; j < (g + 1) * b; ++j)
                if (j != i) list.push_back(static_cast<MemberId>(j));
            std::vector<MemberId> tail = shuffled(outsiders, rng);
            list.insert(list.end(), tail.begin(), tail.end());
        }
    }

    long long cap = max_union < L ? max_union : L;
    for (long long l = 1; l <= cap; ++l) {
        std::vector<int> idx(l);
        for (long long i = 0; i < l; ++i) idx[i] = static_cast<int>(i);
        do {
            PlantedCommunity pc;
            for (int g : idx) {
                MemberSet members = inst.blob(g);
                pc.members.insert(pc.members.end(), members.begin(), members.end());
            }
            std::sort(pc.members.begin(), pc.members.end());
            pc.params = {theta, Rational(1, l), Rational(1, 2 * l)};
            inst.planted.push_back(std::move(pc));
        } while (next_k_subset(idx, static_cast<int>(L)));
    }
    return inst;
}

OverlapPair gen_overlap_pair(int n) {
    if (n < 16 || n % 16 != 0) throw std::invalid_argument("n must be a positive multiple of 16");
    int q = n / 16;
    OverlapPair pair;
    pair.system.n = n;
    pair.system.rankings.resize(n);
    for (int i = 0; i < 8 * q; ++i) pair.a1.push_back(i);
    for (int i = 6 * q; i < 14 * q; ++i) pair.a2.push_back(i);
    pair.params = {Rational(1), Rational(3, 4), Rational(1, 4)};

    auto append_range = [](std::vector<MemberId>& list, int lo, int hi) {
        for (int j = lo; j < hi; ++j) list.push_back(j);
    };
    for (int i = 0; i < n; ++i) {
        auto& list = pair.system.rankings[i];
        list.reserve(n);
        if (i < 6 * q) {  // A1 only
            append_range(list, 0, 8 * q);       // A1
            append_range(list, 8 * q, 14 * q);  // A2 \ A1
            append_range(list, 14 * q, n);
        } else if (i < 8 * q) {  // overlap
            append_range(list, 0, 14 * q);  // A1 union A2
            append_range(list, 14 * q, n);
        } else if (i < 14 * q) {  // A2 only
            append_range(list, 6 * q, 14 * q);  // A2
            append_range(list, 0, 6 * q);       // A1 \ A2
            append_range(list, 14 * q, n);
        } else {
            append_range(list, 0, n);
        }
    }
    return pair;
}

SocialGraph gen_gnp_base(int n, double p, bool selfloops, Rng& rng) {
    if (n < 0 || p < 0 || p > 1) throw std::invalid_argument("bad G(n,p) parameters");
    SocialGraph g;
    g.n = n;
    g.directed = false;
    g.out.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.unit() < p) g.add_edge(i, j, Rational(1));
    if (selfloops)
        for (int i = 0; i < n; ++i) g.add_edge(i, i, Rational(1));
    return g;
}

SocialGraph gen_gnp(int n, double p, bool selfloops, Rng& rng) {
    return gen_gnp_base(n, p, selfloops, rng);
}

PlantedClique gen_gnp_planted_clique(int n, double p, int k, bool selfloops, Rng& rng) {
    if (k > n) throw std::invalid_argument("clique larger than the graph");
    PlantedClique out;
    out.graph = gen_gnp_base(n, p, selfloops, rng);
    std::vector<MemberId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
        std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(ids[i], ids[j]);
        out.clique.push_back(ids[i]);
    }
    std::sort(out.clique.begin(), out.clique.end());
    for (size_t a = 0; a < out.clique.size(); ++a)
        for (size_t b = a + 1; b < out.clique.size(); ++b) {
            MemberId i = out.clique[a], j = out.clique[b];
            bool present = false;
            for (const auto& [u, w] : out.graph.out[i])
                if (u == j) {
                    present = true;
                    break;
                }
            if (!present) out.graph.add_edge(i, j, Rational(1));
        }
    return out;
}

ClusterScan count_alpha_beta_clusters(const SocialGraph& graph, const Rational& alpha,
                                      const Rational& beta, const std::vector<long long>& sizes,
                                      long long budget) {
    long long total = 0;
    for (long long k : sizes) {
        if (k < 1 || k > graph.n) continue;
        total += binomial_capped(graph.n, k, budget);
        if (total > budget) throw BudgetExceeded("subset scan exceeds the budget");
    }
    ClusterScan scan;
    for (long long k : sizes) {
        if (k < 1 || k > graph.n) continue;
        std::vector<int> idx(k);
        for (long long i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
        do {
            ++scan.subsets_checked;
            MemberSet S(idx.begin(), idx.end());
            if (verify_alpha_beta_cluster(graph, S, alpha, beta)) scan.clusters.push_back(S);
        } while (next_k_subset(idx, graph.n));
    }
    return scan;
}

PlantedWeighted gen_planted_weighted(int n, int t, Rng& rng) {
    if (t < 1 || n < 2 * t) throw std::invalid_argument("need n >= 2t and t >= 1");
    for (int attempt = 0; attempt < 32; ++attempt) {
        PlantedWeighted out;
        out.system.n = n;
        out.system.rows.resize(n);

        std::vector<MemberId> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i;
        for (int i = 0; i < t; ++i) {
            std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(n - i));
            std::swap(ids[i], ids[j]);
            out.community.push_back(ids[i]);
        }
        std::sort(out.community.begin(), out.community.end());

        for (MemberId s : out.community) {
            for (MemberId j : out.community)
                out.system.set_weight(s, j, Rational(16 + rng.below(5), 20));  // 0.8 .. 1.0
            for (MemberId j = 0; j < n; ++j) {
                if (set_contains(out.community, j)) continue;
                if (rng.unit() < 0.5)
                    out.system.set_weight(s, j, Rational(1 + rng.below(4), 20));  // 0.05 .. 0.2
            }
        }
        for (MemberId s = 0; s < n; ++s) {
            if (set_contains(out.community, s)) continue;
            for (MemberId j = 0; j < n; ++j)
                if (j != s && rng.unit() < 0.25)
                    out.system.set_weight(s, j, Rational(1 + rng.below(4), 20));
        }

        VoteTally tally = weighted_vote_tally(out.system, out.community, t, Rational(1));
        Rational alpha(1);
        for (MemberId i : out.community) {
            Rational frac = tally.at(i) / t;
            if (frac < alpha) alpha = frac;
        }
        Rational beta(0);
        for (const auto& [j, v] : tally.votes) {
            if (set_contains(out.community, j)) continue;
            Rational frac = v / t;
            if (frac > beta) beta = frac;
        }
        if (alpha - beta < Rational(1, 2)) continue;  // insufficient margin, redraw
        out.params = {Rational(1), alpha, beta};
        return out;
    }
    throw std::runtime_error("failed to realize a planted weighted community with margin");
}

PlantedFaceted gen_planted_faceted(int n, int t, Rng& rng, const CommunityParams& params) {
    if (t < 1 || t > n) throw std::invalid_argument("bad planted size");
    params.validate();
    PlantedFaceted out;
    out.params = params;
    out.system.n = n;
    out.system.f = 2;
    out.system.rankings.resize(n);

    std::vector<MemberId> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < t; ++i) {
        std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(n - i));
        std::swap(ids[i], ids[j]);
        out.community.push_back(ids[i]);
    }
    std::sort(out.community.begin(), out.community.end());

    std::vector<MemberId> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::vector<MemberId> outsiders;
    for (int i = 0; i < n; ++i)
        if (!set_contains(out.community, i)) outsiders.push_back(i);

    for (int i = 0; i < n; ++i) {
        auto& facets = out.system.rankings[i];
        if (set_contains(out.community, i)) {
            std::vector<MemberId> first = out.community;
            std::vector<MemberId> tail = shuffled(outsiders, rng);
            first.insert(first.end(), tail.begin(), tail.end());
            facets.push_back(std::move(first));
            out.psi.psi[i] = 1;
        } else {
            facets.push_back(shuffled(all, rng));
        }
        facets.push_back(shuffled(all, rng));  // facet 2: pure noise
    }
    return out;
}

}  // namespace selfcomm
