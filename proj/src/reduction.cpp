#include "selfcomm/reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace selfcomm {

std::vector<std::pair<int, int>> build_bipartite_regular(int k, int d) {
    if (d < 0 || d > k) throw std::invalid_argument("degree must be in [0, k]");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(k) * d);
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < d; ++r) edges.emplace_back(i, (i + r) % k);
    return edges;
}

std::pair<RankedSystem, BlobMap> reduce(const WeightedSystem& system,
                                        const CommunityParams& params, long long t,
                                        const Rational& epsilon) {
    params.validate();
    if (t < 1) throw std::invalid_argument("target size must be >= 1");
    if (epsilon <= 0 || epsilon >= params.alpha)
        throw std::invalid_argument("epsilon must be in (0, alpha)");

    BlobMap map;
    map.k = static_cast<int>(ceil_to_int(Rational(1) / epsilon));
    map.n_original = system.n;
    RankedSystem reduced;
    reduced.n = map.reduced_n();
    reduced.rankings.assign(reduced.n, {});

    Rational cap = params.theta * t;
    std::vector<Rational> row_weights;
    for (MemberId s = 0; s < system.n; ++s) {
        const auto& row = system.rows[s];
        row_weights.clear();
        for (const auto& [j, w] : row) row_weights.push_back(w);
        std::vector<Rational> capped =
            row_weights.empty() ? row_weights : capped_vote_vector(row_weights, cap);

        // target blobs ordered by capped weight descending, ties by id
        std::vector<std::pair<Rational, MemberId>> targets;
        for (size_t idx = 0; idx < row.size(); ++idx)
            if (capped[idx] > 0) targets.emplace_back(capped[idx], row[idx].first);
        std::sort(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });

        for (const auto& [p, target] : targets) {
            int d = static_cast<int>(floor_to_int(p * map.k));
            if (d == 0) continue;
            int left_base = s * map.k;
            int right_base = target * map.k;
            for (int i = 0; i < map.k; ++i) {
                auto& list = reduced.rankings[left_base + i];
                for (int r = 0; r < d; ++r) list.push_back(right_base + (i + r) % map.k);
            }
        }
    }
    return {std::move(reduced), map};
}

CommunitySet map_back(const std::vector<MemberSet>& reduced_communities,
                      const BlobMap& blob_map, const WeightedSystem& original,
                      const CommunityParams& params) {
    CommunitySet out;
    for (const MemberSet& rc : reduced_communities) {
        std::vector<int> present(blob_map.n_original, 0);
        for (MemberId node : rc) {
            if (node < 0 || node >= blob_map.reduced_n())
                throw std::invalid_argument("blob node out of range");
            ++present[blob_map.backward(node)];
        }
        MemberSet S;
        for (MemberId s = 0; s < blob_map.n_original; ++s)
            if (2 * present[s] >= blob_map.k) S.push_back(s);
        if (S.empty() || out.contains(S)) continue;
        if (verify_weighted_community(original, S, params).ok) out.add(S, "reduction-map-back");
    }
    return out;
}

}  // namespace selfcomm
