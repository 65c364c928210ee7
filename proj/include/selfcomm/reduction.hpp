#pragma once

#include <utility>
#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/enumerate.hpp"

namespace selfcomm {

// Each original member s owns the contiguous blob [s*k, (s+1)*k).
struct BlobMap {
    int k = 0;
    int n_original = 0;

    std::pair<MemberId, MemberId> forward(MemberId s) const { return {s * k, (s + 1) * k}; }
    MemberId backward(MemberId node) const { return node / k; }
    int reduced_n() const { return n_original * k; }
};

// Circulant d-regular bipartite block: left i -> right (i+r) mod k for r < d.
std::vector<std::pair<int, int>> build_bipartite_regular(int k, int d);

// Expand a weighted system into an unweighted ranked one (partial lists).  A
// (theta, alpha, beta) weighted community S of size t maps to the
// (theta, alpha-eps, beta) community union of its blobs, of size k*t.
std::pair<RankedSystem, BlobMap> reduce(const WeightedSystem& system,
                                        const CommunityParams& params, long long t,
                                        const Rational& epsilon);

// Round blob-level sets back to original members (a blob counts as selected if
// at least half its nodes are present) and keep only sets that re-verify on the
// original system at the original params.
CommunitySet map_back(const std::vector<MemberSet>& reduced_communities,
                      const BlobMap& blob_map, const WeightedSystem& original,
                      const CommunityParams& params);

}  // namespace selfcomm
