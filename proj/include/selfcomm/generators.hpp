#pragma once

#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/lifting.hpp"
#include "selfcomm/multifacet.hpp"
#include "selfcomm/rng.hpp"

namespace selfcomm {

struct PlantedCommunity {
    MemberSet members;
    CommunityParams params;
};

struct BlobInstance {
    RankedSystem system;
    std::vector<PlantedCommunity> planted;
    long long blob_count = 0;
    long long blob_size = 0;

    MemberSet blob(long long index) const;
};

// L blobs of b members: each member ranks itself first, then its blob in id
// order, then a random permutation of everyone else.  Planted list carries all
// single blobs and all unions of up to max_union blobs tagged
// (theta, 1/l, 1/(2l)); union tags beyond l=1 hold statistically, not surely.
BlobInstance gen_blob_instance(long long L, long long b, Rng& rng, long long max_union = 1,
                               const Rational& theta = Rational(1));

struct OverlapPair {
    RankedSystem system;
    MemberSet a1;
    MemberSet a2;
    CommunityParams params;  // (1, 3/4, 1/4)
};

// Two overlapping communities of size n/2 sharing n/8 members; deterministic
// id-order construction.  n must be divisible by 16.
OverlapPair gen_overlap_pair(int n);

SocialGraph gen_gnp(int n, double p, bool selfloops, Rng& rng);

struct PlantedClique {
    SocialGraph graph;
    MemberSet clique;
};

SocialGraph gen_gnp_base(int n, double p, bool selfloops, Rng& rng);
PlantedClique gen_gnp_planted_clique(int n, double p, int k, bool selfloops, Rng& rng);

struct ClusterScan {
    long long subsets_checked = 0;
    std::vector<MemberSet> clusters;
};

// Exhaustive (alpha,beta)-cluster scan over all subsets with sizes in `sizes`.
ClusterScan count_alpha_beta_clusters(const SocialGraph& graph, const Rational& alpha,
                                      const Rational& beta, const std::vector<long long>& sizes,
                                      long long budget = 5'000'000);

struct PlantedWeighted {
    WeightedSystem system;
    MemberSet community;
    CommunityParams params;  // exact thresholds realized by the instance
};

// Random weighted instance with one planted community of size t (n >= 2t):
// heavy in-community weights, light noise elsewhere; params computed exactly
// from the realized tallies so the community verifies with margin gamma >= 1/2.
PlantedWeighted gen_planted_weighted(int n, int t, Rng& rng);

struct PlantedFaceted {
    FacetedSystem system;
    MemberSet community;
    FacetAssignment psi;  // facet 1 on every member
    CommunityParams params;
};

// Two-facet instance: members of the planted size-t community rank it first on
// facet 1; every other list is a random permutation.
PlantedFaceted gen_planted_faceted(int n, int t, Rng& rng,
                                   const CommunityParams& params = {Rational(1), Rational(1),
                                                                    Rational(1, 5)});

}  // namespace selfcomm
