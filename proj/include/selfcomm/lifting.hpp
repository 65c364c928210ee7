#pragma once

#include <string>
#include <vector>

#include "selfcomm/core.hpp"

namespace selfcomm {

struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SocialGraph {
    int n = 0;
    bool directed = false;
    // out[i] = (target, weight in (0,1]), sorted by target, no parallel edges.
    // Undirected graphs are stored symmetrically; a self-loop is a single entry.
    std::vector<std::vector<std::pair<MemberId, Rational>>> out;

    void add_edge(MemberId i, MemberId j, const Rational& w);
    bool has_selfloop(MemberId i) const;
    long long out_degree(MemberId i) const { return static_cast<long long>(out[i].size()); }
    void validate() const;
};

struct LiftConfig {
    enum class Method { direct, shortest_path, ppr, resistance };
    Method method = Method::direct;
    double teleport = 0.15;
    double ppr_tol = 1e-9;
    long long ppr_max_iter = 100000;
};

// a_{i,j} = w_{i,j} on edges, 0 elsewhere.
WeightedSystem direct_lift(const SocialGraph& graph);

// a_{i,j} = d_min / d_{i,j} with d = shortest-path distance over edge weights as
// lengths and d_min the smallest positive pairwise distance (so the largest
// affinity is 1); a_{i,i} = 1, unreachable pairs 0.
WeightedSystem shortest_path_lift(const SocialGraph& graph);

// Personalized PageRank rows, max-normalized to 1.  Dangling walks teleport home.
WeightedSystem ppr_lift(const SocialGraph& graph, const LiftConfig& config);

// a_{i,j} = min_{k != i} r_{i,k} / r_{i,j} with r = effective resistance
// (conductance w per edge); a_{i,i} = 1, cross-component pairs 0.
WeightedSystem resistance_lift(const SocialGraph& graph, const LiftConfig& config);

WeightedSystem lift(const SocialGraph& graph, const LiftConfig& config);

// Weighted verification on the direct lift; for unweighted graphs this makes a
// voter of degree d_i contribute min(1, theta|S|/d_i) per out-edge into S.
VerifyResult verify_graph_community(const SocialGraph& graph, const MemberSet& S,
                                    const CommunityParams& params);

// (alpha,beta)-cluster check on an undirected graph where every vertex has a
// self-loop: inside degree >= alpha|S| for members, <= beta|S| for outsiders.
bool verify_alpha_beta_cluster(const SocialGraph& graph, const MemberSet& S,
                               const Rational& alpha, const Rational& beta);

// Effective resistances from one source to all nodes in its component; -1 for
// cross-component pairs.  Exposed for tests.
std::vector<double> effective_resistances(const SocialGraph& graph, MemberId source);

}  // namespace selfcomm
