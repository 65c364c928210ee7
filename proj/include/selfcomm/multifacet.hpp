#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selfcomm/core.hpp"
#include "selfcomm/enumerate.hpp"
#include "selfcomm/rng.hpp"

namespace selfcomm {

struct FacetedSystem {
    int n = 0;
    int f = 1;  // uniform upper bound on facets per member
    // rankings[i][q] = facet q+1 of member i; 1 <= facet count <= f.
    std::vector<std::vector<std::vector<MemberId>>> rankings;

    int facet_count(MemberId i) const { return static_cast<int>(rankings[i].size()); }
    void validate() const;
};

// psi: member -> facet index (1-based, within that member's facet count).
struct FacetAssignment {
    std::unordered_map<MemberId, int> psi;

    int at(MemberId i) const;
    void validate_for(const FacetedSystem& system, const MemberSet& S) const;
};

VoteTally faceted_vote_tally(const FacetedSystem& system, const MemberSet& S,
                             const FacetAssignment& psi, const Rational& theta);

VerifyResult verify_multifaceted(const FacetedSystem& system, const MemberSet& S,
                                 const FacetAssignment& psi, const CommunityParams& params);

struct MfEnumConfig {
    CommunityParams params;
    long long size = 0;
    double delta = 0.1;
    long long k1 = 0;  // 0 -> enumerate default
    long long k2 = 0;
    long long n2 = 16;
    long long m = 0;  // final guessed voter multiset size; 0 -> ceil(8 ln n/gamma^2)
    long long budget = 2'000'000;
    std::uint64_t rng_seed = 1;
};

// Exhaustive rough step with facet guessing, then sampled purification with
// random facet guesses; every emitted pair re-verified.
std::vector<std::pair<MemberSet, FacetAssignment>> enumerate_multifaceted(
    const FacetedSystem& system, const MfEnumConfig& config);

enum class RecoverStatus { found, infeasible, retry_exhausted };

struct RecoverResult {
    RecoverStatus status = RecoverStatus::infeasible;
    FacetAssignment psi;
    // true when the assignment passed the full (alpha, beta) thresholds rather
    // than the rounding-relaxed (alpha-gamma/4, beta+gamma/4) ones
    bool exact = false;
};

struct RecoverOptions {
    long long rounding_retries = 50;
    long long case1_budget = 2'000'000;  // cap on f^{|S|} exhaustive scan
};

// Facet-structure recovery: exhaustive scan for small sets, otherwise an LP
// feasibility relaxation plus randomized rounding accepted at the relaxed
// thresholds (alpha-gamma/4, beta+gamma/4, theta).
RecoverResult recover_facets(const FacetedSystem& system, const MemberSet& S,
                             const CommunityParams& params, Rng& rng,
                             const RecoverOptions& options = {});

// Dense Phase-I simplex feasibility check, exposed for testing.  Rows are
// {coeffs, rhs, relation} with relation -1 (<=), 0 (=), +1 (>=).
struct LinearConstraint {
    std::vector<double> coeffs;
    double rhs = 0;
    int relation = 0;
};
bool solve_feasibility_lp(const std::vector<LinearConstraint>& constraints, int num_vars,
                          std::vector<double>& solution);

}  // namespace selfcomm
