#include "selfcomm/multifacet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace selfcomm {

void FacetedSystem::validate() const {
    if (static_cast<int>(rankings.size()) != n)
        throw std::invalid_argument("facet table size does not match n");
    for (int i = 0; i < n; ++i) {
        if (rankings[i].empty() || facet_count(i) > f)
            throw std::invalid_argument("member " + std::to_string(i) +
                                        " has a facet count outside [1, f]");
        for (const auto& list : rankings[i]) {
            std::vector<char> seen(n, 0);
            for (MemberId j : list) {
                if (j < 0 || j >= n || seen[j])
                    throw std::invalid_argument("bad facet ranking for member " +
                                                std::to_string(i));
                seen[j] = 1;
            }
        }
    }
}

int FacetAssignment::at(MemberId i) const {
    auto it = psi.find(i);
    if (it == psi.end())
        throw std::invalid_argument("facet assignment missing member " + std::to_string(i));
    return it->second;
}

void FacetAssignment::validate_for(const FacetedSystem& system, const MemberSet& S) const {
    for (MemberId s : S) {
        int q = at(s);
        if (q < 1 || q > system.facet_count(s))
            throw std::invalid_argument("facet index out of range for member " +
                                        std::to_string(s));
    }
}

VoteTally faceted_vote_tally(const FacetedSystem& system, const MemberSet& S,
                             const FacetAssignment& psi, const Rational& theta) {
    psi.validate_for(system, S);
    long long cut = vote_prefix_len(theta, static_cast<long long>(S.size()));
    std::unordered_map<MemberId, long long> counts;
    for (MemberId s : S) {
        const auto& list = system.rankings[s][psi.at(s) - 1];
        long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
        for (long long p = 0; p < L; ++p) ++counts[list[p]];
    }
    VoteTally tally;
    for (const auto& [id, c] : counts) tally.votes.emplace(id, Rational(c));
    return tally;
}

VerifyResult verify_multifaceted(const FacetedSystem& system, const MemberSet& S,
                                 const FacetAssignment& psi, const CommunityParams& params) {
    if (S.empty()) throw std::invalid_argument("empty member set");
    params.validate();
    long long t = static_cast<long long>(S.size());
    VerifyResult res;
    res.tally = faceted_vote_tally(system, S, psi, params.theta);
    Rational inside = params.alpha * t;
    Rational outside = params.beta * t;
    for (MemberId i : S)
        if (res.tally.at(i) < inside) return res;
    for (const auto& [j, v] : res.tally.votes)
        if (!set_contains(S, j) && v > outside) return res;
    res.ok = true;
    return res;
}

namespace {

// Iterate mixed-radix facet assignments over `members`; returns false when
// exhausted.  digits are 0-based facet indices.
bool next_assignment(std::vector<int>& digits, const FacetedSystem& system,
                     const std::vector<MemberId>& members) {
    for (size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] + 1 < system.facet_count(members[i])) {
            ++digits[i];
            for (size_t j = 0; j < i; ++j) digits[j] = 0;
            return true;
        }
    }
    return false;
}

double assignment_space(const FacetedSystem& system, const std::vector<MemberId>& members) {
    double total = 1;
    for (MemberId s : members) total *= system.facet_count(s);
    return total;
}

}  // namespace

std::vector<std::pair<MemberSet, FacetAssignment>> enumerate_multifaceted(
    const FacetedSystem& system, const MfEnumConfig& config) {
    config.params.validate();
    if (config.size < 1) throw std::invalid_argument("target size must be >= 1");
    EnumConfig ecfg;
    ecfg.params = config.params;
    ecfg.size = config.size;
    ecfg.delta = config.delta;
    long long k1 = config.k1 > 0 ? config.k1 : ecfg.default_k1();
    long long k2 = config.k2 > 0 ? config.k2 : ecfg.default_k2();
    if (k1 > system.n) k1 = system.n;
    double g = to_double(config.params.gamma());
    long long m = config.m > 0
                      ? config.m
                      : static_cast<long long>(std::ceil(8.0 * std::log(system.n) / (g * g)));
    if (m < 1) m = 1;

    long long subsets = binomial_capped(system.n, k1, config.budget);
    if (subsets > config.budget ||
        static_cast<double>(subsets) * std::pow(static_cast<double>(system.f),
                                                static_cast<double>(k1)) >
            static_cast<double>(config.budget))
        throw BudgetExceeded("facet-guessing rough step exceeds the budget");

    long long cut = vote_prefix_len(config.params.theta, config.size);
    Rational fraction = config.params.alpha - config.params.gamma() / 2;
    std::map<MemberSet, FacetAssignment> found;

    std::vector<int> subset(k1);
    for (long long i = 0; i < k1; ++i) subset[i] = static_cast<int>(i);
    std::uint64_t candidate_index = 0;
    do {
        std::vector<MemberId> U(subset.begin(), subset.end());
        std::vector<int> guess(U.size(), 0);
        std::uint64_t guess_index = 0;
        do {
            // rough: union of the guessed-facet prefixes
            MemberSet s1;
            for (size_t ui = 0; ui < U.size(); ++ui) {
                const auto& list = system.rankings[U[ui]][guess[ui]];
                long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
                s1.insert(s1.end(), list.begin(), list.begin() + L);
            }
            std::sort(s1.begin(), s1.end());
            s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
            ++guess_index;
            if (s1.empty()) continue;

            // The facet of each sampled voter is "guessed" greedily: the facet
            // whose prefix overlaps the current candidate set the most (ties to
            // the lowest index).  This stands in for exhaustive assignment
            // guessing, which is out of budget beyond a handful of voters.
            auto best_facet = [&](MemberId u, const MemberSet& ref) {
                int best = 0;
                long long best_overlap = -1;
                for (int q = 0; q < system.facet_count(u); ++q) {
                    const auto& list = system.rankings[u][q];
                    long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
                    long long overlap = 0;
                    for (long long p = 0; p < L; ++p)
                        if (set_contains(ref, list[p])) ++overlap;
                    if (overlap > best_overlap) {
                        best_overlap = overlap;
                        best = q;
                    }
                }
                return best;
            };

            for (long long rep = 0; rep < config.n2; ++rep) {
                Rng rng = Rng::derive(config.rng_seed,
                                      {candidate_index, guess_index,
                                       static_cast<std::uint64_t>(rep)});
                // purification with guessed facets on the sampled voters
                std::vector<long long> votes(system.n, 0);
                for (long long d = 0; d < k2; ++d) {
                    MemberId u = s1[rng.below(s1.size())];
                    const auto& list = system.rankings[u][best_facet(u, s1)];
                    long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
                    for (long long p = 0; p < L; ++p) ++votes[list[p]];
                }
                Rational thr1 = fraction * k2;
                MemberSet s2;
                for (MemberId i : s1)
                    if (Rational(votes[i]) >= thr1) s2.push_back(i);
                if (s2.empty()) continue;

                // final guessed multiset over S2, threshold relative to t
                std::fill(votes.begin(), votes.end(), 0);
                for (long long d = 0; d < m; ++d) {
                    MemberId u = s2[rng.below(s2.size())];
                    const auto& list = system.rankings[u][best_facet(u, s2)];
                    long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
                    for (long long p = 0; p < L; ++p) ++votes[list[p]];
                }
                Rational thr2 = fraction * config.size;
                MemberSet S;
                for (MemberId i = 0; i < system.n; ++i)
                    if (Rational(votes[i]) >= thr2) S.push_back(i);
                if (S.empty() || found.count(S)) continue;

                Rng recover_rng = Rng::derive(config.rng_seed,
                                              {candidate_index, guess_index,
                                               static_cast<std::uint64_t>(rep), 0xfaceULL});
                RecoverResult rec = recover_facets(system, S, config.params, recover_rng);
                if (rec.status != RecoverStatus::found || !rec.exact) continue;
                if (verify_multifaceted(system, S, rec.psi, config.params).ok)
                    found.emplace(S, rec.psi);
            }
        } while (next_assignment(guess, system, U));
        ++candidate_index;
    } while (next_k_subset(subset, system.n));

    std::vector<std::pair<MemberSet, FacetAssignment>> out;
    out.reserve(found.size());
    for (auto& [S, psi] : found) out.emplace_back(S, psi);
    return out;
}

bool solve_feasibility_lp(const std::vector<LinearConstraint>& constraints, int num_vars,
                          std::vector<double>& solution) {
    const double tol = 1e-9;
    int rows = static_cast<int>(constraints.size());
    // columns: structural | slack/surplus | artificial | rhs
    int slack_count = 0;
    for (const auto& c : constraints)
        if (c.relation != 0) ++slack_count;
    int cols = num_vars + slack_count + rows;
    std::vector<std::vector<double>> T(rows + 1, std::vector<double>(cols + 1, 0.0));
    std::vector<int> basis(rows);

    int slack_at = num_vars;
    for (int r = 0; r < rows; ++r) {
        const auto& c = constraints[r];
        double sign = c.rhs < 0 ? -1.0 : 1.0;  // keep rhs nonnegative
        for (int v = 0; v < num_vars && v < static_cast<int>(c.coeffs.size()); ++v)
            T[r][v] = sign * c.coeffs[v];
        T[r][cols] = sign * c.rhs;
        if (c.relation != 0) {
            // <= gets +slack, >= gets -surplus (before sign flip)
            T[r][slack_at] = sign * (c.relation < 0 ? 1.0 : -1.0);
            ++slack_at;
        }
        int art = num_vars + slack_count + r;
        T[r][art] = 1.0;
        basis[r] = art;
    }
    // Phase-I objective: minimize sum of artificials (cost 1 on each artificial
    // column, then eliminate the initial artificial basis)
    for (int r = 0; r < rows; ++r) T[rows][num_vars + slack_count + r] = 1.0;
    for (int r = 0; r < rows; ++r)
        for (int cidx = 0; cidx <= cols; ++cidx) T[rows][cidx] -= T[r][cidx];

    for (;;) {
        // Bland's rule: first column with negative reduced cost
        int pivot_col = -1;
        for (int cidx = 0; cidx < cols; ++cidx) {
            if (T[rows][cidx] < -tol) {
                pivot_col = cidx;
                break;
            }
        }
        if (pivot_col < 0) break;
        int pivot_row = -1;
        double best_ratio = 0;
        for (int r = 0; r < rows; ++r) {
            if (T[r][pivot_col] > tol) {
                double ratio = T[r][cols] / T[r][pivot_col];
                if (pivot_row < 0 || ratio < best_ratio - tol ||
                    (std::abs(ratio - best_ratio) <= tol && basis[r] < basis[pivot_row])) {
                    pivot_row = r;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row < 0) return false;  // unbounded phase-I: cannot happen, bail out
        double pv = T[pivot_row][pivot_col];
        for (int cidx = 0; cidx <= cols; ++cidx) T[pivot_row][cidx] /= pv;
        for (int r = 0; r <= rows; ++r) {
            if (r == pivot_row) continue;
            double factor = T[r][pivot_col];
            if (factor == 0) continue;
            for (int cidx = 0; cidx <= cols; ++cidx)
                T[r][cidx] -= factor * T[pivot_row][cidx];
        }
        basis[pivot_row] = pivot_col;
    }

    if (T[rows][cols] < -1e-7) return false;  // leftover artificial mass -> infeasible

    solution.assign(num_vars, 0.0);
    for (int r = 0; r < rows; ++r)
        if (basis[r] < num_vars) solution[basis[r]] = T[r][cols];
    return true;
}

RecoverResult recover_facets(const FacetedSystem& system, const MemberSet& S,
                             const CommunityParams& params, Rng& rng,
                             const RecoverOptions& options) {
    if (S.empty()) throw std::invalid_argument("empty member set");
    params.validate();
    long long t = static_cast<long long>(S.size());
    double g = to_double(params.gamma());
    double case1_threshold = 8.0 * std::log(system.n) / (g * g);

    RecoverResult result;
    if (static_cast<double>(t) <= case1_threshold) {
        if (assignment_space(system, S) > static_cast<double>(options.case1_budget))
            throw BudgetExceeded("exhaustive facet scan exceeds the budget");
        std::vector<int> digits(S.size(), 0);
        do {
            FacetAssignment psi;
            for (size_t i = 0; i < S.size(); ++i) psi.psi[S[i]] = digits[i] + 1;
            if (verify_multifaceted(system, S, psi, params).ok) {
                result.status = RecoverStatus::found;
                result.psi = std::move(psi);
                result.exact = true;
                return result;
            }
        } while (next_assignment(digits, system, std::vector<MemberId>(S.begin(), S.end())));
        result.status = RecoverStatus::infeasible;
        return result;
    }

    // Case 2: LP feasibility over fractional facet choices, then randomized
    // rounding accepted at the relaxed thresholds.
    long long cut = vote_prefix_len(params.theta, t);
    std::vector<int> var_base(S.size() + 1, 0);
    for (size_t i = 0; i < S.size(); ++i)
        var_base[i + 1] = var_base[i] + system.facet_count(S[i]);
    int num_vars = var_base[S.size()];

    // per (voter, facet) prefix membership
    auto prefix_hits = [&](size_t si, int facet0) {
        const auto& list = system.rankings[S[si]][facet0];
        long long L = std::min<long long>(cut, static_cast<long long>(list.size()));
        return std::pair<const MemberId*, long long>(list.data(), L);
    };

    std::vector<LinearConstraint> cons;
    for (size_t si = 0; si < S.size(); ++si) {
        LinearConstraint eq;
        eq.coeffs.assign(num_vars, 0.0);
        for (int q = 0; q < system.facet_count(S[si]); ++q) eq.coeffs[var_base[si] + q] = 1.0;
        eq.rhs = 1.0;
        eq.relation = 0;
        cons.push_back(std::move(eq));
    }
    double inside_rhs = to_double(params.alpha) * static_cast<double>(t);
    double outside_rhs = to_double(params.beta) * static_cast<double>(t) -
                         1.0 / (4.0 * static_cast<double>(t));
    if (outside_rhs < 0) {
        result.status = RecoverStatus::infeasible;
        return result;
    }

    // vote coefficient matrix: target -> constraint coefficients
    std::unordered_map<MemberId, std::vector<double>> incoming;
    for (size_t si = 0; si < S.size(); ++si) {
        for (int q = 0; q < system.facet_count(S[si]); ++q) {
            auto [ptr, L] = prefix_hits(si, q);
            for (long long p = 0; p < L; ++p) {
                auto& row = incoming[ptr[p]];
                if (row.empty()) row.assign(num_vars, 0.0);
                row[var_base[si] + q] += 1.0;
            }
        }
    }
    for (MemberId i : S) {
        LinearConstraint in;
        auto it = incoming.find(i);
        in.coeffs = it == incoming.end() ? std::vector<double>(num_vars, 0.0) : it->second;
        in.rhs = inside_rhs;
        in.relation = +1;
        cons.push_back(std::move(in));
    }
    for (auto& [j, row] : incoming) {
        if (set_contains(S, j)) continue;
        LinearConstraint outc;
        outc.coeffs = row;
        outc.rhs = outside_rhs;
        outc.relation = -1;
        cons.push_back(std::move(outc));
    }

    std::vector<double> x;
    if (!solve_feasibility_lp(cons, num_vars, x)) {
        result.status = RecoverStatus::infeasible;
        return result;
    }

    CommunityParams relaxed{params.theta, params.alpha - params.gamma() / 4,
                            params.beta + params.gamma() / 4};
    for (long long attempt = 0; attempt < options.rounding_retries; ++attempt) {
        FacetAssignment psi;
        for (size_t si = 0; si < S.size(); ++si) {
            double u = rng.unit();
            int chosen = system.facet_count(S[si]) - 1;
            double acc = 0;
            for (int q = 0; q < system.facet_count(S[si]); ++q) {
                acc += std::max(0.0, x[var_base[si] + q]);
                if (u < acc) {
                    chosen = q;
                    break;
                }
            }
            psi.psi[S[si]] = chosen + 1;
        }
        VerifyResult strict = verify_multifaceted(system, S, psi, params);
        if (strict.ok) {
            result.status = RecoverStatus::found;
            result.psi = std::move(psi);
            result.exact = true;
            return result;
        }
        if (verify_multifaceted(system, S, psi, relaxed).ok) {
            result.status = RecoverStatus::found;
            result.psi = std::move(psi);
            result.exact = false;
            return result;
        }
    }
    result.status = RecoverStatus::retry_exhausted;
    return result;
}

}  // namespace selfcomm
