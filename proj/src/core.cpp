#include "selfcomm/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace selfcomm {

namespace {

std::string describe_id(MemberId v) { return "member id " + std::to_string(v); }

}  // namespace

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed decimal '" + s + "'");
    bool neg = !head.empty() && head[0] == '-';
    if (head == "-" || head == "+" || head.empty()) head += "0";
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt whole(head);
    BigInt digits = frac.empty() ? BigInt(0) : BigInt(frac);
    BigInt num = whole * scale + (neg ? -digits : digits);
    return Rational(num, scale);
}

std::string format_rational(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string format_rational_decimal(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    // exact when den = 2^a 5^b with few digits
    BigInt d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    int digits = std::max(twos, fives);
    if (d == 1 && digits <= 30) {
        BigInt scale = 1;
        for (int i = 0; i < digits; ++i) scale *= 10;
        BigInt scaled = num * scale / den;
        bool neg = scaled < 0;
        if (neg) scaled = -scaled;
        std::string body = scaled.str();
        if (static_cast<int>(body.size()) <= digits)
            body.insert(0, std::string(digits - body.size() + 1, '0'));
        body.insert(body.size() - digits, ".");
        return (neg ? "-" : "") + body;
    }
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", to_double(r));
    return buf;
}

void RankedSystem::validate() const {
    if (n < 0) throw std::invalid_argument("negative member count");
    if (static_cast<int>(rankings.size()) != n)
        throw std::invalid_argument("ranking table size does not match n");
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        for (MemberId j : rankings[i]) {
            if (j < 0 || j >= n)
                throw std::invalid_argument(describe_id(j) + " out of range in ranking of " +
                                            std::to_string(i));
            if (seen[j]) throw std::invalid_argument("duplicate " + describe_id(j) +
                                                     " in ranking of " + std::to_string(i));
            seen[j] = 1;
        }
        for (MemberId j : rankings[i]) seen[j] = 0;
    }
}

Rational WeightedSystem::weight(MemberId i, MemberId j) const {
    const auto& row = rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, MemberId v) { return e.first < v; });
    if (it != row.end() && it->first == j) return it->second;
    return Rational(0);
}

void WeightedSystem::set_weight(MemberId i, MemberId j, const Rational& w) {
    auto& row = rows[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, MemberId v) { return e.first < v; });
    if (it != row.end() && it->first == j) {
        it->second = w;
    } else {
        row.insert(it, {j, w});
    }
}

void WeightedSystem::validate() const {
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("weight table size does not match n");
    for (int i = 0; i < n; ++i) {
        MemberId prev = -1;
        for (const auto& [j, w] : rows[i]) {
            if (j < 0 || j >= n) throw std::invalid_argument(describe_id(j) + " out of range");
            if (j <= prev) throw std::invalid_argument("row " + std::to_string(i) +
                                                       " not sorted / has duplicates");
            if (w < 0 || w > 1)
                throw std::invalid_argument("weight outside [0,1] at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            prev = j;
        }
    }
}

void CommunityParams::validate() const {
    if (theta <= 0) throw std::invalid_argument("theta must be positive");
    if (alpha <= 0 || alpha > 1) throw std::invalid_argument("alpha must be in (0,1]");
    if (beta < 0 || beta >= alpha) throw std::invalid_argument("beta must satisfy 0 <= beta < alpha");
}

Rational VoteTally::total() const {
    Rational s = 0;
    for (const auto& [id, v] : votes) s += v;
    return s;
}

long long vote_prefix_len(const Rational& theta, long long t) {
    return ceil_to_int(theta * t);
}

bool set_contains(const MemberSet& sorted_set, MemberId v) {
    return std::binary_search(sorted_set.begin(), sorted_set.end(), v);
}

VoteTally vote_count_ranked(const RankedSystem& system, const MemberSet& voters,
                            long long prefix_len) {
    if (prefix_len < 1) throw std::invalid_argument("prefix length must be >= 1");
    std::unordered_map<MemberId, long long> counts;
    for (MemberId s : voters) {
        if (s < 0 || s >= system.n)
            throw std::invalid_argument("voter " + describe_id(s) + " out of range");
        long long L = system.prefix_len(s, prefix_len);
        const auto& list = system.rankings[s];
        for (long long p = 0; p < L; ++p) ++counts[list[p]];
    }
    VoteTally tally;
    tally.votes.reserve(counts.size());
    for (const auto& [id, c] : counts) tally.votes.emplace(id, Rational(c));
    return tally;
}

std::vector<Rational> capped_vote_vector(const std::vector<Rational>& weights,
                                         const Rational& cap) {
    if (cap <= 0) throw std::invalid_argument("cap must be positive");
    Rational sum = 0;
    for (const auto& w : weights) {
        if (w < 0) throw std::invalid_argument("negative weight");
        sum += w;
    }
    if (sum <= cap) return weights;

    std::vector<size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return weights[a] > weights[b]; });

    // Find the entry at which the running sum first exceeds the cap; its value
    // is the boundary.  Everything strictly above the boundary is kept whole.
    Rational run = 0;
    Rational boundary = 0;
    for (size_t idx : order) {
        run += weights[idx];
        if (run > cap) {
            boundary = weights[idx];
            break;
        }
    }

    Rational kept_above = 0;
    std::vector<size_t> tied;
    for (size_t idx : order) {
        if (weights[idx] > boundary) {
            kept_above += weights[idx];
        } else if (weights[idx] == boundary) {
            tied.push_back(idx);
        }
    }

    // Keep as many boundary-valued entries whole as still leaves one boundary
    // entry's worth of budget for the rest of the tie group; the remaining tied
    // entries split what is left evenly.  Matches the no-tie case (zero or one
    // tied entry kept, the crossing entry scaled).
    long long full = 0;
    if (boundary > 0 && kept_above + boundary <= cap)
        full = floor_to_int((cap - kept_above) / boundary) - 1;
    if (full < 0) full = 0;
    if (full > static_cast<long long>(tied.size())) full = static_cast<long long>(tied.size());

    Rational residual = cap - kept_above - boundary * full;
    long long group = static_cast<long long>(tied.size()) - full;
    Rational share = group > 0 ? residual / group : Rational(0);

    std::vector<Rational> out(weights.size(), Rational(0));
    for (size_t idx : order)
        if (weights[idx] > boundary) out[idx] = weights[idx];
    for (long long i = 0; i < static_cast<long long>(tied.size()); ++i)
        out[tied[i]] = i < full ? boundary : share;
    return out;
}

VoteTally weighted_vote_tally(const WeightedSystem& system, const MemberSet& voters,
                              long long target_size, const Rational& theta) {
    if (target_size < 1) throw std::invalid_argument("target size must be >= 1");
    Rational cap = theta * target_size;
    VoteTally tally;
    std::vector<Rational> row_weights;
    for (MemberId s : voters) {
        if (s < 0 || s >= system.n)
            throw std::invalid_argument("voter " + describe_id(s) + " out of range");
        const auto& row = system.rows[s];
        row_weights.clear();
        for (const auto& [j, w] : row) row_weights.push_back(w);
        std::vector<Rational> capped = capped_vote_vector(row_weights, cap);
        for (size_t k = 0; k < row.size(); ++k) {
            if (capped[k] == 0) continue;
            tally.votes[row[k].first] += capped[k];
        }
    }
    return tally;
}

namespace {

VerifyResult check_thresholds(const VoteTally& tally, const MemberSet& S,
                              const CommunityParams& params) {
    long long t = static_cast<long long>(S.size());
    Rational inside = params.alpha * t;
    Rational outside = params.beta * t;
    VerifyResult res;
    res.tally = tally;
    for (MemberId i : S) {
        if (res.tally.at(i) < inside) return res;
    }
    for (const auto& [j, v] : res.tally.votes) {
        if (!set_contains(S, j) && v > outside) return res;
    }
    res.ok = true;
    return res;
}

}  // namespace

VerifyResult verify_ranked_community(const RankedSystem& system, const MemberSet& S,
                                     const CommunityParams& params) {
    if (S.empty()) throw std::invalid_argument("empty member set");
    params.validate();
    long long L = vote_prefix_len(params.theta, static_cast<long long>(S.size()));
    VoteTally tally = vote_count_ranked(system, S, L);
    return check_thresholds(tally, S, params);
}

VerifyResult verify_weighted_community(const WeightedSystem& system, const MemberSet& S,
                                       const CommunityParams& params) {
    if (S.empty()) throw std::invalid_argument("empty member set");
    params.validate();
    VoteTally tally =
        weighted_vote_tally(system, S, static_cast<long long>(S.size()), params.theta);
    return check_thresholds(tally, S, params);
}

bool is_good_seed(const RankedSystem& system, const MemberSet& S, MemberId v,
                  const Rational& theta) {
    if (!set_contains(S, v)) throw std::invalid_argument("seed must belong to the set");
    long long t = static_cast<long long>(S.size());
    long long L = system.prefix_len(v, vote_prefix_len(theta, t));
    const auto& list = system.rankings[v];
    long long hits = 0;
    for (long long p = 0; p < L; ++p)
        if (set_contains(S, list[p])) ++hits;
    return 2 * hits >= t;
}

}  // namespace selfcomm
