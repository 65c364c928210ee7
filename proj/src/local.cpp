#include "selfcomm/local.hpp"

#include <algorithm>
#include <cmath>

namespace selfcomm {

long long LocalConfig::default_draws() const {
    double th = to_double(params.theta);
    double a = to_double(params.alpha);
    double t = static_cast<double>(size);
    return static_cast<long long>(
        std::ceil(8.0 * th * th * t / (a - 0.5) * std::log(2.0 * t / delta)));
}

long long LocalConfig::default_hit_threshold() const {
    double t = static_cast<double>(size);
    return static_cast<long long>(std::ceil(4.0 * std::log(2.0 * t / delta)));
}

void LocalConfig::validate() const {
    params.validate();
    if (params.alpha * 2 <= 1)
        throw UnsupportedParameters(
            "local search requires alpha > 1/2 (the multi-seed extension is out of scope)");
    if (size < 1) throw std::invalid_argument("target size must be >= 1");
    if (delta <= 0 || delta >= 1) throw std::invalid_argument("delta must be in (0,1)");
}

MemberId sample_r(const RankedSystem& system, MemberId v, long long t, const Rational& theta,
                  Rng& rng) {
    long long L = system.prefix_len(v, vote_prefix_len(theta, t));
    if (L == 0) throw std::invalid_argument("member " + std::to_string(v) +
                                            " has an empty ranking prefix");
    return system.rankings[v][rng.below(static_cast<std::uint64_t>(L))];
}

MemberSet local_rough(const RankedSystem& system, MemberId v, const LocalConfig& config,
                      Rng& rng) {
    config.validate();
    long long draws = config.effective_draws();
    long long hits_needed = config.effective_hits();
    long long cut = vote_prefix_len(config.params.theta, config.size);

    std::vector<long long> hits(system.n, 0);
    std::vector<MemberId> touched;
    long long Lv = system.prefix_len(v, cut);
    if (Lv == 0) throw std::invalid_argument("seed has an empty ranking prefix");
    const auto& vlist = system.rankings[v];
    for (long long d = 0; d < draws; ++d) {
        MemberId z = vlist[rng.below(static_cast<std::uint64_t>(Lv))];
        long long Lz = system.prefix_len(z, cut);
        if (Lz == 0) continue;  // dead branch, no hit
        MemberId u = system.rankings[z][rng.below(static_cast<std::uint64_t>(Lz))];
        if (hits[u]++ == 0) touched.push_back(u);
    }
    MemberSet s1;
    for (MemberId u : touched)
        if (hits[u] >= hits_needed) s1.push_back(u);
    std::sort(s1.begin(), s1.end());
    return s1;
}

std::optional<Community> local_find(const RankedSystem& system, MemberId v,
                                    const LocalConfig& config, Rng& rng) {
    config.validate();
    std::vector<long long> sizes{config.size};
    if (config.try_size_variants) {
        Rational g = config.params.gamma();
        Rational half_gap = config.params.alpha - Rational(1, 2);
        double eps = to_double(g < half_gap ? g : half_gap) / 100.0;
        long long lo = static_cast<long long>(std::floor(config.size / (1.0 + eps)));
        long long hi = static_cast<long long>(std::ceil(config.size * (1.0 + eps)));
        for (long long s : {lo, hi})
            if (s >= 1 && s <= system.n && std::find(sizes.begin(), sizes.end(), s) == sizes.end())
                sizes.push_back(s);
    }

    for (long long s : sizes) {
        LocalConfig probe = config;  // explicit draw/threshold overrides carry over
        probe.size = s;
        MemberSet s1 = local_rough(system, v, probe, rng);
        if (static_cast<long long>(s1.size()) < s) continue;
        EnumConfig ecfg;
        ecfg.params = config.params;
        ecfg.size = s;
        ecfg.delta = config.delta;
        long long k2 = config.k2 > 0 ? config.k2 : ecfg.effective_k2();
        long long n2 = config.effective_n2();
        for (long long rep = 0; rep < n2; ++rep) {
            MemberSet s3 = purify(system, s1, config.params, s, k2, rng);
            if (static_cast<long long>(s3.size()) != s || !set_contains(s3, v)) continue;
            VerifyResult res = verify_ranked_community(system, s3, config.params);
            if (res.ok) {
                Community c;
                c.members = std::move(s3);
                c.params = config.params;
                c.verified = true;
                return c;
            }
        }
    }
    return std::nullopt;
}

CommunitySet enumerate_all_local(const RankedSystem& system, const AllLocalConfig& config) {
    config.params.validate();
    Rational g = config.params.gamma();
    Rational half_gap = config.params.alpha - Rational(1, 2);
    if (half_gap <= 0)
        throw UnsupportedParameters("quasilinear sweep requires alpha > 1/2");
    double eps = config.epsilon.value_or(to_double(g < half_gap ? g : half_gap) / 100.0);
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");

    // Rational image of eps so the relaxed thresholds stay exact.
    Rational reps(static_cast<long long>(std::llround(eps * 1e12)), 1'000'000'000'000LL);
    CommunityParams relaxed{config.params.theta * (1 + reps), config.params.alpha - 4 * reps,
                            config.params.beta + 4 * reps};
    // For integer sizes below 1/eps the geometric grid walks every size, so the
    // exact params apply; relaxation only matters where grid points skip sizes.
    long long exact_below = static_cast<long long>(std::floor(1.0 / eps));

    CommunitySet out;
    double val = 1.0;
    for (std::uint64_t cell = 0;; ++cell, val *= 1.0 + eps) {
        long long t = static_cast<long long>(std::ceil(val));
        if (t > system.n) break;
        bool use_exact = t <= exact_below;
        const CommunityParams& probe_params = use_exact ? config.params : relaxed;

        std::vector<MemberId> seeds;
        if (system.n <= config.seeds_per_cell) {
            seeds.resize(system.n);
            for (int i = 0; i < system.n; ++i) seeds[i] = i;
        } else {
            // partial Fisher-Yates on a fresh id array, one derived stream per cell
            Rng pick = Rng::derive(config.rng_seed, {0x5eedULL, cell});
            std::vector<MemberId> ids(system.n);
            for (int i = 0; i < system.n; ++i) ids[i] = i;
            for (long long i = 0; i < config.seeds_per_cell; ++i) {
                std::uint64_t j = i + pick.below(static_cast<std::uint64_t>(system.n - i));
                std::swap(ids[i], ids[j]);
                seeds.push_back(ids[i]);
            }
        }

        for (MemberId v : seeds) {
            if (system.rankings[v].empty()) continue;
            LocalConfig local;
            local.params = probe_params;
            local.size = t;
            local.delta = config.delta;
            local.n2 = 1;
            local.try_size_variants = false;
            Rng rng = Rng::derive(config.rng_seed, {cell, static_cast<std::uint64_t>(v)});
            auto found = local_find(system, v, local, rng);
            if (!found) continue;
            if (out.contains(found->members)) continue;
            if (verify_ranked_community(system, found->members, config.params).ok)
                out.add(found->members, "local-sweep");
        }
    }
    return out;
}

}  // namespace selfcomm
