#pragma once

#include <cstdint>
#include <optional>

#include "selfcomm/core.hpp"
#include "selfcomm/enumerate.hpp"
#include "selfcomm/rng.hpp"

namespace selfcomm {

struct UnsupportedParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LocalConfig {
    CommunityParams params;  // requires alpha > 1/2
    long long size = 0;      // target community size t
    double delta = 0.1;
    // 0 means "derive from the formulas below"
    long long draws = 0;          // ceil((8 theta^2 t/(alpha-1/2)) ln(2t/delta))
    long long hit_threshold = 0;  // ceil(4 ln(2t/delta))
    long long k2 = 0;             // purification sample size (enumerate default)
    long long n2 = 0;             // purification repetitions (practical default 20)
    std::uint64_t rng_seed = 1;
    // Whether to also probe sizes floor(t/(1+eps)) and ceil(t(1+eps)) when the
    // exact size fails; the whole-system sweep turns this off since its grid
    // already covers neighbours.
    bool try_size_variants = true;

    long long default_draws() const;
    long long default_hit_threshold() const;
    long long effective_draws() const { return draws > 0 ? draws : default_draws(); }
    long long effective_hits() const {
        return hit_threshold > 0 ? hit_threshold : default_hit_threshold();
    }
    long long effective_n2() const { return n2 > 0 ? n2 : 20; }
    void validate() const;  // rejects alpha <= 1/2
};

// Uniform element of the first min(ceil(theta*t), list length) entries of pi_v.
MemberId sample_r(const RankedSystem& system, MemberId v, long long t, const Rational& theta,
                  Rng& rng);

// Two-hop frequency filter: members hit >= hit_threshold times among `draws`
// samples of R(R(v)).  The threshold caps |S1| at 2 theta^2 t/(alpha-1/2).
MemberSet local_rough(const RankedSystem& system, MemberId v, const LocalConfig& config,
                      Rng& rng);

// local_rough then purification; returns the first verified community of the
// probed size containing v.  Touches only prefix lists of sampled members.
std::optional<Community> local_find(const RankedSystem& system, MemberId v,
                                    const LocalConfig& config, Rng& rng);

struct AllLocalConfig {
    CommunityParams params;
    double delta = 0.1;
    std::optional<double> epsilon;  // default min(gamma, alpha-1/2)/100
    // Cap on seeds probed per grid cell; cells on systems at or below the cap
    // run every seed.  Bounds whole-system work near-linearly in n.
    long long seeds_per_cell = 200;
    std::uint64_t rng_seed = 1;
};

// Geometric size grid t' = ceil((1+eps)^i) up to n; for every grid cell and
// (sampled) seed, one rough+purify round; results re-verified at the original
// params and deduplicated.
CommunitySet enumerate_all_local(const RankedSystem& system, const AllLocalConfig& config);

}  // namespace selfcomm
