#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace selfcomm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 plus rejection sampling for unbiased bounded draws.  Streams are
// derived from (seed, path...) so independent work items get independent,
// reproducible randomness regardless of scheduling.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
        for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x3c6ef372fe94f82bULL));
        return Rng(h);
    }

    std::uint64_t next() { return gen_(); }

    // uniform in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    // uniform in [0,1)
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace selfcomm
