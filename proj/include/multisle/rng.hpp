#pragma once

// Deterministic, splittable random streams: xoshiro256++ seeded through
// splitmix64.  Replica k of a run gets stream(master_seed, k), so results are
// reproducible for a fixed seed regardless of thread scheduling.

#include <cstdint>

namespace multisle {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static Xoshiro256pp stream(std::uint64_t master_seed, std::uint64_t replica) {
        std::uint64_t sm = master_seed;
        std::uint64_t a = splitmix64(sm);
        return Xoshiro256pp(a ^ (replica * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform() { return ((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection-free Lemire-style bounded draw
        __uint128_t m = static_cast<__uint128_t>((*this)()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t s_[4];
};

} // namespace multisle
