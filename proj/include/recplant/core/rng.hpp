#pragma once

#include <cstdint>
#include <string_view>

namespace recplant {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// 64-bit splittable generator (splitmix64). Every entity draws from its own
// stream derived from (run seed, entity name), so adding or removing an agent
// leaves all other streams untouched.
class Rng {
public:
    Rng() : state_(0x853c49e6748fea9bull) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng stream(std::uint64_t run_seed, std::string_view entity) {
        std::uint64_t s = run_seed;
        std::uint64_t a = splitmix64(s);
        std::uint64_t b = fnv1a64(entity);
        return Rng(a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2)));
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace recplant
