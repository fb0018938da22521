#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace horizon {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Philox2x64-10 counter block: the path index and a per-path draw counter
// form the counter words, so every (seed, path, draw) triple maps to the same
// bits no matter how paths are scheduled across threads.
inline std::pair<std::uint64_t, std::uint64_t> philox2x64(std::uint64_t key, std::uint64_t c0,
                                                          std::uint64_t c1) {
    constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
    constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * c0;
        const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        const std::uint64_t lo = static_cast<std::uint64_t>(prod);
        c0 = hi ^ key ^ c1;
        c1 = lo;
        key += kWeyl;
    }
    return {c0, c1};
}

// Standard normals for one path, two per counter block via Box-Muller.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::uint64_t path)
        : key_(splitmix64(seed)), path_(path) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto [w0, w1] = philox2x64(key_, path_, counter_++);
        const double u1 = to_open01(w0);
        const double u2 = to_open01(w1);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    static double to_open01(std::uint64_t bits) {
        // 53-bit mantissa shifted into (0, 1), both endpoints excluded
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t key_;
    std::uint64_t path_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace horizon
