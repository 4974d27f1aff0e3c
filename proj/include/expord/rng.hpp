#pragma once

#include <cstdint>
#include <random>

namespace expord {

/// splitmix64 scrambler; used to derive well-separated seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Seed for one Monte Carlo work item. Results must not depend on the
/// execution schedule, so every (stream, item) pair gets its own seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t item) {
    std::uint64_t h = splitmix64(master ^ 0x6a09e667f3bcc908ull);
    h = splitmix64(h + 0x9e3779b97f4a7c15ull * (stream + 1));
    h = splitmix64(h + 0x9e3779b97f4a7c15ull * (item + 1));
    return h;
}

/// Deterministic standard-normal generator (Box-Muller over mt19937_64).
/// std::normal_distribution is implementation-defined; benchmark output must
/// be bit-identical across runs and thread counts, so the transform is pinned.
class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {  // in [2^-53, 1]
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace expord
