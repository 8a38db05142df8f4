#pragma once

#include <cstdint>
#include <random>

namespace robustdens {

// Fixed generator: std::mt19937_64 seeded directly with the 64-bit seed.
// Replication r of a study always uses seed base_seed + r.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // 53-bit uniform in [0,1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    // uniform in (0,1)
    double uniform_open();
    // Box-Muller, second variate cached
    double normal();
    // Marsaglia-Tsang, unit scale
    double gamma(double shape);
    double beta(double a, double b);

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace robustdens
