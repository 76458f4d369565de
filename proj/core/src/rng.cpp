#include "fraclap/rng.hpp"

#include <cmath>

namespace fraclap {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t seed,
                                               std::uint32_t purpose,
                                               std::uint64_t path,
                                               std::uint32_t counter) {
    std::uint32_t c0 = counter;
    std::uint32_t c1 = static_cast<std::uint32_t>(path);
    std::uint32_t c2 = static_cast<std::uint32_t>(path >> 32);
    std::uint32_t c3 = purpose;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c0, hi0, lo0);
        mulhilo(kMul1, c2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

void CounterRng::refill() {
    const auto b = Philox4x32::block(seed_, purpose_, path_, counter_++);
    const std::uint64_t u0 =
        (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    const std::uint64_t u1 =
        (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
    buf_[0] = static_cast<double>(u0 >> 11) * 0x1.0p-53;
    buf_[1] = static_cast<double>(u1 >> 11) * 0x1.0p-53;
    have_ = 2;
}

double CounterRng::uniform() {
    if (have_ == 0) refill();
    return buf_[--have_];
}

void CounterRng::unit_vector(int n, double* out) {
    if (n == 2) {
        const double th = 2.0 * M_PI * uniform();
        out[0] = std::cos(th);
        out[1] = std::sin(th);
        return;
    }
    // Archimedes: z uniform on [-1,1], azimuth uniform
    const double z = 2.0 * uniform() - 1.0;
    const double ph = 2.0 * M_PI * uniform();
    const double st = std::sqrt(std::max(0.0, 1.0 - z * z));
    out[0] = st * std::cos(ph);
    out[1] = st * std::sin(ph);
    out[2] = z;
}

} // namespace fraclap
