#ifndef FRACLAP_RNG_HPP
#define FRACLAP_RNG_HPP

#include <array>
#include <cstdint>

namespace fraclap {

// Philox4x32-10 counter-based generator.  Streams are addressed by
// (seed, purpose, path); blocks within a stream by a running counter.
// Identical addressing yields identical draws on every platform, which is
// what makes sharded Monte Carlo reproducible.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t seed,
                                              std::uint32_t purpose,
                                              std::uint64_t path,
                                              std::uint32_t counter);
};

// Draws addressed uniforms in [0,1).  Each block yields two doubles.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint32_t purpose, std::uint64_t path)
        : seed_(seed), purpose_(purpose), path_(path) {}

    double uniform();

    // uniform direction on the unit sphere S^(n-1), n = 2 or 3
    void unit_vector(int n, double* out);

  private:
    void refill();
    std::uint64_t seed_;
    std::uint32_t purpose_;
    std::uint64_t path_;
    std::uint32_t counter_ = 0;
    int have_ = 0;
    double buf_[2] = {0.0, 0.0};
};

} // namespace fraclap

#endif
