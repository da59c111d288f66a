#pragma once

#include <cstdint>

namespace autogeo {

// Minimal counter-style generator with platform-independent output, so that
// verification reports are byte-identical for a fixed seed. Standard-library
// distributions are implementation-defined, which would break that contract.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::uint64_t state_;
};

// Independent stream for sample `index` of a suite run: randomness depends on
// (seed, index) only, never on evaluation order.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed * 0x9e3779b97f4a7c15ULL + 0x517cc1b727220a95ULL);
    std::uint64_t base = mixer.next();
    return SplitMix64(base ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

}  // namespace autogeo
