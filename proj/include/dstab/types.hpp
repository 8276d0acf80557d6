#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dstab {

using Complex = std::complex<double>;
using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bad user input (dimension mismatch, malformed file, invalid flag value).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A hard size limit was exceeded (vertex enumeration, oracle dimensions).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug or a tolerance
/// misconfiguration, never a normal outcome.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SplitMix64. The only source of randomness inside the solver (multilinearity
// probes, vertex-path sampling past the cap), so runs are bit-reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

}  // namespace dstab
