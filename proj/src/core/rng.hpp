#ifndef QLAB_CORE_RNG_HPP
#define QLAB_CORE_RNG_HPP

#include <cstdint>
#include <random>

#include "core/linalg.hpp"

namespace qlab {

/// Deterministic random source. The gaussian transform is hand-rolled
/// (Box-Muller) because std::normal_distribution is not pinned by the
/// standard; identical seeds must give identical streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0,1) with 53 bits of precision.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double gaussian();

    Complex cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Mix a base seed with stream labels so nested loops get independent,
/// reproducible substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

CVector random_unit_vector(int dim, Rng& rng);

/// Haar-distributed unitary (QR of a complex gaussian with phase fixing).
Matrix random_unitary(int dim, Rng& rng);

}  // namespace qlab

#endif
