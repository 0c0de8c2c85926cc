#include "core/rng.hpp"

#include <cmath>
#include <numbers>

namespace qlab {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the concatenated words
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

CVector random_unit_vector(int dim, Rng& rng) {
    if (dim < 1) fail(ErrorCode::InvalidArgument, "random_unit_vector: dim must be >= 1");
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.cgaussian();
    double n = v.norm();
    while (n == 0.0) {
        for (int i = 0; i < dim; ++i) v(i) = rng.cgaussian();
        n = v.norm();
    }
    return v / n;
}

Matrix random_unitary(int dim, Rng& rng) {
    if (dim < 1) fail(ErrorCode::InvalidArgument, "random_unitary: dim must be >= 1");
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase gauge so the distribution is Haar: scale each column by
    // the conjugate phase of the corresponding R diagonal.
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        double mag = std::abs(d);
        Complex phase = (mag == 0.0) ? Complex(1.0, 0.0) : d / mag;
        q.col(j) *= std::conj(phase);
    }
    return q;
}

}  // namespace qlab
