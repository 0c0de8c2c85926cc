#ifndef QLAB_CORE_LINALG_HPP
#define QLAB_CORE_LINALG_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/error.hpp"

namespace qlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Validation tolerance. Frobenius norm is the metric everywhere.
struct Tolerance {
    double eps = 1e-9;

    Tolerance() = default;
    Tolerance(double e) : eps(e) {
        if (!(e > 0.0 && e < 1.0))
            fail(ErrorCode::InvalidArgument,
                 "tolerance must lie in (0,1), got " + std::to_string(e));
    }
};

bool all_finite(const Matrix& m);
bool all_finite(const CVector& v);
Matrix identity(int dim);

/// Max absolute entrywise difference; used for duplicate detection.
double max_entry_diff(const Matrix& a, const Matrix& b);

/// A unit-norm state vector.
class Ket {
public:
    explicit Ket(CVector amplitudes, Tolerance tol = {});
    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }

private:
    CVector amps_;
};

/// A validated projector (Hermitian and idempotent within tolerance).
class Power {
public:
    explicit Power(Matrix op, std::string label = {}, Tolerance tol = {});
    int dim() const { return static_cast<int>(op_.rows()); }
    const Matrix& op() const { return op_; }
    const std::string& label() const { return label_; }

private:
    Matrix op_;
    std::string label_;
};

/// Rank-1 projector |v><v| from a unit ket.
Power make_projector(const Ket& v, std::string label = {});

/// True iff ||pq - qp||_F <= tol.
bool commutes(const Power& p, const Power& q, Tolerance tol = {});

/// True iff ||p q||_F <= tol.
bool orthogonal(const Power& p, const Power& q, Tolerance tol = {});

/// Kronecker product, first factor slowest-varying index.
Matrix tensor(const std::vector<Matrix>& factors);

/// Trace out the factors not listed in `keep` (0-based factor indices,
/// factor 0 slowest). `dims` must multiply to op.rows().
Matrix partial_trace(const Matrix& op, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// u * op * u^dagger; u must be unitary within tol.
Matrix conjugate(const Matrix& op, const Matrix& u, Tolerance tol = {});

/// Embed an operator living on the `keep` factors as P (x) I on the full
/// space, preserving the original factor order.
Matrix embed_on_factors(const Matrix& p, const std::vector<int>& dims,
                        const std::vector<int>& keep);

}  // namespace qlab

#endif
