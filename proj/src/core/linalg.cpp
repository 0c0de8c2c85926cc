#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlab {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

bool all_finite(const CVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
            return false;
    return true;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

double max_entry_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

namespace {

void check_square(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        fail(ErrorCode::InvalidArgument,
             std::string(what) + ": expected a nonempty square matrix, got " +
                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!all_finite(m))
        fail(ErrorCode::InvalidArgument,
             std::string(what) + ": entries must be finite");
}

void check_same_dim(const Power& p, const Power& q, const char* what) {
    if (p.dim() != q.dim())
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + ": dimension mismatch (" +
                 std::to_string(p.dim()) + " vs " + std::to_string(q.dim()) + ")");
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

Ket::Ket(CVector amplitudes, Tolerance tol) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0)
        fail(ErrorCode::InvalidArgument, "ket: empty amplitude vector");
    if (!all_finite(amps_))
        fail(ErrorCode::InvalidArgument, "ket: amplitudes must be finite");
    double norm = amps_.norm();
    if (std::abs(norm - 1.0) > tol.eps)
        fail(ErrorCode::NotNormalized, "ket: norm = " + fmt(norm) + ", expected 1");
}

Power::Power(Matrix op, std::string label, Tolerance tol)
    : op_(std::move(op)), label_(std::move(label)) {
    check_square(op_, "power");
    double herm = (op_ - op_.adjoint()).norm();
    if (herm > tol.eps)
        fail(ErrorCode::NotAProjector,
             "power: not Hermitian, ||P - P^dagger||_F = " + fmt(herm));
    double idem = (op_ * op_ - op_).norm();
    if (idem > tol.eps)
        fail(ErrorCode::NotAProjector,
             "power: not idempotent, ||P*P - P||_F = " + fmt(idem));
}

Power make_projector(const Ket& v, std::string label) {
    Matrix op = v.amplitudes() * v.amplitudes().adjoint();
    return Power(std::move(op), std::move(label));
}

bool commutes(const Power& p, const Power& q, Tolerance tol) {
    check_same_dim(p, q, "commutes");
    return (p.op() * q.op() - q.op() * p.op()).norm() <= tol.eps;
}

bool orthogonal(const Power& p, const Power& q, Tolerance tol) {
    check_same_dim(p, q, "orthogonal");
    return (p.op() * q.op()).norm() <= tol.eps;
}

Matrix tensor(const std::vector<Matrix>& factors) {
    if (factors.empty())
        fail(ErrorCode::InvalidArgument, "tensor: at least one factor required");
    for (const Matrix& f : factors) check_square(f, "tensor");
    Matrix acc = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) {
        const Matrix& f = factors[k];
        Matrix next(acc.rows() * f.rows(), acc.cols() * f.cols());
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < acc.cols(); ++j)
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) =
                    acc(i, j) * f;
        acc = std::move(next);
    }
    return acc;
}

namespace {

// Sorted unique copy of `keep`, validated against the factor count.
std::vector<int> checked_keep(const std::vector<int>& keep, int nfactors) {
    if (keep.empty())
        fail(ErrorCode::InvalidArgument, "keep set must be nonempty");
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    if (k.front() < 0 || k.back() >= nfactors)
        fail(ErrorCode::OutOfRange,
             "keep index out of range for " + std::to_string(nfactors) + " factors");
    return k;
}

void check_dims(const std::vector<int>& dims, Eigen::Index total) {
    if (dims.empty())
        fail(ErrorCode::InvalidArgument, "factor dims must be nonempty");
    long long prod = 1;
    for (int d : dims) {
        if (d < 1) fail(ErrorCode::InvalidArgument, "factor dims must be positive");
        prod *= d;
    }
    if (prod != static_cast<long long>(total))
        fail(ErrorCode::DimensionMismatch,
             "factor dims multiply to " + std::to_string(prod) +
                 ", operator dim is " + std::to_string(total));
}

// Flat offsets of every multi-index over the `idx` factors, row-major with
// factor 0 slowest in the full space.
std::vector<Eigen::Index> subspace_offsets(const std::vector<int>& dims,
                                           const std::vector<int>& idx) {
    std::vector<Eigen::Index> strides(dims.size());
    Eigen::Index s = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        strides[k] = s;
        s *= dims[k];
    }
    Eigen::Index count = 1;
    for (int k : idx) count *= dims[k];
    std::vector<Eigen::Index> offsets(count, 0);
    Eigen::Index repeat = 1;
    for (int k : idx) {
        Eigen::Index block = count / (repeat * dims[k]);
        Eigen::Index pos = 0;
        for (Eigen::Index r = 0; r < repeat; ++r)
            for (int v = 0; v < dims[k]; ++v)
                for (Eigen::Index b = 0; b < block; ++b)
                    offsets[pos++] += v * strides[k];
        repeat *= dims[k];
    }
    return offsets;
}

}  // namespace

Matrix partial_trace(const Matrix& op, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    check_square(op, "partial_trace");
    check_dims(dims, op.rows());
    std::vector<int> kept = checked_keep(keep, static_cast<int>(dims.size()));
    std::vector<int> discarded;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
        if (!std::binary_search(kept.begin(), kept.end(), k)) discarded.push_back(k);

    auto kept_off = subspace_offsets(dims, kept);
    auto disc_off = subspace_offsets(dims, discarded);

    Eigen::Index nk = static_cast<Eigen::Index>(kept_off.size());
    Matrix out = Matrix::Zero(nk, nk);
    for (Eigen::Index a = 0; a < nk; ++a)
        for (Eigen::Index b = 0; b < nk; ++b) {
            Complex sum = 0.0;
            for (Eigen::Index d : disc_off)
                sum += op(kept_off[a] + d, kept_off[b] + d);
            out(a, b) = sum;
        }
    return out;
}

Matrix conjugate(const Matrix& op, const Matrix& u, Tolerance tol) {
    check_square(op, "conjugate");
    check_square(u, "conjugate");
    if (op.rows() != u.rows())
        fail(ErrorCode::DimensionMismatch,
             "conjugate: operator dim " + std::to_string(op.rows()) +
                 " vs unitary dim " + std::to_string(u.rows()));
    double dev = (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm();
    if (dev > tol.eps)
        fail(ErrorCode::NotUnitary,
             "conjugate: ||u*u^dagger - I||_F = " + fmt(dev));
    return u * op * u.adjoint();
}

Matrix embed_on_factors(const Matrix& p, const std::vector<int>& dims,
                        const std::vector<int>& keep) {
    std::vector<int> kept = checked_keep(keep, static_cast<int>(dims.size()));
    check_square(p, "embed_on_factors");
    long long kdim = 1;
    for (int k : kept) kdim *= dims[k];
    if (kdim != p.rows())
        fail(ErrorCode::DimensionMismatch,
             "embed_on_factors: kept dims multiply to " + std::to_string(kdim) +
                 ", operator dim is " + std::to_string(p.rows()));
    std::vector<int> discarded;
    long long full = 1;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
        full *= dims[k];
        if (!std::binary_search(kept.begin(), kept.end(), k)) discarded.push_back(k);
    }
    auto kept_off = subspace_offsets(dims, kept);
    auto disc_off = subspace_offsets(dims, discarded);

    Matrix out = Matrix::Zero(full, full);
    for (std::size_t a = 0; a < kept_off.size(); ++a)
        for (std::size_t b = 0; b < kept_off.size(); ++b) {
            Complex val = p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (val == Complex(0.0, 0.0)) continue;
            for (Eigen::Index d : disc_off)
                out(kept_off[a] + d, kept_off[b] + d) = val;
        }
    return out;
}

}  // namespace qlab
