#include "core/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

Factorization::Factorization(std::vector<int> dims) : factor_dims(std::move(dims)) {
    if (factor_dims.empty())
        fail(ErrorCode::InvalidArgument, "factorization: no screens");
    for (int d : factor_dims)
        if (d < 2)
            fail(ErrorCode::InvalidArgument,
                 "factorization: every screen needs at least 2 detector places, got " +
                     std::to_string(d));
}

int Factorization::total_dim() const {
    int n = 1;
    for (int d : factor_dims) n *= d;
    return n;
}

DetectorBasis::DetectorBasis(const Factorization& f,
                             std::vector<std::vector<Ket>> screens, Tolerance tol)
    : screens_(std::move(screens)) {
    if (static_cast<int>(screens_.size()) != f.screens())
        fail(ErrorCode::InvalidArgument,
             "detector basis: " + std::to_string(screens_.size()) +
                 " bases for " + std::to_string(f.screens()) + " screens");
    for (int s = 0; s < f.screens(); ++s) {
        int d = f.factor_dims[s];
        const auto& basis = screens_[s];
        if (static_cast<int>(basis.size()) != d)
            fail(ErrorCode::NotOrthonormal,
                 "screen " + std::to_string(s) + ": expected " + std::to_string(d) +
                     " detectors, got " + std::to_string(basis.size()));
        for (const Ket& k : basis)
            if (k.dim() != d)
                fail(ErrorCode::DimensionMismatch,
                     "screen " + std::to_string(s) + ": detector ket of dim " +
                         std::to_string(k.dim()) + ", expected " + std::to_string(d));
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                Complex g = basis[a].amplitudes().dot(basis[b].amplitudes());
                double expect = (a == b) ? 1.0 : 0.0;
                if (std::abs(g - expect) > tol.eps)
                    fail(ErrorCode::NotOrthonormal,
                         "screen " + std::to_string(s) +
                             ": detectors not orthonormal, |<" + std::to_string(a) +
                             "|" + std::to_string(b) + ">| deviates by " +
                             fmt(std::abs(g - expect)));
            }
    }
}

Matrix DetectorBasis::product_basis_matrix() const {
    std::vector<Matrix> factors;
    factors.reserve(screens_.size());
    for (const auto& basis : screens_) {
        int d = static_cast<int>(basis.size());
        Matrix w(d, d);
        for (int j = 0; j < d; ++j) w.col(j) = basis[j].amplitudes();
        factors.push_back(std::move(w));
    }
    return tensor(factors);
}

DetectorBasis standard_basis(const Factorization& f) {
    std::vector<std::vector<Ket>> screens;
    for (int d : f.factor_dims) {
        std::vector<Ket> basis;
        for (int j = 0; j < d; ++j) {
            CVector e = CVector::Zero(d);
            e(j) = 1.0;
            basis.emplace_back(std::move(e));
        }
        screens.push_back(std::move(basis));
    }
    return DetectorBasis(f, std::move(screens));
}

ExperimentalArrangement::ExperimentalArrangement(Factorization f, DetectorBasis b,
                                                 Matrix alpha,
                                                 std::optional<IntensiveState> lab,
                                                 Tolerance tol)
    : fact_(std::move(f)),
      basis_(std::move(b)),
      alpha_(std::move(alpha)),
      lab_(std::move(lab)) {
    int n = fact_.total_dim();
    if (alpha_.rows() != n || alpha_.cols() != n)
        fail(ErrorCode::DimensionMismatch,
             "arrangement: alpha is " + std::to_string(alpha_.rows()) + "x" +
                 std::to_string(alpha_.cols()) + ", expected " + std::to_string(n));
    double herm = (alpha_ - alpha_.adjoint()).norm();
    if (herm > tol.eps)
        fail(ErrorCode::InvariantViolation,
             "arrangement: alpha not Hermitian, deviation " + fmt(herm));
    double diag_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double re = alpha_(k, k).real();
        if (re < -tol.eps || re > 1.0 + tol.eps)
            fail(ErrorCode::InvariantViolation,
                 "arrangement: diagonal entry " + std::to_string(k) + " = " +
                     fmt(re) + " outside [0,1]");
        diag_sum += re;
    }
    if (std::abs(diag_sum - 1.0) > tol.eps)
        fail(ErrorCode::InvariantViolation,
             "arrangement: diagonal sums to " + fmt(diag_sum) + ", expected 1");
}

ExperimentalArrangement build_arrangement(const IntensiveState& lab,
                                          const Factorization& f,
                                          const DetectorBasis& b, Tolerance tol) {
    if (f.total_dim() != lab.dim())
        fail(ErrorCode::DimensionMismatch,
             "build_arrangement: factorization dim " + std::to_string(f.total_dim()) +
                 " vs lab dim " + std::to_string(lab.dim()));
    Matrix w = b.product_basis_matrix();
    Matrix alpha = w.adjoint() * lab.rho() * w;
    return ExperimentalArrangement(f, b, std::move(alpha), lab, tol);
}

ExperimentalArrangement arrangement_from_alpha(const Factorization& f,
                                               const DetectorBasis& b, Matrix alpha,
                                               Tolerance tol) {
    return ExperimentalArrangement(f, b, std::move(alpha), std::nullopt, tol);
}

double power_effect(const ExperimentalArrangement& ea,
                    const std::vector<int>& multi_index) {
    const auto& dims = ea.factorization().factor_dims;
    if (multi_index.size() != dims.size())
        fail(ErrorCode::OutOfRange,
             "power_effect: multi-index has " + std::to_string(multi_index.size()) +
                 " components for " + std::to_string(dims.size()) + " screens");
    int flat = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
        int k = multi_index[s];
        if (k < 0 || k >= dims[s])
            fail(ErrorCode::OutOfRange,
                 "power_effect: detector index " + std::to_string(k) +
                     " out of range for screen " + std::to_string(s));
        flat = flat * dims[s] + k;
    }
    double v = ea.alpha()(flat, flat).real();
    return std::clamp(v, 0.0, 1.0);
}

double arrangement_potentia(const ExperimentalArrangement& ea, const Power& p,
                            Tolerance tol) {
    if (p.dim() != ea.degree())
        fail(ErrorCode::DimensionMismatch,
             "arrangement_potentia: power dim " + std::to_string(p.dim()) +
                 " vs degree " + std::to_string(ea.degree()));
    Matrix w = ea.basis().product_basis_matrix();
    double value = (ea.alpha() * (w.adjoint() * p.op() * w)).trace().real();
    if (value < -tol.eps || value > 1.0 + tol.eps)
        fail(ErrorCode::InvariantViolation,
             "arrangement_potentia: value " + fmt(value) + " outside [0,1]");
    return std::clamp(value, 0.0, 1.0);
}

ExperimentalArrangement rebase(const ExperimentalArrangement& ea,
                               const std::vector<Matrix>& per_screen_unitaries,
                               Tolerance tol) {
    const Factorization& f = ea.factorization();
    if (static_cast<int>(per_screen_unitaries.size()) != f.screens())
        fail(ErrorCode::InvalidArgument,
             "rebase: " + std::to_string(per_screen_unitaries.size()) +
                 " unitaries for " + std::to_string(f.screens()) + " screens");
    bool all_identity = true;
    std::vector<std::vector<Ket>> rotated;
    for (int s = 0; s < f.screens(); ++s) {
        const Matrix& u = per_screen_unitaries[s];
        int d = f.factor_dims[s];
        if (u.rows() != d || u.cols() != d)
            fail(ErrorCode::DimensionMismatch,
                 "rebase: unitary for screen " + std::to_string(s) + " is " +
                     std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                     ", expected " + std::to_string(d));
        double dev = (u * u.adjoint() - Matrix::Identity(d, d)).norm();
        if (dev > tol.eps)
            fail(ErrorCode::NotUnitary,
                 "rebase: screen " + std::to_string(s) +
                     " input not unitary, ||u*u^dagger - I||_F = " + fmt(dev));
        if ((u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() != 0.0)
            all_identity = false;
        std::vector<Ket> basis;
        for (int j = 0; j < d; ++j)
            basis.emplace_back(CVector(u * ea.basis().screen(s)[j].amplitudes()));
        rotated.push_back(std::move(basis));
    }
    // identity detectors change nothing; keep alpha bit-identical
    if (all_identity) return ea;
    DetectorBasis new_basis(f, std::move(rotated), tol);
    // alpha transforms with V = W^dagger U W, entirely determined by the
    // bases; no lab state is needed.
    Matrix w = ea.basis().product_basis_matrix();
    Matrix u_full = tensor(per_screen_unitaries);
    Matrix v = w.adjoint() * u_full * w;
    Matrix alpha = v.adjoint() * ea.alpha() * v;
    alpha = ((alpha + alpha.adjoint()) / 2.0).eval();
    return ExperimentalArrangement(f, std::move(new_basis), std::move(alpha),
                                   ea.lab(), tol);
}

ExperimentalArrangement derive_subarrangement(const ExperimentalArrangement& ea,
                                              const std::vector<int>& keep,
                                              Tolerance tol) {
    const Factorization& f = ea.factorization();
    if (keep.empty())
        fail(ErrorCode::InvalidArgument, "derive_subarrangement: empty keep set");
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.front() < 0 || kept.back() >= f.screens())
        fail(ErrorCode::OutOfRange,
             "derive_subarrangement: screen index out of range");
    if (static_cast<int>(kept.size()) == f.screens()) return ea;

    std::vector<int> sub_dims;
    std::vector<std::vector<Ket>> sub_screens;
    for (int s : kept) {
        sub_dims.push_back(f.factor_dims[s]);
        sub_screens.push_back(ea.basis().screen(s));
    }
    Factorization sub_f(sub_dims);
    DetectorBasis sub_b(sub_f, std::move(sub_screens), tol);
    Matrix sub_alpha = partial_trace(ea.alpha(), f.factor_dims, kept);
    sub_alpha = ((sub_alpha + sub_alpha.adjoint()) / 2.0).eval();

    std::optional<IntensiveState> sub_lab;
    if (ea.lab())
        sub_lab = IntensiveState(
            partial_trace(ea.lab()->rho(), f.factor_dims, kept), tol);
    return ExperimentalArrangement(sub_f, std::move(sub_b), std::move(sub_alpha),
                                   std::move(sub_lab), tol);
}

KnowledgeReport arrangement_knowledge(const ExperimentalArrangement& ea) {
    KnowledgeReport report;
    report.degree = ea.degree();
    report.independent_real_parameters = ea.degree() * ea.degree() - 1;
    report.purity = (ea.alpha() * ea.alpha()).trace().real();
    return report;
}

}  // namespace qlab
