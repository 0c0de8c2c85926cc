#include "core/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/rng.hpp"

namespace qlab {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

IntensiveState::IntensiveState(Matrix rho, Tolerance tol) : rho_(std::move(rho)) {
    if (rho_.rows() == 0 || rho_.rows() != rho_.cols())
        fail(ErrorCode::InvalidArgument, "state: expected a nonempty square matrix");
    if (!all_finite(rho_))
        fail(ErrorCode::InvalidArgument, "state: entries must be finite");
    double herm = (rho_ - rho_.adjoint()).norm();
    if (herm > tol.eps)
        fail(ErrorCode::NotAState,
             "state: not Hermitian, ||rho - rho^dagger||_F = " + fmt(herm));
    double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > tol.eps)
        fail(ErrorCode::NotAState, "state: trace = " + fmt(tr) + ", expected 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho_ + rho_.adjoint()) / 2.0);
    double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.eps)
        fail(ErrorCode::NotAState,
             "state: negative eigenvalue " + fmt(min_eig));
}

IntensiveState random_state(int dim, StatePurity purity, std::uint64_t seed) {
    if (dim < 2) fail(ErrorCode::InvalidArgument, "random_state: dim must be >= 2");
    Rng rng(seed);
    if (purity == StatePurity::Pure) {
        CVector v = random_unit_vector(dim, rng);
        return IntensiveState(v * v.adjoint());
    }
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.cgaussian();
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // symmetrize away the last rounding crumbs
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return IntensiveState(std::move(rho));
}

double potentia(const IntensiveState& state, const Power& p, Tolerance tol) {
    if (state.dim() != p.dim())
        fail(ErrorCode::DimensionMismatch,
             "potentia: state dim " + std::to_string(state.dim()) +
                 " vs power dim " + std::to_string(p.dim()));
    double value = (state.rho() * p.op()).trace().real();
    if (value < 0.0) {
        if (value < -tol.eps)
            fail(ErrorCode::InvariantViolation,
                 "potentia: value " + fmt(value) + " below 0 beyond tolerance");
        return 0.0;
    }
    if (value > 1.0) {
        if (value > 1.0 + tol.eps)
            fail(ErrorCode::InvariantViolation,
                 "potentia: value " + fmt(value) + " above 1 beyond tolerance");
        return 1.0;
    }
    return value;
}

GivTable make_giv(const IntensiveState& state, const PowerGraph& g, Tolerance tol) {
    if (state.dim() != g.dim)
        fail(ErrorCode::DimensionMismatch,
             "make_giv: state dim " + std::to_string(state.dim()) +
                 " vs graph dim " + std::to_string(g.dim));
    GivTable table;
    table.values.reserve(g.powers.size());
    for (const Power& p : g.powers) table.values.push_back(potentia(state, p, tol));
    return table;
}

IsaReport validate_isa(const PowerGraph& g, const GivTable& table,
                       const std::vector<Context>& contexts, Tolerance tol) {
    int n = static_cast<int>(g.powers.size());
    if (static_cast<int>(table.values.size()) != n)
        fail(ErrorCode::InvalidArgument,
             "validate_isa: table has " + std::to_string(table.values.size()) +
                 " values for " + std::to_string(n) + " powers");
    for (double v : table.values)
        if (!(v >= 0.0 && v <= 1.0))
            fail(ErrorCode::InvariantViolation,
                 "validate_isa: value " + fmt(v) + " outside [0,1]");

    IsaReport report;
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        const auto& members = contexts[c].members;
        double sum = 0.0;
        for (int m : members) {
            if (m < 0 || m >= n)
                fail(ErrorCode::OutOfRange,
                     "validate_isa: context member " + std::to_string(m) +
                         " out of range");
            sum += table.values[m];
        }
        double dev = std::abs(sum - 1.0);
        report.context_checks.push_back(
            {static_cast<int>(c), sum, dev, dev <= tol.eps});
        report.max_deviation = std::max(report.max_deviation, dev);
    }

    // Finite additivity inside each supplied family: any sub-family whose
    // operator sum reappears in the pool as some power Q must satisfy
    // Psi(Q) = sum of member values.
    for (const Context& ctx : contexts) {
        const auto& mem = ctx.members;
        int k = static_cast<int>(mem.size());
        if (k < 2 || k > 20) continue;
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            int bits = __builtin_popcount(mask);
            if (bits < 2) continue;
            Matrix sum = Matrix::Zero(g.dim, g.dim);
            double rhs = 0.0;
            std::vector<int> members;
            for (int t = 0; t < k; ++t)
                if (mask & (1u << t)) {
                    sum += g.powers[mem[t]].op();
                    rhs += table.values[mem[t]];
                    members.push_back(mem[t]);
                }
            for (int q = 0; q < n; ++q) {
                if (std::find(members.begin(), members.end(), q) != members.end())
                    continue;
                if ((sum - g.powers[q].op()).norm() > tol.eps) continue;
                double lhs = table.values[q];
                double dev = std::abs(lhs - rhs);
                report.additivity_checks.push_back(
                    {members, q, lhs, rhs, dev, dev <= tol.eps});
                report.max_deviation = std::max(report.max_deviation, dev);
            }
        }
    }

    for (const auto& c : report.context_checks) report.pass = report.pass && c.pass;
    for (const auto& a : report.additivity_checks) report.pass = report.pass && a.pass;
    return report;
}

}  // namespace qlab
