#include "core/individual.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qlab {

namespace {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Real coordinates of a Hermitian operator, laid out so that
// row(P) . params(rho) = tr(rho P):
//   [P_ii ...] ++ [2 Re P_ij, i<j ...] ++ [2 Im P_ij, i<j ...]
RealVector hermitian_row(const Matrix& p) {
    int d = static_cast<int>(p.rows());
    RealVector row(d * d);
    int at = 0;
    for (int i = 0; i < d; ++i) row(at++) = p(i, i).real();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) row(at++) = 2.0 * p(i, j).real();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) row(at++) = 2.0 * p(i, j).imag();
    return row;
}

Matrix hermitian_from_params(const RealVector& x, int d) {
    Matrix m(d, d);
    int at = 0;
    for (int i = 0; i < d; ++i) m(i, i) = x(at++);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m(i, j) = x(at++);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m(i, j) += Complex(0.0, 1.0) * x(at++);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
    return m;
}

void check_pool_dims(const std::vector<Power>& powers, int dim, const char* what) {
    if (dim < 1) fail(ErrorCode::InvalidArgument, std::string(what) + ": dim must be positive");
    for (const Power& p : powers)
        if (p.dim() != dim)
            fail(ErrorCode::DimensionMismatch,
                 std::string(what) + ": power of dim " + std::to_string(p.dim()) +
                     " in a dim-" + std::to_string(dim) + " pool");
}

int svd_rank(const RealMatrix& rows, double eps) {
    Eigen::JacobiSVD<RealMatrix> svd(rows);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double cutoff = eps * sv(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

// Incremental span tracker over the Hermitian coordinate space, used to
// prune the subset search. The authoritative completeness test stays the
// SVD-based completeness_rank.
struct SpanTracker {
    std::vector<RealVector> basis;  // orthonormal
    double eps;

    explicit SpanTracker(double e) : eps(e) {}

    bool would_grow(const RealVector& v) const {
        RealVector r = v;
        for (const RealVector& b : basis) r -= b.dot(v) * b;
        return r.norm() > eps * std::max(1.0, v.norm());
    }

    bool add(const RealVector& v) {
        RealVector r = v;
        for (const RealVector& b : basis) r -= b.dot(v) * b;
        // re-orthogonalize once; plain Gram-Schmidt drifts
        for (const RealVector& b : basis) r -= b.dot(r) * b;
        double n = r.norm();
        if (n <= eps * std::max(1.0, v.norm())) return false;
        basis.push_back(r / n);
        return true;
    }
};

}  // namespace

RankResult completeness_rank(const std::vector<Power>& powers, int dim,
                             Tolerance tol) {
    check_pool_dims(powers, dim, "completeness_rank");
    int m = static_cast<int>(powers.size());
    RealMatrix rows(m + 1, dim * dim);
    for (int i = 0; i < m; ++i) rows.row(i) = hermitian_row(powers[i].op());
    rows.row(m) = hermitian_row(identity(dim));
    RankResult result;
    result.rank = svd_rank(rows, tol.eps);
    result.complete = result.rank == dim * dim;
    return result;
}

ReconstructionResult reconstruct(const std::vector<Power>& powers,
                                 const std::vector<double>& potentia, int dim,
                                 bool clip_psd, Tolerance tol) {
    check_pool_dims(powers, dim, "reconstruct");
    RankResult rank = completeness_rank(powers, dim, tol);
    if (!rank.complete)
        fail(ErrorCode::Incomplete,
             "reconstruct: power set is informationally incomplete, rank " +
                 std::to_string(rank.rank) + " of " + std::to_string(dim * dim));
    if (potentia.size() != powers.size())
        fail(ErrorCode::InvalidArgument,
             "reconstruct: " + std::to_string(potentia.size()) + " potentia for " +
                 std::to_string(powers.size()) + " powers");
    for (double v : potentia)
        if (!(v >= 0.0 && v <= 1.0))
            fail(ErrorCode::InvalidArgument,
                 "reconstruct: potentia " + std::to_string(v) + " outside [0,1]");

    int m = static_cast<int>(powers.size());
    RealMatrix a(m + 1, dim * dim);
    RealVector b(m + 1);
    for (int i = 0; i < m; ++i) {
        a.row(i) = hermitian_row(powers[i].op());
        b(i) = potentia[i];
    }
    a.row(m) = hermitian_row(identity(dim));
    b(m) = 1.0;

    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RealVector x = svd.solve(b);

    ReconstructionResult result;
    result.rho_hat = hermitian_from_params(x, dim);
    result.residual = std::sqrt((a * x - b).squaredNorm() / (m + 1));
    Eigen::SelfAdjointEigenSolver<Matrix> es(result.rho_hat);
    result.min_eigenvalue = es.eigenvalues().minCoeff();
    result.consistent = result.residual <= 1e-6;

    if (clip_psd) {
        RealVector clipped = es.eigenvalues().cwiseMax(0.0);
        double total = clipped.sum();
        if (total <= 0.0)
            fail(ErrorCode::InvariantViolation,
                 "reconstruct: clipping left a zero operator");
        result.rho_hat = es.eigenvectors() *
                         (clipped / total).asDiagonal().toDenseMatrix().cast<Complex>() *
                         es.eigenvectors().adjoint();
    }
    return result;
}

namespace {

struct SubsetSearch {
    const std::vector<Power>& pool;
    int dim;
    Tolerance tol;
    int need;  // dim^2
    std::vector<RealVector> rows;
    std::vector<int> chosen;
    std::vector<int> result;

    SubsetSearch(const std::vector<Power>& p, int d, Tolerance t)
        : pool(p), dim(d), tol(t), need(d * d) {
        rows.reserve(pool.size());
        for (const Power& pw : pool) rows.push_back(hermitian_row(pw.op()));
    }

    bool confirmed_complete(const std::vector<int>& subset) const {
        std::vector<Power> sub;
        sub.reserve(subset.size());
        for (int i : subset) sub.push_back(pool[i]);
        return completeness_rank(sub, dim, tol).complete;
    }

    // Lexicographic DFS over k-subsets; first confirmed hit wins.
    bool dfs(int start, int k, SpanTracker& span) {
        if (static_cast<int>(chosen.size()) == k) {
            if (static_cast<int>(span.basis.size()) == need &&
                confirmed_complete(chosen)) {
                result = chosen;
                return true;
            }
            return false;
        }
        int remaining = k - static_cast<int>(chosen.size());
        for (int i = start; i <= static_cast<int>(pool.size()) - remaining; ++i) {
            SpanTracker next = span;
            next.add(rows[i]);
            if (static_cast<int>(next.basis.size()) + (remaining - 1) < need)
                continue;
            chosen.push_back(i);
            if (dfs(i + 1, k, next)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace

QuantumIndividual find_minimal_individual(const std::vector<Power>& pool, int dim,
                                          Tolerance tol) {
    check_pool_dims(pool, dim, "find_minimal_individual");
    RankResult full = completeness_rank(pool, dim, tol);
    if (!full.complete)
        fail(ErrorCode::Incomplete,
             "find_minimal_individual: pool is informationally incomplete, rank " +
                 std::to_string(full.rank) + " of " + std::to_string(dim * dim));

    int n = static_cast<int>(pool.size());
    std::vector<int> picked;
    bool certified = n <= kExactSearchPoolLimit;

    if (certified) {
        // I contributes one direction, every power at most one more, so no
        // complete subset can be smaller than dim^2 - 1.
        for (int k = dim * dim - 1; k <= n; ++k) {
            SubsetSearch search(pool, dim, tol);
            SpanTracker span(tol.eps);
            span.add(hermitian_row(identity(dim)));
            if (search.dfs(0, k, span)) {
                picked = search.result;
                break;
            }
        }
    } else {
        SpanTracker span(tol.eps);
        span.add(hermitian_row(identity(dim)));
        for (int i = 0; i < n && static_cast<int>(span.basis.size()) < dim * dim; ++i)
            if (span.add(hermitian_row(pool[i].op()))) picked.push_back(i);
        // one exchange pass toward lexicographically earlier members
        for (std::size_t s = 0; s < picked.size(); ++s) {
            for (int c = 0; c < picked[s]; ++c) {
                if (std::find(picked.begin(), picked.end(), c) != picked.end())
                    continue;
                std::vector<int> trial = picked;
                trial[s] = c;
                std::sort(trial.begin(), trial.end());
                std::vector<Power> sub;
                for (int i : trial) sub.push_back(pool[i]);
                if (completeness_rank(sub, dim, tol).complete) {
                    picked = trial;
                    break;
                }
            }
        }
    }

    if (picked.empty())
        fail(ErrorCode::Incomplete,
             "find_minimal_individual: no complete subset found despite complete "
             "pool (numerical rank instability)");

    QuantumIndividual ind;
    ind.dim = dim;
    ind.member_indices = picked;
    for (int i : picked) ind.powers.push_back(pool[i]);
    ind.complete = true;
    ind.rank = dim * dim;
    ind.certified_minimal = certified;
    return ind;
}

QuantumIndividual measure_individual(QuantumIndividual individual,
                                     const IntensiveState& state, Tolerance tol) {
    if (state.dim() != individual.dim)
        fail(ErrorCode::DimensionMismatch,
             "measure_individual: state dim " + std::to_string(state.dim()) +
                 " vs individual dim " + std::to_string(individual.dim));
    individual.potentia.clear();
    individual.potentia.reserve(individual.powers.size());
    for (const Power& p : individual.powers)
        individual.potentia.push_back(potentia(state, p, tol));
    return individual;
}

double derive_potentia(const QuantumIndividual& individual, const Power& target,
                       Tolerance tol) {
    if (!individual.complete)
        fail(ErrorCode::Incomplete,
             "derive_potentia: individual is not informationally complete");
    if (individual.potentia.size() != individual.powers.size())
        fail(ErrorCode::InvalidArgument,
             "derive_potentia: individual has no measured potentia");
    if (target.dim() != individual.dim)
        fail(ErrorCode::DimensionMismatch,
             "derive_potentia: target dim " + std::to_string(target.dim()) +
                 " vs individual dim " + std::to_string(individual.dim));
    ReconstructionResult rec =
        reconstruct(individual.powers, individual.potentia, individual.dim,
                    /*clip_psd=*/false, tol);
    // reconstructed operators can poke slightly outside [0,1]; the derived
    // potentia is clamped back into range
    double value = (rec.rho_hat * target.op()).trace().real();
    return std::clamp(value, 0.0, 1.0);
}

std::vector<Power> tomographic_pool(int dim) {
    if (dim < 2)
        fail(ErrorCode::InvalidArgument, "tomographic_pool: dim must be >= 2");
    std::vector<Power> pool;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < dim; ++j) {
        CVector e = CVector::Zero(dim);
        e(j) = 1.0;
        pool.push_back(make_projector(Ket(e), "e" + std::to_string(j)));
    }
    for (int j = 0; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) {
            CVector x = CVector::Zero(dim);
            x(j) = inv_sqrt2;
            x(k) = inv_sqrt2;
            pool.push_back(make_projector(
                Ket(x), "x" + std::to_string(j) + std::to_string(k)));
            CVector y = CVector::Zero(dim);
            y(j) = inv_sqrt2;
            y(k) = Complex(0.0, inv_sqrt2);
            pool.push_back(make_projector(
                Ket(y), "y" + std::to_string(j) + std::to_string(k)));
        }
    return pool;
}

std::vector<Power> local_diagonal_powers(int dim_per_site, int sites) {
    if (dim_per_site < 2 || sites < 1)
        fail(ErrorCode::InvalidArgument,
             "local_diagonal_powers: need dim_per_site >= 2 and sites >= 1");
    std::vector<int> dims(sites, dim_per_site);
    std::vector<Power> powers;
    for (int s = 0; s < sites; ++s)
        for (int j = 0; j < dim_per_site; ++j) {
            Matrix p = Matrix::Zero(dim_per_site, dim_per_site);
            p(j, j) = 1.0;
            powers.emplace_back(embed_on_factors(p, dims, {s}),
                                "site" + std::to_string(s) + ":" + std::to_string(j));
        }
    return powers;
}

ContrastReport atomist_contrast(int dim_per_site, int sites,
                                const IntensiveState& state, Tolerance tol) {
    if (dim_per_site < 2 || sites < 1)
        fail(ErrorCode::InvalidArgument,
             "atomist_contrast: need dim_per_site >= 2 and sites >= 1");
    int joint_dim = 1;
    for (int s = 0; s < sites; ++s) joint_dim *= dim_per_site;
    if (state.dim() != joint_dim)
        fail(ErrorCode::DimensionMismatch,
             "atomist_contrast: state dim " + std::to_string(state.dim()) +
                 " vs " + std::to_string(dim_per_site) + "^" + std::to_string(sites) +
                 " = " + std::to_string(joint_dim));

    ContrastReport report;
    report.dim_per_site = dim_per_site;
    report.sites = sites;
    report.joint_dim = joint_dim;

    std::vector<Power> locals = local_diagonal_powers(dim_per_site, sites);
    RankResult local_rank = completeness_rank(locals, joint_dim, tol);
    report.local_rank = local_rank.rank;
    report.local_complete = local_rank.complete;
    for (const Power& p : locals)
        report.local_potentia.push_back(potentia(state, p, tol));

    std::vector<Power> joint_pool = tomographic_pool(joint_dim);
    QuantumIndividual individual = find_minimal_individual(joint_pool, joint_dim, tol);
    individual = measure_individual(individual, state, tol);
    report.joint_rank = individual.rank;
    report.joint_individual_size = static_cast<int>(individual.powers.size());

    // correlation power: product-basis projector with alternating detector
    // indices across the sites
    int flat = 0;
    for (int s = 0; s < sites; ++s) flat = flat * dim_per_site + (s % dim_per_site);
    Matrix target = Matrix::Zero(joint_dim, joint_dim);
    target(flat, flat) = 1.0;
    Power target_power(target, "correlation");
    report.sample_target_direct = potentia(state, target_power, tol);
    report.sample_target_derived = derive_potentia(individual, target_power, tol);

    for (const Power& p : joint_pool) {
        double direct = potentia(state, p, tol);
        double derived = derive_potentia(individual, p, tol);
        report.max_derivation_error =
            std::max(report.max_derivation_error, std::abs(direct - derived));
    }
    return report;
}

}  // namespace qlab
