#ifndef QLAB_CORE_INDIVIDUAL_HPP
#define QLAB_CORE_INDIVIDUAL_HPP

#include <vector>

#include "core/linalg.hpp"
#include "core/valuation.hpp"

namespace qlab {

struct RankResult {
    int rank = 0;
    bool complete = false;  // rank == dim^2
};

/// Dimension of the real linear span of the powers together with I inside
/// the dim^2-dimensional space of Hermitian operators. Complete sets
/// determine the potentia of every power of the same degree.
RankResult completeness_rank(const std::vector<Power>& powers, int dim,
                             Tolerance tol = {});

struct ReconstructionResult {
    Matrix rho_hat;
    double residual = 0.0;       // RMS violation of the constraints
    double min_eigenvalue = 0.0;
    bool consistent = true;      // residual <= 1e-6
};

/// Least-squares solve of tr(rho P_i) = potentia_i plus tr(rho) = 1 over a
/// real parameterization of Hermitian matrices. No positivity projection
/// unless clip_psd is set (eigenvalue clipping with trace renormalization).
ReconstructionResult reconstruct(const std::vector<Power>& powers,
                                 const std::vector<double>& potentia, int dim,
                                 bool clip_psd = false, Tolerance tol = {});

/// A set of powers whose potentia determine all powers of the same degree
/// (or less). `potentia` is populated once the individual is measured
/// against a state; until then it is empty.
struct QuantumIndividual {
    int dim = 0;
    std::vector<Power> powers;
    std::vector<int> member_indices;  // positions in the source pool
    std::vector<double> potentia;
    bool complete = false;
    int rank = 0;
    bool certified_minimal = false;  // exact subset search vs greedy ascent
};

inline constexpr int kExactSearchPoolLimit = 24;

/// Smallest complete subset of the pool. Exact lexicographic subset search
/// with rank pruning up to kExactSearchPoolLimit powers, greedy rank ascent
/// with a lexicographic exchange pass beyond that (certified_minimal is
/// false for greedy results).
QuantumIndividual find_minimal_individual(const std::vector<Power>& pool, int dim,
                                          Tolerance tol = {});

/// Copy of the individual with potentia measured on the given state.
QuantumIndividual measure_individual(QuantumIndividual individual,
                                     const IntensiveState& state,
                                     Tolerance tol = {});

/// Potentia of an arbitrary target power, reconstructed from the
/// individual's own powers and potentia alone.
double derive_potentia(const QuantumIndividual& individual, const Power& target,
                       Tolerance tol = {});

/// Canonical informationally complete projector family on C^dim:
/// basis projectors plus projectors onto (|j>+|k>)/sqrt2 and
/// (|j>+i|k>)/sqrt2 for j < k. Exactly dim^2 powers spanning everything.
std::vector<Power> tomographic_pool(int dim);

/// Single-site diagonal powers I (x) ... (x) |j><j| (x) ... (x) I for every
/// site and level: the "local properties" of the atomist picture.
std::vector<Power> local_diagonal_powers(int dim_per_site, int sites);

struct ContrastReport {
    int dim_per_site = 0;
    int sites = 0;
    int joint_dim = 0;
    int local_rank = 0;          // span rank of the local-diagonal powers
    bool local_complete = false;
    std::vector<double> local_potentia;
    int joint_rank = 0;
    int joint_individual_size = 0;
    double sample_target_direct = 0.0;   // a correlation power, evaluated directly
    double sample_target_derived = 0.0;  // same power, derived from the individual
    double max_derivation_error = 0.0;   // over the whole tomographic pool
};

/// Local diagonal powers never determine the joint state (rank deficit),
/// while a complete joint individual derives every local and correlation
/// power. The sample target is the product-basis power with alternating
/// detector indices (e.g. the up-down power on two qubits).
ContrastReport atomist_contrast(int dim_per_site, int sites,
                                const IntensiveState& state, Tolerance tol = {});

}  // namespace qlab

#endif
