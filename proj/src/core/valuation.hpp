#ifndef QLAB_CORE_VALUATION_HPP
#define QLAB_CORE_VALUATION_HPP

#include <cstdint>
#include <vector>

#include "core/graph.hpp"
#include "core/linalg.hpp"

namespace qlab {

/// Density-operator realization of an intensive state of affairs: the fixed
/// state a quantum lab evaluates every power against.
class IntensiveState {
public:
    explicit IntensiveState(Matrix rho, Tolerance tol = {});
    int dim() const { return static_cast<int>(rho_.rows()); }
    const Matrix& rho() const { return rho_; }
    double purity() const { return (rho_ * rho_).trace().real(); }

private:
    Matrix rho_;
};

enum class StatePurity { Pure, Mixed };

/// Deterministic per seed: pure draws a gaussian unit vector, mixed draws
/// G G^dagger / tr(G G^dagger).
IntensiveState random_state(int dim, StatePurity purity, std::uint64_t seed);

/// The intensity Re tr(rho P), clamped to [0,1] only within tol of the
/// boundary; values farther out raise an invariant violation.
double potentia(const IntensiveState& state, const Power& p, Tolerance tol = {});

/// Global intensive valuation over a power graph: one value per vertex.
struct GivTable {
    std::vector<double> values;
};

GivTable make_giv(const IntensiveState& state, const PowerGraph& g,
                  Tolerance tol = {});

struct ContextCheck {
    int context_index;
    double sum;
    double deviation;  // |sum - 1|
    bool pass;
};

/// Additivity check for an orthogonal family whose operator sum equals a
/// pool power: Psi(Q) vs sum of member values.
struct AdditivityCheck {
    std::vector<int> members;
    int target;  // vertex index of Q
    double lhs;
    double rhs;
    double deviation;
    bool pass;
};

struct IsaReport {
    std::vector<ContextCheck> context_checks;
    std::vector<AdditivityCheck> additivity_checks;
    double max_deviation = 0.0;
    bool pass = true;
};

/// Checks the valuation table against the intensive-state axioms: every
/// supplied context must sum to 1, and every orthogonal sub-family whose
/// operator sum matches a pool power must be additive.
IsaReport validate_isa(const PowerGraph& g, const GivTable& table,
                       const std::vector<Context>& contexts, Tolerance tol = {});

}  // namespace qlab

#endif
