#ifndef QLAB_CORE_CONTEXTUALITY_HPP
#define QLAB_CORE_CONTEXTUALITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/linalg.hpp"
#include "core/valuation.hpp"

namespace qlab {

/// A family of rank-1 power directions with its resolutions of the
/// identity; the raw material for a binary-valuation search.
struct KsInstance {
    int dim = 0;
    std::vector<Ket> vectors;
    std::vector<Context> contexts;  // optional on input; indices into vectors
};

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> violations;
    std::vector<Context> derived_contexts;  // auto-derived maximal contexts
    std::vector<Context> effective_contexts;  // supplied if given, else derived
    std::vector<int> occurrences;  // per vector: number of contexts it sits in
};

/// Data hygiene: unit norms, per-context orthogonality and completeness,
/// and agreement between supplied and auto-derived contexts.
VerifyReport verify_instance(const KsInstance& inst, Tolerance tol = {});

/// A {0,1} assignment: exactly one 1 per context, no two orthogonal
/// vectors both 1.
struct BinaryValuation {
    std::vector<int> assignment;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    double wall_ms = 0.0;
};

struct SearchResult {
    std::optional<BinaryValuation> valuation;  // lexicographically smallest
    SearchStats stats;
};

/// Exhaustive backtracking with orthogonality propagation over contexts.
/// When witnesses exist, returns the one whose sorted list of 1-assigned
/// indices is lexicographically smallest. Throws if the instance fails
/// verification.
SearchResult search_binary_valuation(const KsInstance& inst, Tolerance tol = {});

struct CertificateReport {
    bool pass = true;
    double max_deviation = 0.0;
    std::vector<double> potentia;      // per vector
    std::vector<double> context_sums;  // per effective context
};

/// Evaluates the state's intensities on every vector projector and
/// certifies that each context sums to 1 within tol: the same global
/// intensive valuation is consistent on all contexts simultaneously.
CertificateReport intensive_certificate(const IntensiveState& state,
                                        const KsInstance& inst,
                                        Tolerance tol = {});

}  // namespace qlab

#endif
