#include "qlab/qlab.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/arrangement.hpp"
#include "core/contextuality.hpp"
#include "core/graph.hpp"
#include "core/individual.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "core/valuation.hpp"

using qlab::Complex;
using qlab::CVector;
using qlab::Matrix;

namespace {

thread_local std::string g_last_error;

qlab_status status_of(qlab::ErrorCode code) {
    switch (code) {
        case qlab::ErrorCode::InvalidArgument: return QLAB_ERR_INVALID_ARGUMENT;
        case qlab::ErrorCode::DimensionMismatch: return QLAB_ERR_DIMENSION_MISMATCH;
        case qlab::ErrorCode::NotNormalized: return QLAB_ERR_NOT_NORMALIZED;
        case qlab::ErrorCode::NotAProjector: return QLAB_ERR_NOT_A_PROJECTOR;
        case qlab::ErrorCode::NotUnitary: return QLAB_ERR_NOT_UNITARY;
        case qlab::ErrorCode::NotAState: return QLAB_ERR_NOT_A_STATE;
        case qlab::ErrorCode::NotOrthonormal: return QLAB_ERR_NOT_ORTHONORMAL;
        case qlab::ErrorCode::DuplicatePower: return QLAB_ERR_DUPLICATE_POWER;
        case qlab::ErrorCode::CapExceeded: return QLAB_ERR_CAP_EXCEEDED;
        case qlab::ErrorCode::OutOfRange: return QLAB_ERR_OUT_OF_RANGE;
        case qlab::ErrorCode::Incomplete: return QLAB_ERR_INCOMPLETE;
        case qlab::ErrorCode::Unverified: return QLAB_ERR_UNVERIFIED;
        case qlab::ErrorCode::InvariantViolation: return QLAB_ERR_INVARIANT;
        case qlab::ErrorCode::BadFormat: return QLAB_ERR_BAD_FORMAT;
    }
    return QLAB_ERR_INTERNAL;
}

template <typename F>
qlab_status guarded(F&& f) {
    try {
        f();
        return QLAB_OK;
    } catch (const qlab::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QLAB_ERR_INTERNAL;
    }
}

void require(bool cond, const char* what) {
    if (!cond) qlab::fail(qlab::ErrorCode::InvalidArgument, what);
}

qlab::Tolerance tolerance(double tol) {
    if (tol <= 0.0) return {};
    return qlab::Tolerance(tol);
}

Matrix to_matrix(int dim, const double* data) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double* at = data + 2 * (i * dim + j);
            m(i, j) = Complex(at[0], at[1]);
        }
    return m;
}

void from_matrix(const Matrix& m, double* out) {
    int dim = static_cast<int>(m.rows());
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double* at = out + 2 * (i * dim + j);
            at[0] = m(i, j).real();
            at[1] = m(i, j).imag();
        }
}

CVector to_cvector(int dim, const double* data) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(data[2 * i], data[2 * i + 1]);
    return v;
}

void from_cvector(const CVector& v, double* out) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out[2 * i] = v(i).real();
        out[2 * i + 1] = v(i).imag();
    }
}

qlab::DetectorBasis basis_from_arrays(const qlab::Factorization& f,
                                      const double* const* bases,
                                      qlab::Tolerance tol) {
    if (!bases) return qlab::standard_basis(f);
    std::vector<std::vector<qlab::Ket>> screens;
    for (int s = 0; s < f.screens(); ++s) {
        require(bases[s] != nullptr, "detector basis: null screen array");
        int d = f.factor_dims[s];
        std::vector<qlab::Ket> kets;
        for (int j = 0; j < d; ++j)
            kets.emplace_back(to_cvector(d, bases[s] + 2 * j * d), tol);
        screens.push_back(std::move(kets));
    }
    return qlab::DetectorBasis(f, std::move(screens), tol);
}

}  // namespace

struct qlab_state {
    qlab::IntensiveState value;
};
struct qlab_pool {
    int dim;
    std::vector<qlab::Power> powers;
};
struct qlab_graph {
    qlab::PowerGraph value;
};
struct qlab_contexts {
    std::vector<qlab::Context> value;
};
struct qlab_isa_report {
    qlab::IsaReport value;
};
struct qlab_instance {
    qlab::KsInstance value;
};
struct qlab_verify_report {
    qlab::VerifyReport value;
};
struct qlab_search_result {
    qlab::SearchResult value;
};
struct qlab_certificate {
    qlab::CertificateReport value;
};
struct qlab_arrangement {
    qlab::ExperimentalArrangement value;
};
struct qlab_reconstruction {
    qlab::ReconstructionResult value;
};
struct qlab_individual {
    qlab::QuantumIndividual value;
};
struct qlab_contrast {
    qlab::ContrastReport value;
};

extern "C" {

const char* qlab_version(void) { return "0.1.0"; }

const char* qlab_status_name(qlab_status status) {
    switch (status) {
        case QLAB_OK: return "ok";
        case QLAB_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case QLAB_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
        case QLAB_ERR_NOT_NORMALIZED: return "not-normalized";
        case QLAB_ERR_NOT_A_PROJECTOR: return "not-a-projector";
        case QLAB_ERR_NOT_UNITARY: return "not-unitary";
        case QLAB_ERR_NOT_A_STATE: return "not-a-state";
        case QLAB_ERR_NOT_ORTHONORMAL: return "not-orthonormal";
        case QLAB_ERR_DUPLICATE_POWER: return "duplicate-power";
        case QLAB_ERR_CAP_EXCEEDED: return "cap-exceeded";
        case QLAB_ERR_OUT_OF_RANGE: return "out-of-range";
        case QLAB_ERR_INCOMPLETE: return "incomplete";
        case QLAB_ERR_UNVERIFIED: return "unverified";
        case QLAB_ERR_INVARIANT: return "invariant-violation";
        case QLAB_ERR_BAD_FORMAT: return "bad-format";
        case QLAB_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* qlab_last_error(void) { return g_last_error.c_str(); }

void qlab_string_free(char* text) { delete[] text; }

/* ---- stateless linear algebra ---- */

qlab_status qlab_make_projector(int dim, const double* ket, double tol,
                                double* out) {
    return guarded([&] {
        require(dim >= 1 && ket && out, "qlab_make_projector: bad arguments");
        qlab::Power p =
            qlab::make_projector(qlab::Ket(to_cvector(dim, ket), tolerance(tol)));
        from_matrix(p.op(), out);
    });
}

qlab_status qlab_commutes(int dim, const double* p, const double* q, double tol,
                          int* out) {
    return guarded([&] {
        require(dim >= 1 && p && q && out, "qlab_commutes: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Power pp(to_matrix(dim, p), {}, t);
        qlab::Power qq(to_matrix(dim, q), {}, t);
        *out = qlab::commutes(pp, qq, t) ? 1 : 0;
    });
}

qlab_status qlab_orthogonal(int dim, const double* p, const double* q, double tol,
                            int* out) {
    return guarded([&] {
        require(dim >= 1 && p && q && out, "qlab_orthogonal: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Power pp(to_matrix(dim, p), {}, t);
        qlab::Power qq(to_matrix(dim, q), {}, t);
        *out = qlab::orthogonal(pp, qq, t) ? 1 : 0;
    });
}

qlab_status qlab_tensor(int nfactors, const int* dims, const double* const* factors,
                        double* out) {
    return guarded([&] {
        require(nfactors >= 1 && dims && factors && out,
                "qlab_tensor: bad arguments");
        std::vector<Matrix> fs;
        for (int k = 0; k < nfactors; ++k) {
            require(dims[k] >= 1 && factors[k], "qlab_tensor: bad factor");
            fs.push_back(to_matrix(dims[k], factors[k]));
        }
        from_matrix(qlab::tensor(fs), out);
    });
}

qlab_status qlab_partial_trace(int nfactors, const int* dims, const double* op,
                               int nkeep, const int* keep, double* out) {
    return guarded([&] {
        require(nfactors >= 1 && dims && op && nkeep >= 1 && keep && out,
                "qlab_partial_trace: bad arguments");
        std::vector<int> d(dims, dims + nfactors);
        int total = 1;
        for (int x : d) total *= x;
        Matrix m = to_matrix(total, op);
        from_matrix(qlab::partial_trace(m, d, std::vector<int>(keep, keep + nkeep)),
                    out);
    });
}

qlab_status qlab_conjugate(int dim, const double* op, const double* u, double tol,
                           double* out) {
    return guarded([&] {
        require(dim >= 1 && op && u && out, "qlab_conjugate: bad arguments");
        from_matrix(
            qlab::conjugate(to_matrix(dim, op), to_matrix(dim, u), tolerance(tol)),
            out);
    });
}

qlab_status qlab_embed_power(int nfactors, const int* dims, int nkeep,
                             const int* keep, const double* p, double* out) {
    return guarded([&] {
        require(nfactors >= 1 && dims && nkeep >= 1 && keep && p && out,
                "qlab_embed_power: bad arguments");
        std::vector<int> d(dims, dims + nfactors);
        std::vector<int> k(keep, keep + nkeep);
        int kept_dim = 1;
        for (int x : k) {
            require(x >= 0 && x < nfactors, "qlab_embed_power: keep out of range");
            kept_dim *= d[x];
        }
        from_matrix(qlab::embed_on_factors(to_matrix(kept_dim, p), d, k), out);
    });
}

/* ---- deterministic random sources ---- */

uint64_t qlab_mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
    return qlab::mix_seed(seed, a, b);
}

qlab_status qlab_random_ket(int dim, uint64_t seed, double* out) {
    return guarded([&] {
        require(dim >= 1 && out, "qlab_random_ket: bad arguments");
        qlab::Rng rng(seed);
        from_cvector(qlab::random_unit_vector(dim, rng), out);
    });
}

qlab_status qlab_random_unitary(int dim, uint64_t seed, double* out) {
    return guarded([&] {
        require(dim >= 1 && out, "qlab_random_unitary: bad arguments");
        qlab::Rng rng(seed);
        from_matrix(qlab::random_unitary(dim, rng), out);
    });
}

/* ---- intensive states ---- */

qlab_status qlab_state_from_ket(int dim, const double* ket, double tol,
                                qlab_state** out) {
    return guarded([&] {
        require(dim >= 1 && ket && out, "qlab_state_from_ket: bad arguments");
        qlab::Ket v(to_cvector(dim, ket), tolerance(tol));
        Matrix rho = v.amplitudes() * v.amplitudes().adjoint();
        *out = new qlab_state{qlab::IntensiveState(std::move(rho), tolerance(tol))};
    });
}

qlab_status qlab_state_from_density(int dim, const double* rho, double tol,
                                    qlab_state** out) {
    return guarded([&] {
        require(dim >= 1 && rho && out, "qlab_state_from_density: bad arguments");
        *out = new qlab_state{
            qlab::IntensiveState(to_matrix(dim, rho), tolerance(tol))};
    });
}

qlab_status qlab_state_random(int dim, int mixed, uint64_t seed, qlab_state** out) {
    return guarded([&] {
        require(out != nullptr, "qlab_state_random: bad arguments");
        *out = new qlab_state{qlab::random_state(
            dim, mixed ? qlab::StatePurity::Mixed : qlab::StatePurity::Pure, seed)};
    });
}

int qlab_state_dim(const qlab_state* state) {
    return state ? state->value.dim() : -1;
}

qlab_status qlab_state_density(const qlab_state* state, double* out) {
    return guarded([&] {
        require(state && out, "qlab_state_density: bad arguments");
        from_matrix(state->value.rho(), out);
    });
}

qlab_status qlab_state_purity(const qlab_state* state, double* out) {
    return guarded([&] {
        require(state && out, "qlab_state_purity: bad arguments");
        *out = state->value.purity();
    });
}

qlab_status qlab_state_potentia(const qlab_state* state, const double* power,
                                double tol, double* out) {
    return guarded([&] {
        require(state && power && out, "qlab_state_potentia: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Power p(to_matrix(state->value.dim(), power), {}, t);
        *out = qlab::potentia(state->value, p, t);
    });
}

void qlab_state_free(qlab_state* state) { delete state; }

/* ---- power pools ---- */

qlab_status qlab_pool_new(int dim, qlab_pool** out) {
    return guarded([&] {
        require(dim >= 1 && out, "qlab_pool_new: bad arguments");
        *out = new qlab_pool{dim, {}};
    });
}

qlab_status qlab_pool_add_ket(qlab_pool* pool, const double* ket, const char* label,
                              double tol) {
    return guarded([&] {
        require(pool && ket, "qlab_pool_add_ket: bad arguments");
        qlab::Ket v(to_cvector(pool->dim, ket), tolerance(tol));
        pool->powers.push_back(qlab::make_projector(v, label ? label : ""));
    });
}

qlab_status qlab_pool_add_matrix(qlab_pool* pool, const double* matrix,
                                 const char* label, double tol) {
    return guarded([&] {
        require(pool && matrix, "qlab_pool_add_matrix: bad arguments");
        pool->powers.emplace_back(to_matrix(pool->dim, matrix),
                                  label ? label : "", tolerance(tol));
    });
}

int qlab_pool_size(const qlab_pool* pool) {
    return pool ? static_cast<int>(pool->powers.size()) : -1;
}

int qlab_pool_dim(const qlab_pool* pool) { return pool ? pool->dim : -1; }

qlab_status qlab_pool_power_matrix(const qlab_pool* pool, int index, double* out) {
    return guarded([&] {
        require(pool && out, "qlab_pool_power_matrix: bad arguments");
        require(index >= 0 && index < static_cast<int>(pool->powers.size()),
                "qlab_pool_power_matrix: index out of range");
        from_matrix(pool->powers[index].op(), out);
    });
}

const char* qlab_pool_label(const qlab_pool* pool, int index) {
    if (!pool || index < 0 || index >= static_cast<int>(pool->powers.size()))
        return nullptr;
    return pool->powers[index].label().c_str();
}

void qlab_pool_free(qlab_pool* pool) { delete pool; }

/* ---- power graphs ---- */

qlab_status qlab_graph_build(const qlab_pool* pool, double tol, int cap,
                             qlab_graph** out) {
    return guarded([&] {
        require(pool && out, "qlab_graph_build: bad arguments");
        int pool_cap = cap > 0 ? cap : qlab::kDefaultPoolCap;
        *out = new qlab_graph{
            qlab::build_power_graph(pool->powers, tolerance(tol), pool_cap)};
    });
}

int qlab_graph_vertex_count(const qlab_graph* graph) {
    return graph ? static_cast<int>(graph->value.powers.size()) : -1;
}

int qlab_graph_edge_count(const qlab_graph* graph) {
    return graph ? static_cast<int>(graph->value.edges.size()) : -1;
}

qlab_status qlab_graph_edges(const qlab_graph* graph, int* out) {
    return guarded([&] {
        require(graph && out, "qlab_graph_edges: bad arguments");
        int at = 0;
        for (auto [i, j] : graph->value.edges) {
            out[at++] = i;
            out[at++] = j;
        }
    });
}

qlab_status qlab_graph_export(const qlab_graph* graph, const char* format,
                              char** out) {
    return guarded([&] {
        require(graph && format && out, "qlab_graph_export: bad arguments");
        qlab::GraphFormat f;
        if (std::strcmp(format, "dot") == 0)
            f = qlab::GraphFormat::Dot;
        else if (std::strcmp(format, "adjacency-json") == 0)
            f = qlab::GraphFormat::AdjacencyJson;
        else
            qlab::fail(qlab::ErrorCode::BadFormat,
                       std::string("qlab_graph_export: unknown format '") + format +
                           "' (expected dot or adjacency-json)");
        std::string text = qlab::export_graph(graph->value, f);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
    });
}

qlab_status qlab_graph_contexts(const qlab_graph* graph, double tol,
                                qlab_contexts** out) {
    return guarded([&] {
        require(graph && out, "qlab_graph_contexts: bad arguments");
        *out = new qlab_contexts{qlab::enumerate_contexts(graph->value, tolerance(tol))};
    });
}

void qlab_graph_free(qlab_graph* graph) { delete graph; }

int qlab_contexts_count(const qlab_contexts* contexts) {
    return contexts ? static_cast<int>(contexts->value.size()) : -1;
}

int qlab_contexts_size(const qlab_contexts* contexts, int index) {
    if (!contexts || index < 0 || index >= static_cast<int>(contexts->value.size()))
        return -1;
    return static_cast<int>(contexts->value[index].members.size());
}

qlab_status qlab_contexts_members(const qlab_contexts* contexts, int index,
                                  int* out) {
    return guarded([&] {
        require(contexts && out, "qlab_contexts_members: bad arguments");
        require(index >= 0 && index < static_cast<int>(contexts->value.size()),
                "qlab_contexts_members: index out of range");
        const auto& members = contexts->value[index].members;
        std::copy(members.begin(), members.end(), out);
    });
}

void qlab_contexts_free(qlab_contexts* contexts) { delete contexts; }

/* ---- global intensive valuations ---- */

qlab_status qlab_giv_values(const qlab_state* state, const qlab_graph* graph,
                            double tol, double* out) {
    return guarded([&] {
        require(state && graph && out, "qlab_giv_values: bad arguments");
        qlab::GivTable table =
            qlab::make_giv(state->value, graph->value, tolerance(tol));
        std::copy(table.values.begin(), table.values.end(), out);
    });
}

qlab_status qlab_isa_validate(const qlab_graph* graph, const qlab_contexts* contexts,
                              const double* values, int nvalues, double tol,
                              qlab_isa_report** out) {
    return guarded([&] {
        require(graph && contexts && values && out,
                "qlab_isa_validate: bad arguments");
        require(nvalues == static_cast<int>(graph->value.powers.size()),
                "qlab_isa_validate: one value per graph vertex required");
        qlab::GivTable table{std::vector<double>(values, values + nvalues)};
        *out = new qlab_isa_report{qlab::validate_isa(graph->value, table,
                                                      contexts->value, tolerance(tol))};
    });
}

int qlab_isa_report_pass(const qlab_isa_report* report) {
    return report ? (report->value.pass ? 1 : 0) : -1;
}

qlab_status qlab_isa_report_max_deviation(const qlab_isa_report* report,
                                          double* out) {
    return guarded([&] {
        require(report && out, "qlab_isa_report_max_deviation: bad arguments");
        *out = report->value.max_deviation;
    });
}

int qlab_isa_report_context_count(const qlab_isa_report* report) {
    return report ? static_cast<int>(report->value.context_checks.size()) : -1;
}

qlab_status qlab_isa_report_context_check(const qlab_isa_report* report, int index,
                                          double* sum, double* deviation,
                                          int* pass) {
    return guarded([&] {
        require(report && sum && deviation && pass,
                "qlab_isa_report_context_check: bad arguments");
        require(index >= 0 &&
                    index < static_cast<int>(report->value.context_checks.size()),
                "qlab_isa_report_context_check: index out of range");
        const auto& check = report->value.context_checks[index];
        *sum = check.sum;
        *deviation = check.deviation;
        *pass = check.pass ? 1 : 0;
    });
}

int qlab_isa_report_additivity_count(const qlab_isa_report* report) {
    return report ? static_cast<int>(report->value.additivity_checks.size()) : -1;
}

qlab_status qlab_isa_report_additivity_check(const qlab_isa_report* report,
                                             int index, int* target, double* lhs,
                                             double* rhs, double* deviation,
                                             int* pass, int* nmembers) {
    return guarded([&] {
        require(report && target && lhs && rhs && deviation && pass && nmembers,
                "qlab_isa_report_additivity_check: bad arguments");
        require(index >= 0 &&
                    index < static_cast<int>(report->value.additivity_checks.size()),
                "qlab_isa_report_additivity_check: index out of range");
        const auto& check = report->value.additivity_checks[index];
        *target = check.target;
        *lhs = check.lhs;
        *rhs = check.rhs;
        *deviation = check.deviation;
        *pass = check.pass ? 1 : 0;
        *nmembers = static_cast<int>(check.members.size());
    });
}

qlab_status qlab_isa_report_additivity_members(const qlab_isa_report* report,
                                               int index, int* out) {
    return guarded([&] {
        require(report && out, "qlab_isa_report_additivity_members: bad arguments");
        require(index >= 0 &&
                    index < static_cast<int>(report->value.additivity_checks.size()),
                "qlab_isa_report_additivity_members: index out of range");
        const auto& members = report->value.additivity_checks[index].members;
        std::copy(members.begin(), members.end(), out);
    });
}

void qlab_isa_report_free(qlab_isa_report* report) { delete report; }

/* ---- binary-valuation instances ---- */

qlab_status qlab_instance_new(int dim, qlab_instance** out) {
    return guarded([&] {
        require(dim >= 1 && out, "qlab_instance_new: bad arguments");
        qlab::KsInstance inst;
        inst.dim = dim;
        *out = new qlab_instance{std::move(inst)};
    });
}

qlab_status qlab_instance_add_vector(qlab_instance* instance, const double* ket,
                                     double tol) {
    return guarded([&] {
        require(instance && ket, "qlab_instance_add_vector: bad arguments");
        instance->value.vectors.emplace_back(to_cvector(instance->value.dim, ket),
                                             tolerance(tol));
    });
}

qlab_status qlab_instance_add_context(qlab_instance* instance, int nmembers,
                                      const int* members) {
    return guarded([&] {
        require(instance && nmembers >= 1 && members,
                "qlab_instance_add_context: bad arguments");
        instance->value.contexts.push_back(
            qlab::Context{std::vector<int>(members, members + nmembers)});
    });
}

int qlab_instance_dim(const qlab_instance* instance) {
    return instance ? instance->value.dim : -1;
}

int qlab_instance_vector_count(const qlab_instance* instance) {
    return instance ? static_cast<int>(instance->value.vectors.size()) : -1;
}

void qlab_instance_free(qlab_instance* instance) { delete instance; }

qlab_status qlab_instance_verify(const qlab_instance* instance, double tol,
                                 qlab_verify_report** out) {
    return guarded([&] {
        require(instance && out, "qlab_instance_verify: bad arguments");
        *out = new qlab_verify_report{
            qlab::verify_instance(instance->value, tolerance(tol))};
    });
}

int qlab_verify_pass(const qlab_verify_report* report) {
    return report ? (report->value.pass ? 1 : 0) : -1;
}

int qlab_verify_violation_count(const qlab_verify_report* report) {
    return report ? static_cast<int>(report->value.violations.size()) : -1;
}

const char* qlab_verify_violation(const qlab_verify_report* report, int index) {
    if (!report || index < 0 ||
        index >= static_cast<int>(report->value.violations.size()))
        return nullptr;
    return report->value.violations[index].c_str();
}

int qlab_verify_context_count(const qlab_verify_report* report) {
    return report ? static_cast<int>(report->value.effective_contexts.size()) : -1;
}

int qlab_verify_context_size(const qlab_verify_report* report, int index) {
    if (!report || index < 0 ||
        index >= static_cast<int>(report->value.effective_contexts.size()))
        return -1;
    return static_cast<int>(report->value.effective_contexts[index].members.size());
}

qlab_status qlab_verify_context_members(const qlab_verify_report* report, int index,
                                        int* out) {
    return guarded([&] {
        require(report && out, "qlab_verify_context_members: bad arguments");
        require(index >= 0 &&
                    index <
                        static_cast<int>(report->value.effective_contexts.size()),
                "qlab_verify_context_members: index out of range");
        const auto& members = report->value.effective_contexts[index].members;
        std::copy(members.begin(), members.end(), out);
    });
}

qlab_status qlab_verify_occurrences(const qlab_verify_report* report, int* out) {
    return guarded([&] {
        require(report && out, "qlab_verify_occurrences: bad arguments");
        std::copy(report->value.occurrences.begin(),
                  report->value.occurrences.end(), out);
    });
}

void qlab_verify_report_free(qlab_verify_report* report) { delete report; }

qlab_status qlab_instance_search(const qlab_instance* instance, double tol,
                                 qlab_search_result** out) {
    return guarded([&] {
        require(instance && out, "qlab_instance_search: bad arguments");
        *out = new qlab_search_result{
            qlab::search_binary_valuation(instance->value, tolerance(tol))};
    });
}

int qlab_search_found(const qlab_search_result* result) {
    return result ? (result->value.valuation.has_value() ? 1 : 0) : -1;
}

qlab_status qlab_search_assignment(const qlab_search_result* result, int* out) {
    return guarded([&] {
        require(result && out, "qlab_search_assignment: bad arguments");
        if (!result->value.valuation)
            qlab::fail(qlab::ErrorCode::InvalidArgument,
                       "qlab_search_assignment: no valuation was found");
        const auto& a = result->value.valuation->assignment;
        std::copy(a.begin(), a.end(), out);
    });
}

uint64_t qlab_search_nodes(const qlab_search_result* result) {
    return result ? result->value.stats.nodes : 0;
}

double qlab_search_wall_ms(const qlab_search_result* result) {
    return result ? result->value.stats.wall_ms : 0.0;
}

void qlab_search_result_free(qlab_search_result* result) { delete result; }

qlab_status qlab_instance_certify(const qlab_instance* instance,
                                  const qlab_state* state, double tol,
                                  qlab_certificate** out) {
    return guarded([&] {
        require(instance && state && out, "qlab_instance_certify: bad arguments");
        *out = new qlab_certificate{qlab::intensive_certificate(
            state->value, instance->value, tolerance(tol))};
    });
}

int qlab_certificate_pass(const qlab_certificate* certificate) {
    return certificate ? (certificate->value.pass ? 1 : 0) : -1;
}

qlab_status qlab_certificate_max_deviation(const qlab_certificate* certificate,
                                           double* out) {
    return guarded([&] {
        require(certificate && out, "qlab_certificate_max_deviation: bad arguments");
        *out = certificate->value.max_deviation;
    });
}

qlab_status qlab_certificate_potentia(const qlab_certificate* certificate,
                                      double* out) {
    return guarded([&] {
        require(certificate && out, "qlab_certificate_potentia: bad arguments");
        std::copy(certificate->value.potentia.begin(),
                  certificate->value.potentia.end(), out);
    });
}

int qlab_certificate_context_count(const qlab_certificate* certificate) {
    return certificate ? static_cast<int>(certificate->value.context_sums.size())
                       : -1;
}

qlab_status qlab_certificate_context_sums(const qlab_certificate* certificate,
                                          double* out) {
    return guarded([&] {
        require(certificate && out, "qlab_certificate_context_sums: bad arguments");
        std::copy(certificate->value.context_sums.begin(),
                  certificate->value.context_sums.end(), out);
    });
}

void qlab_certificate_free(qlab_certificate* certificate) { delete certificate; }

/* ---- experimental arrangements ---- */

qlab_status qlab_arrangement_build(const qlab_state* lab, int nscreens,
                                   const int* factor_dims,
                                   const double* const* bases, double tol,
                                   qlab_arrangement** out) {
    return guarded([&] {
        require(lab && nscreens >= 1 && factor_dims && out,
                "qlab_arrangement_build: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Factorization f(std::vector<int>(factor_dims, factor_dims + nscreens));
        qlab::DetectorBasis b = basis_from_arrays(f, bases, t);
        *out = new qlab_arrangement{qlab::build_arrangement(lab->value, f, b, t)};
    });
}

qlab_status qlab_arrangement_from_alpha(int nscreens, const int* factor_dims,
                                        const double* const* bases,
                                        const double* alpha, double tol,
                                        qlab_arrangement** out) {
    return guarded([&] {
        require(nscreens >= 1 && factor_dims && alpha && out,
                "qlab_arrangement_from_alpha: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Factorization f(std::vector<int>(factor_dims, factor_dims + nscreens));
        qlab::DetectorBasis b = basis_from_arrays(f, bases, t);
        *out = new qlab_arrangement{qlab::arrangement_from_alpha(
            f, b, to_matrix(f.total_dim(), alpha), t)};
    });
}

int qlab_arrangement_degree(const qlab_arrangement* ea) {
    return ea ? ea->value.degree() : -1;
}

int qlab_arrangement_screen_count(const qlab_arrangement* ea) {
    return ea ? ea->value.factorization().screens() : -1;
}

int qlab_arrangement_factor_dim(const qlab_arrangement* ea, int screen) {
    if (!ea || screen < 0 || screen >= ea->value.factorization().screens())
        return -1;
    return ea->value.factorization().factor_dims[screen];
}

qlab_status qlab_arrangement_alpha(const qlab_arrangement* ea, double* out) {
    return guarded([&] {
        require(ea && out, "qlab_arrangement_alpha: bad arguments");
        from_matrix(ea->value.alpha(), out);
    });
}

qlab_status qlab_arrangement_basis_ket(const qlab_arrangement* ea, int screen,
                                       int index, double* out) {
    return guarded([&] {
        require(ea && out, "qlab_arrangement_basis_ket: bad arguments");
        const auto& f = ea->value.factorization();
        require(screen >= 0 && screen < f.screens(),
                "qlab_arrangement_basis_ket: screen out of range");
        require(index >= 0 && index < f.factor_dims[screen],
                "qlab_arrangement_basis_ket: detector index out of range");
        from_cvector(ea->value.basis().screen(screen)[index].amplitudes(), out);
    });
}

int qlab_arrangement_has_lab(const qlab_arrangement* ea) {
    return ea ? (ea->value.lab().has_value() ? 1 : 0) : -1;
}

qlab_status qlab_arrangement_lab_density(const qlab_arrangement* ea, double* out) {
    return guarded([&] {
        require(ea && out, "qlab_arrangement_lab_density: bad arguments");
        if (!ea->value.lab())
            qlab::fail(qlab::ErrorCode::InvalidArgument,
                       "qlab_arrangement_lab_density: arrangement carries no lab");
        from_matrix(ea->value.lab()->rho(), out);
    });
}

qlab_status qlab_arrangement_power_effect(const qlab_arrangement* ea,
                                          const int* multi_index, double* out) {
    return guarded([&] {
        require(ea && multi_index && out,
                "qlab_arrangement_power_effect: bad arguments");
        std::vector<int> idx(multi_index,
                             multi_index + ea->value.factorization().screens());
        *out = qlab::power_effect(ea->value, idx);
    });
}

qlab_status qlab_arrangement_potentia(const qlab_arrangement* ea,
                                      const double* power, double tol,
                                      double* out) {
    return guarded([&] {
        require(ea && power && out, "qlab_arrangement_potentia: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Power p(to_matrix(ea->value.degree(), power), {}, t);
        *out = qlab::arrangement_potentia(ea->value, p, t);
    });
}

qlab_status qlab_arrangement_rebase(const qlab_arrangement* ea,
                                    const double* const* unitaries, double tol,
                                    qlab_arrangement** out) {
    return guarded([&] {
        require(ea && unitaries && out, "qlab_arrangement_rebase: bad arguments");
        const auto& f = ea->value.factorization();
        std::vector<Matrix> us;
        for (int s = 0; s < f.screens(); ++s) {
            require(unitaries[s] != nullptr,
                    "qlab_arrangement_rebase: null unitary");
            us.push_back(to_matrix(f.factor_dims[s], unitaries[s]));
        }
        *out = new qlab_arrangement{qlab::rebase(ea->value, us, tolerance(tol))};
    });
}

qlab_status qlab_arrangement_subarrangement(const qlab_arrangement* ea, int nkeep,
                                            const int* keep, double tol,
                                            qlab_arrangement** out) {
    return guarded([&] {
        require(ea && nkeep >= 1 && keep && out,
                "qlab_arrangement_subarrangement: bad arguments");
        *out = new qlab_arrangement{qlab::derive_subarrangement(
            ea->value, std::vector<int>(keep, keep + nkeep), tolerance(tol))};
    });
}

qlab_status qlab_arrangement_knowledge(const qlab_arrangement* ea, int* degree,
                                       int* parameters, double* purity) {
    return guarded([&] {
        require(ea && degree && parameters && purity,
                "qlab_arrangement_knowledge: bad arguments");
        qlab::KnowledgeReport report = qlab::arrangement_knowledge(ea->value);
        *degree = report.degree;
        *parameters = report.independent_real_parameters;
        *purity = report.purity;
    });
}

void qlab_arrangement_free(qlab_arrangement* ea) { delete ea; }

/* ---- quantum individuals ---- */

qlab_status qlab_completeness_rank(const qlab_pool* pool, int* rank, int* complete) {
    return guarded([&] {
        require(pool && rank && complete, "qlab_completeness_rank: bad arguments");
        qlab::RankResult result =
            qlab::completeness_rank(pool->powers, pool->dim);
        *rank = result.rank;
        *complete = result.complete ? 1 : 0;
    });
}

qlab_status qlab_reconstruct(const qlab_pool* pool, const double* potentia,
                             int clip, double tol, qlab_reconstruction** out) {
    return guarded([&] {
        require(pool && potentia && out, "qlab_reconstruct: bad arguments");
        std::vector<double> values(potentia, potentia + pool->powers.size());
        *out = new qlab_reconstruction{qlab::reconstruct(
            pool->powers, values, pool->dim, clip != 0, tolerance(tol))};
    });
}

qlab_status qlab_reconstruction_density(const qlab_reconstruction* rec,
                                        double* out) {
    return guarded([&] {
        require(rec && out, "qlab_reconstruction_density: bad arguments");
        from_matrix(rec->value.rho_hat, out);
    });
}

qlab_status qlab_reconstruction_residual(const qlab_reconstruction* rec,
                                         double* out) {
    return guarded([&] {
        require(rec && out, "qlab_reconstruction_residual: bad arguments");
        *out = rec->value.residual;
    });
}

qlab_status qlab_reconstruction_min_eigenvalue(const qlab_reconstruction* rec,
                                               double* out) {
    return guarded([&] {
        require(rec && out, "qlab_reconstruction_min_eigenvalue: bad arguments");
        *out = rec->value.min_eigenvalue;
    });
}

int qlab_reconstruction_consistent(const qlab_reconstruction* rec) {
    return rec ? (rec->value.consistent ? 1 : 0) : -1;
}

void qlab_reconstruction_free(qlab_reconstruction* rec) { delete rec; }

qlab_status qlab_find_minimal_individual(const qlab_pool* pool,
                                         const qlab_state* state, double tol,
                                         qlab_individual** out) {
    return guarded([&] {
        require(pool && out, "qlab_find_minimal_individual: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::QuantumIndividual ind =
            qlab::find_minimal_individual(pool->powers, pool->dim, t);
        if (state) ind = qlab::measure_individual(std::move(ind), state->value, t);
        *out = new qlab_individual{std::move(ind)};
    });
}

qlab_status qlab_individual_create(int dim, int count, const double* powers,
                                   const double* potentia, double tol,
                                   qlab_individual** out) {
    return guarded([&] {
        require(dim >= 1 && count >= 1 && powers && out,
                "qlab_individual_create: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::QuantumIndividual ind;
        ind.dim = dim;
        for (int i = 0; i < count; ++i) {
            ind.powers.emplace_back(to_matrix(dim, powers + 2 * i * dim * dim),
                                    "", t);
            ind.member_indices.push_back(-1);
        }
        if (potentia) {
            for (int i = 0; i < count; ++i) {
                double v = potentia[i];
                if (!(v >= 0.0 && v <= 1.0))
                    qlab::fail(qlab::ErrorCode::InvariantViolation,
                               "qlab_individual_create: potentia " +
                                   std::to_string(v) + " outside [0,1]");
                ind.potentia.push_back(v);
            }
        }
        qlab::RankResult rank = qlab::completeness_rank(ind.powers, dim, t);
        ind.rank = rank.rank;
        ind.complete = rank.complete;
        ind.certified_minimal = false;
        *out = new qlab_individual{std::move(ind)};
    });
}

int qlab_individual_size(const qlab_individual* individual) {
    return individual ? static_cast<int>(individual->value.powers.size()) : -1;
}

int qlab_individual_dim(const qlab_individual* individual) {
    return individual ? individual->value.dim : -1;
}

int qlab_individual_member_index(const qlab_individual* individual, int index) {
    if (!individual || index < 0 ||
        index >= static_cast<int>(individual->value.member_indices.size()))
        return -1;
    return individual->value.member_indices[index];
}

qlab_status qlab_individual_power_matrix(const qlab_individual* individual,
                                         int index, double* out) {
    return guarded([&] {
        require(individual && out, "qlab_individual_power_matrix: bad arguments");
        require(index >= 0 &&
                    index < static_cast<int>(individual->value.powers.size()),
                "qlab_individual_power_matrix: index out of range");
        from_matrix(individual->value.powers[index].op(), out);
    });
}

int qlab_individual_has_potentia(const qlab_individual* individual) {
    if (!individual) return -1;
    return individual->value.potentia.size() == individual->value.powers.size() &&
                   !individual->value.powers.empty()
               ? 1
               : 0;
}

qlab_status qlab_individual_potentia(const qlab_individual* individual,
                                     double* out) {
    return guarded([&] {
        require(individual && out, "qlab_individual_potentia: bad arguments");
        if (individual->value.potentia.empty())
            qlab::fail(qlab::ErrorCode::InvalidArgument,
                       "qlab_individual_potentia: individual has no measured "
                       "potentia");
        std::copy(individual->value.potentia.begin(),
                  individual->value.potentia.end(), out);
    });
}

int qlab_individual_complete(const qlab_individual* individual) {
    return individual ? (individual->value.complete ? 1 : 0) : -1;
}

int qlab_individual_rank(const qlab_individual* individual) {
    return individual ? individual->value.rank : -1;
}

int qlab_individual_certified(const qlab_individual* individual) {
    return individual ? (individual->value.certified_minimal ? 1 : 0) : -1;
}

qlab_status qlab_individual_derive(const qlab_individual* individual,
                                   const double* target, double tol, double* out) {
    return guarded([&] {
        require(individual && target && out,
                "qlab_individual_derive: bad arguments");
        qlab::Tolerance t = tolerance(tol);
        qlab::Power p(to_matrix(individual->value.dim, target), {}, t);
        *out = qlab::derive_potentia(individual->value, p, t);
    });
}

void qlab_individual_free(qlab_individual* individual) { delete individual; }

qlab_status qlab_atomist_contrast(const qlab_state* state, int dim_per_site,
                                  int sites, double tol, qlab_contrast** out) {
    return guarded([&] {
        require(state && out, "qlab_atomist_contrast: bad arguments");
        *out = new qlab_contrast{qlab::atomist_contrast(dim_per_site, sites,
                                                        state->value, tolerance(tol))};
    });
}

qlab_status qlab_contrast_local_rank(const qlab_contrast* contrast, int* rank,
                                     int* complete) {
    return guarded([&] {
        require(contrast && rank && complete,
                "qlab_contrast_local_rank: bad arguments");
        *rank = contrast->value.local_rank;
        *complete = contrast->value.local_complete ? 1 : 0;
    });
}

int qlab_contrast_local_count(const qlab_contrast* contrast) {
    return contrast ? static_cast<int>(contrast->value.local_potentia.size()) : -1;
}

qlab_status qlab_contrast_local_potentia(const qlab_contrast* contrast,
                                         double* out) {
    return guarded([&] {
        require(contrast && out, "qlab_contrast_local_potentia: bad arguments");
        std::copy(contrast->value.local_potentia.begin(),
                  contrast->value.local_potentia.end(), out);
    });
}

qlab_status qlab_contrast_joint(const qlab_contrast* contrast, int* rank,
                                int* individual_size) {
    return guarded([&] {
        require(contrast && rank && individual_size,
                "qlab_contrast_joint: bad arguments");
        *rank = contrast->value.joint_rank;
        *individual_size = contrast->value.joint_individual_size;
    });
}

qlab_status qlab_contrast_sample_target(const qlab_contrast* contrast,
                                        double* direct, double* derived) {
    return guarded([&] {
        require(contrast && direct && derived,
                "qlab_contrast_sample_target: bad arguments");
        *direct = contrast->value.sample_target_direct;
        *derived = contrast->value.sample_target_derived;
    });
}

qlab_status qlab_contrast_max_derivation_error(const qlab_contrast* contrast,
                                               double* out) {
    return guarded([&] {
        require(contrast && out, "qlab_contrast_max_derivation_error: bad arguments");
        *out = contrast->value.max_derivation_error;
    });
}

void qlab_contrast_free(qlab_contrast* contrast) { delete contrast; }

}  // extern "C"
