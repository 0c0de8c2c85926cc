#ifndef QLAB_H
#define QLAB_H

/* qlab - finite-dimensional quantum lab toolkit.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a status
 * code (QLAB_OK on success) and leaves a human-readable message retrievable
 * via qlab_last_error() on failure.
 *
 * Conventions:
 *   - complex scalars cross the boundary as interleaved doubles [re, im]
 *   - matrices are row-major, dim*dim complex entries (2*dim*dim doubles)
 *   - kets are dim complex entries (2*dim doubles)
 *   - tensor factor 0 / screen 0 is the slowest-varying index
 *   - factor, screen, vertex and vector indices are 0-based
 *   - pass tol <= 0 to use the default tolerance 1e-9
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QLAB_API __declspec(dllexport)
#else
#define QLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int qlab_status;

#define QLAB_OK 0
#define QLAB_ERR_INVALID_ARGUMENT 1
#define QLAB_ERR_DIMENSION_MISMATCH 2
#define QLAB_ERR_NOT_NORMALIZED 3
#define QLAB_ERR_NOT_A_PROJECTOR 4
#define QLAB_ERR_NOT_UNITARY 5
#define QLAB_ERR_NOT_A_STATE 6
#define QLAB_ERR_NOT_ORTHONORMAL 7
#define QLAB_ERR_DUPLICATE_POWER 8
#define QLAB_ERR_CAP_EXCEEDED 9
#define QLAB_ERR_OUT_OF_RANGE 10
#define QLAB_ERR_INCOMPLETE 11
#define QLAB_ERR_UNVERIFIED 12
#define QLAB_ERR_INVARIANT 13
#define QLAB_ERR_BAD_FORMAT 14
#define QLAB_ERR_INTERNAL 15

QLAB_API const char* qlab_version(void);
QLAB_API const char* qlab_status_name(qlab_status status);
/* Message of the most recent failure on this thread. */
QLAB_API const char* qlab_last_error(void);
/* Frees strings returned as char** out-params. */
QLAB_API void qlab_string_free(char* text);

/* ---- stateless linear algebra on raw arrays ---- */

/* Rank-1 projector |v><v| from a unit ket; out holds dim*dim entries. */
QLAB_API qlab_status qlab_make_projector(int dim, const double* ket, double tol,
                                         double* out);
/* *out = 1 iff ||pq - qp||_F <= tol. Both inputs must be projectors. */
QLAB_API qlab_status qlab_commutes(int dim, const double* p, const double* q,
                                   double tol, int* out);
/* *out = 1 iff ||p q||_F <= tol. */
QLAB_API qlab_status qlab_orthogonal(int dim, const double* p, const double* q,
                                     double tol, int* out);
/* Kronecker product of nfactors square matrices; out has (prod dims)^2
 * entries. */
QLAB_API qlab_status qlab_tensor(int nfactors, const int* dims,
                                 const double* const* factors, double* out);
/* Trace out the factors not in keep; out has (prod kept dims)^2 entries. */
QLAB_API qlab_status qlab_partial_trace(int nfactors, const int* dims,
                                        const double* op, int nkeep,
                                        const int* keep, double* out);
/* u * op * u^dagger; u must be unitary within tol. */
QLAB_API qlab_status qlab_conjugate(int dim, const double* op, const double* u,
                                    double tol, double* out);
/* Operator on the kept factors extended by identity on the rest, factor
 * order preserved; out has (prod all dims)^2 entries. */
QLAB_API qlab_status qlab_embed_power(int nfactors, const int* dims, int nkeep,
                                      const int* keep, const double* p,
                                      double* out);

/* ---- deterministic random sources ---- */

QLAB_API uint64_t qlab_mix_seed(uint64_t seed, uint64_t a, uint64_t b);
QLAB_API qlab_status qlab_random_ket(int dim, uint64_t seed, double* out);
QLAB_API qlab_status qlab_random_unitary(int dim, uint64_t seed, double* out);

/* ---- intensive states ---- */

typedef struct qlab_state qlab_state;

QLAB_API qlab_status qlab_state_from_ket(int dim, const double* ket, double tol,
                                         qlab_state** out);
QLAB_API qlab_status qlab_state_from_density(int dim, const double* rho,
                                             double tol, qlab_state** out);
/* mixed = 0 draws a pure state, mixed != 0 a full-rank mixed one. */
QLAB_API qlab_status qlab_state_random(int dim, int mixed, uint64_t seed,
                                       qlab_state** out);
QLAB_API int qlab_state_dim(const qlab_state* state);
QLAB_API qlab_status qlab_state_density(const qlab_state* state, double* out);
QLAB_API qlab_status qlab_state_purity(const qlab_state* state, double* out);
/* The intensity tr(rho P) of a projector, clamped to [0,1] within tol. */
QLAB_API qlab_status qlab_state_potentia(const qlab_state* state,
                                         const double* power, double tol,
                                         double* out);
QLAB_API void qlab_state_free(qlab_state* state);

/* ---- power pools ---- */

typedef struct qlab_pool qlab_pool;

QLAB_API qlab_status qlab_pool_new(int dim, qlab_pool** out);
QLAB_API qlab_status qlab_pool_add_ket(qlab_pool* pool, const double* ket,
                                       const char* label, double tol);
QLAB_API qlab_status qlab_pool_add_matrix(qlab_pool* pool, const double* matrix,
                                          const char* label, double tol);
QLAB_API int qlab_pool_size(const qlab_pool* pool);
QLAB_API int qlab_pool_dim(const qlab_pool* pool);
QLAB_API qlab_status qlab_pool_power_matrix(const qlab_pool* pool, int index,
                                            double* out);
/* Returned pointer stays owned by the pool. */
QLAB_API const char* qlab_pool_label(const qlab_pool* pool, int index);
QLAB_API void qlab_pool_free(qlab_pool* pool);

/* ---- power graphs and contexts ---- */

typedef struct qlab_graph qlab_graph;
typedef struct qlab_contexts qlab_contexts;

/* Edge {i,j} iff the powers commute within tol. cap <= 0 uses the default
 * pool cap (4096). Duplicate powers are rejected. */
QLAB_API qlab_status qlab_graph_build(const qlab_pool* pool, double tol, int cap,
                                      qlab_graph** out);
QLAB_API int qlab_graph_vertex_count(const qlab_graph* graph);
QLAB_API int qlab_graph_edge_count(const qlab_graph* graph);
/* out holds 2*edge_count ints: i0,j0,i1,j1,... sorted, i < j. */
QLAB_API qlab_status qlab_graph_edges(const qlab_graph* graph, int* out);
/* format is "dot" or "adjacency-json"; *out is byte-deterministic and must
 * be released with qlab_string_free. */
QLAB_API qlab_status qlab_graph_export(const qlab_graph* graph,
                                       const char* format, char** out);
/* All maximal orthogonal families resolving the identity. */
QLAB_API qlab_status qlab_graph_contexts(const qlab_graph* graph, double tol,
                                         qlab_contexts** out);
QLAB_API void qlab_graph_free(qlab_graph* graph);

QLAB_API int qlab_contexts_count(const qlab_contexts* contexts);
QLAB_API int qlab_contexts_size(const qlab_contexts* contexts, int index);
QLAB_API qlab_status qlab_contexts_members(const qlab_contexts* contexts,
                                           int index, int* out);
QLAB_API void qlab_contexts_free(qlab_contexts* contexts);

/* ---- global intensive valuations ---- */

typedef struct qlab_isa_report qlab_isa_report;

/* Born-rule valuation table: out holds one value per graph vertex. */
QLAB_API qlab_status qlab_giv_values(const qlab_state* state,
                                     const qlab_graph* graph, double tol,
                                     double* out);
/* Checks a valuation table against the intensive-state axioms over the
 * given contexts. */
QLAB_API qlab_status qlab_isa_validate(const qlab_graph* graph,
                                       const qlab_contexts* contexts,
                                       const double* values, int nvalues,
                                       double tol, qlab_isa_report** out);
QLAB_API int qlab_isa_report_pass(const qlab_isa_report* report);
QLAB_API qlab_status qlab_isa_report_max_deviation(const qlab_isa_report* report,
                                                   double* out);
QLAB_API int qlab_isa_report_context_count(const qlab_isa_report* report);
QLAB_API qlab_status qlab_isa_report_context_check(const qlab_isa_report* report,
                                                   int index, double* sum,
                                                   double* deviation, int* pass);
QLAB_API int qlab_isa_report_additivity_count(const qlab_isa_report* report);
/* nmembers reports how many member indices the family has; call
 * qlab_isa_report_additivity_members with a buffer of that size. */
QLAB_API qlab_status qlab_isa_report_additivity_check(
    const qlab_isa_report* report, int index, int* target, double* lhs,
    double* rhs, double* deviation, int* pass, int* nmembers);
QLAB_API qlab_status qlab_isa_report_additivity_members(
    const qlab_isa_report* report, int index, int* out);
QLAB_API void qlab_isa_report_free(qlab_isa_report* report);

/* ---- binary-valuation instances ---- */

typedef struct qlab_instance qlab_instance;
typedef struct qlab_verify_report qlab_verify_report;
typedef struct qlab_search_result qlab_search_result;
typedef struct qlab_certificate qlab_certificate;

QLAB_API qlab_status qlab_instance_new(int dim, qlab_instance** out);
QLAB_API qlab_status qlab_instance_add_vector(qlab_instance* instance,
                                              const double* ket, double tol);
QLAB_API qlab_status qlab_instance_add_context(qlab_instance* instance,
                                               int nmembers, const int* members);
QLAB_API int qlab_instance_dim(const qlab_instance* instance);
QLAB_API int qlab_instance_vector_count(const qlab_instance* instance);
QLAB_API void qlab_instance_free(qlab_instance* instance);

/* Unit norms, per-context orthogonality and completeness, and agreement
 * with the auto-derived maximal contexts. */
QLAB_API qlab_status qlab_instance_verify(const qlab_instance* instance,
                                          double tol, qlab_verify_report** out);
QLAB_API int qlab_verify_pass(const qlab_verify_report* report);
QLAB_API int qlab_verify_violation_count(const qlab_verify_report* report);
/* Returned pointer stays owned by the report. */
QLAB_API const char* qlab_verify_violation(const qlab_verify_report* report,
                                           int index);
QLAB_API int qlab_verify_context_count(const qlab_verify_report* report);
QLAB_API int qlab_verify_context_size(const qlab_verify_report* report,
                                      int index);
QLAB_API qlab_status qlab_verify_context_members(const qlab_verify_report* report,
                                                 int index, int* out);
/* Number of contexts the vector occurs in. */
QLAB_API qlab_status qlab_verify_occurrences(const qlab_verify_report* report,
                                             int* out);
QLAB_API void qlab_verify_report_free(qlab_verify_report* report);

/* Exhaustive backtracking over contexts with orthogonality propagation.
 * When witnesses exist the lexicographically smallest assignment is kept. */
QLAB_API qlab_status qlab_instance_search(const qlab_instance* instance,
                                          double tol, qlab_search_result** out);
QLAB_API int qlab_search_found(const qlab_search_result* result);
/* out holds one 0/1 per instance vector; fails if nothing was found. */
QLAB_API qlab_status qlab_search_assignment(const qlab_search_result* result,
                                            int* out);
QLAB_API uint64_t qlab_search_nodes(const qlab_search_result* result);
QLAB_API double qlab_search_wall_ms(const qlab_search_result* result);
QLAB_API void qlab_search_result_free(qlab_search_result* result);

/* Intensities of the state on every vector projector plus per-context sums:
 * the intensive valuation is consistent on all contexts at once. */
QLAB_API qlab_status qlab_instance_certify(const qlab_instance* instance,
                                           const qlab_state* state, double tol,
                                           qlab_certificate** out);
QLAB_API int qlab_certificate_pass(const qlab_certificate* certificate);
QLAB_API qlab_status qlab_certificate_max_deviation(
    const qlab_certificate* certificate, double* out);
/* out holds one value per instance vector. */
QLAB_API qlab_status qlab_certificate_potentia(const qlab_certificate* certificate,
                                               double* out);
QLAB_API int qlab_certificate_context_count(const qlab_certificate* certificate);
QLAB_API qlab_status qlab_certificate_context_sums(
    const qlab_certificate* certificate, double* out);
QLAB_API void qlab_certificate_free(qlab_certificate* certificate);

/* ---- experimental arrangements ---- */

typedef struct qlab_arrangement qlab_arrangement;

/* bases[s] holds factor_dims[s] kets of dim factor_dims[s] (ket j at offset
 * j*factor_dims[s]*2); pass NULL for the standard bases. */
QLAB_API qlab_status qlab_arrangement_build(const qlab_state* lab, int nscreens,
                                            const int* factor_dims,
                                            const double* const* bases,
                                            double tol, qlab_arrangement** out);
/* Rehydrates an arrangement from serialized pieces; no lab is attached. */
QLAB_API qlab_status qlab_arrangement_from_alpha(int nscreens,
                                                 const int* factor_dims,
                                                 const double* const* bases,
                                                 const double* alpha, double tol,
                                                 qlab_arrangement** out);
QLAB_API int qlab_arrangement_degree(const qlab_arrangement* ea);
QLAB_API int qlab_arrangement_screen_count(const qlab_arrangement* ea);
QLAB_API int qlab_arrangement_factor_dim(const qlab_arrangement* ea, int screen);
QLAB_API qlab_status qlab_arrangement_alpha(const qlab_arrangement* ea,
                                            double* out);
QLAB_API qlab_status qlab_arrangement_basis_ket(const qlab_arrangement* ea,
                                                int screen, int index,
                                                double* out);
QLAB_API int qlab_arrangement_has_lab(const qlab_arrangement* ea);
QLAB_API qlab_status qlab_arrangement_lab_density(const qlab_arrangement* ea,
                                                  double* out);
/* Diagonal alpha entry at the per-screen detector indices. */
QLAB_API qlab_status qlab_arrangement_power_effect(const qlab_arrangement* ea,
                                                   const int* multi_index,
                                                   double* out);
/* Potentia of an arbitrary degree-sized power computed from alpha alone. */
QLAB_API qlab_status qlab_arrangement_potentia(const qlab_arrangement* ea,
                                               const double* power, double tol,
                                               double* out);
/* unitaries[s] is a factor_dims[s] square matrix applied to screen s. */
QLAB_API qlab_status qlab_arrangement_rebase(const qlab_arrangement* ea,
                                             const double* const* unitaries,
                                             double tol, qlab_arrangement** out);
QLAB_API qlab_status qlab_arrangement_subarrangement(const qlab_arrangement* ea,
                                                     int nkeep, const int* keep,
                                                     double tol,
                                                     qlab_arrangement** out);
QLAB_API qlab_status qlab_arrangement_knowledge(const qlab_arrangement* ea,
                                                int* degree, int* parameters,
                                                double* purity);
QLAB_API void qlab_arrangement_free(qlab_arrangement* ea);

/* ---- quantum individuals ---- */

typedef struct qlab_reconstruction qlab_reconstruction;
typedef struct qlab_individual qlab_individual;
typedef struct qlab_contrast qlab_contrast;

/* Informational completeness of the pool together with I. */
QLAB_API qlab_status qlab_completeness_rank(const qlab_pool* pool, int* rank,
                                            int* complete);
/* Least-squares state reconstruction from potentia; clip != 0 projects onto
 * positive semidefinite with trace renormalization. */
QLAB_API qlab_status qlab_reconstruct(const qlab_pool* pool,
                                      const double* potentia, int clip,
                                      double tol, qlab_reconstruction** out);
QLAB_API qlab_status qlab_reconstruction_density(const qlab_reconstruction* rec,
                                                 double* out);
QLAB_API qlab_status qlab_reconstruction_residual(const qlab_reconstruction* rec,
                                                  double* out);
QLAB_API qlab_status qlab_reconstruction_min_eigenvalue(
    const qlab_reconstruction* rec, double* out);
QLAB_API int qlab_reconstruction_consistent(const qlab_reconstruction* rec);
QLAB_API void qlab_reconstruction_free(qlab_reconstruction* rec);

/* Smallest complete subset of the pool; exact subset search up to 24
 * powers, greedy beyond. Pass a state to measure the member potentia. */
QLAB_API qlab_status qlab_find_minimal_individual(const qlab_pool* pool,
                                                  const qlab_state* state,
                                                  double tol,
                                                  qlab_individual** out);
/* Rebuild an individual from serialized parts; potentia may be NULL. */
QLAB_API qlab_status qlab_individual_create(int dim, int count,
                                            const double* powers,
                                            const double* potentia, double tol,
                                            qlab_individual** out);
QLAB_API int qlab_individual_size(const qlab_individual* individual);
QLAB_API int qlab_individual_dim(const qlab_individual* individual);
/* Position in the source pool, or -1 for rebuilt individuals. */
QLAB_API int qlab_individual_member_index(const qlab_individual* individual,
                                          int index);
QLAB_API qlab_status qlab_individual_power_matrix(
    const qlab_individual* individual, int index, double* out);
QLAB_API int qlab_individual_has_potentia(const qlab_individual* individual);
QLAB_API qlab_status qlab_individual_potentia(const qlab_individual* individual,
                                              double* out);
QLAB_API int qlab_individual_complete(const qlab_individual* individual);
QLAB_API int qlab_individual_rank(const qlab_individual* individual);
QLAB_API int qlab_individual_certified(const qlab_individual* individual);
/* Potentia of the target power derived from the individual alone. */
QLAB_API qlab_status qlab_individual_derive(const qlab_individual* individual,
                                            const double* target, double tol,
                                            double* out);
QLAB_API void qlab_individual_free(qlab_individual* individual);

/* Local diagonal powers never determine the joint state; a complete joint
 * individual derives every local and correlation power. */
QLAB_API qlab_status qlab_atomist_contrast(const qlab_state* state,
                                           int dim_per_site, int sites,
                                           double tol, qlab_contrast** out);
QLAB_API qlab_status qlab_contrast_local_rank(const qlab_contrast* contrast,
                                              int* rank, int* complete);
QLAB_API int qlab_contrast_local_count(const qlab_contrast* contrast);
QLAB_API qlab_status qlab_contrast_local_potentia(const qlab_contrast* contrast,
                                                  double* out);
QLAB_API qlab_status qlab_contrast_joint(const qlab_contrast* contrast,
                                         int* rank, int* individual_size);
QLAB_API qlab_status qlab_contrast_sample_target(const qlab_contrast* contrast,
                                                 double* direct, double* derived);
QLAB_API qlab_status qlab_contrast_max_derivation_error(
    const qlab_contrast* contrast, double* out);
QLAB_API void qlab_contrast_free(qlab_contrast* contrast);

#ifdef __cplusplus
}
#endif

#endif /* QLAB_H */
