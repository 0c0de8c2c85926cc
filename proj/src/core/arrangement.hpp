#ifndef QLAB_CORE_ARRANGEMENT_HPP
#define QLAB_CORE_ARRANGEMENT_HPP

#include <optional>
#include <vector>

#include "core/linalg.hpp"
#include "core/valuation.hpp"

namespace qlab {

/// Split of the lab space into screens: C^{d_0} (x) ... (x) C^{d_{n-1}}.
struct Factorization {
    std::vector<int> factor_dims;

    explicit Factorization(std::vector<int> dims);
    int screens() const { return static_cast<int>(factor_dims.size()); }
    int total_dim() const;
};

/// One orthonormal basis per screen; basis element j of screen s is the
/// detector (s, j).
class DetectorBasis {
public:
    DetectorBasis(const Factorization& f, std::vector<std::vector<Ket>> screens,
                  Tolerance tol = {});
    const std::vector<Ket>& screen(int s) const { return screens_.at(s); }
    int screens() const { return static_cast<int>(screens_.size()); }

    /// Column k of the returned matrix is the product-basis ket with
    /// row-major multi-index k (screen 0 slowest).
    Matrix product_basis_matrix() const;

private:
    std::vector<std::vector<Ket>> screens_;
};

DetectorBasis standard_basis(const Factorization& f);

/// A factorization with detector bases plus the coefficient tensor of the
/// lab state in the resulting product basis. The diagonal carries the
/// potentia of the product-basis powers; the degree of complexity is the
/// cardinality of the product basis.
class ExperimentalArrangement {
public:
    ExperimentalArrangement(Factorization f, DetectorBasis b, Matrix alpha,
                            std::optional<IntensiveState> lab, Tolerance tol = {});

    int degree() const { return static_cast<int>(alpha_.rows()); }
    const Factorization& factorization() const { return fact_; }
    const DetectorBasis& basis() const { return basis_; }
    const Matrix& alpha() const { return alpha_; }
    const std::optional<IntensiveState>& lab() const { return lab_; }

private:
    Factorization fact_;
    DetectorBasis basis_;
    Matrix alpha_;
    std::optional<IntensiveState> lab_;
};

/// alpha(k,k') = <k| rho |k'> over the product basis; degree = lab dim.
ExperimentalArrangement build_arrangement(const IntensiveState& lab,
                                          const Factorization& f,
                                          const DetectorBasis& b,
                                          Tolerance tol = {});

/// Rehydrate an arrangement from its serialized pieces (no lab attached).
ExperimentalArrangement arrangement_from_alpha(const Factorization& f,
                                               const DetectorBasis& b,
                                               Matrix alpha, Tolerance tol = {});

/// Potentia of the product-basis power at the given per-screen detector
/// indices: the diagonal alpha entry.
double power_effect(const ExperimentalArrangement& ea,
                    const std::vector<int>& multi_index);

/// Potentia of an arbitrary power computed from alpha alone:
/// tr(rho P) = tr(alpha W^dagger P W) with W the product-basis matrix.
double arrangement_potentia(const ExperimentalArrangement& ea, const Power& p,
                            Tolerance tol = {});

/// Same arrangement under rotated detectors: basis kets are mapped through
/// the per-screen unitaries and alpha is conjugated accordingly. The degree
/// never changes.
ExperimentalArrangement rebase(const ExperimentalArrangement& ea,
                               const std::vector<Matrix>& per_screen_unitaries,
                               Tolerance tol = {});

/// Lower-degree arrangement over the kept screens; alpha is the partial
/// trace of the original alpha over the discarded screens.
ExperimentalArrangement derive_subarrangement(const ExperimentalArrangement& ea,
                                              const std::vector<int>& keep,
                                              Tolerance tol = {});

struct KnowledgeReport {
    int degree = 0;
    int independent_real_parameters = 0;  // N^2 - 1
    double purity = 0.0;                  // tr(alpha^2)
};

/// What the arrangement pins down: parameter count grows with the degree
/// regardless of purity.
KnowledgeReport arrangement_knowledge(const ExperimentalArrangement& ea);

}  // namespace qlab

#endif
