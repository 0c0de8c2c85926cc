#ifndef QLAB_TEST_HELPERS_HPP
#define QLAB_TEST_HELPERS_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/contextuality.hpp"
#include "core/linalg.hpp"
#include "core/valuation.hpp"

#include <nlohmann/json.hpp>

namespace qt {

inline double max_diff(const qlab::Matrix& a, const qlab::Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline qlab::Matrix hadamard() {
    qlab::Matrix h(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

inline qlab::Ket singlet_ket() {
    qlab::CVector v(4);
    double s = 1.0 / std::sqrt(2.0);
    v << 0.0, s, -s, 0.0;
    return qlab::Ket(v);
}

inline qlab::IntensiveState singlet_state() {
    auto v = singlet_ket().amplitudes();
    return qlab::IntensiveState(v * v.adjoint());
}

inline std::string data_path(const std::string& name) {
    return std::string(QLAB_DATA_DIR) + "/" + name;
}

/// Loads a KS instance JSON file (vectors as [re,im] pairs, optional
/// contexts) without going through the library's own parsing code.
inline qlab::KsInstance load_ks_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    qlab::KsInstance inst;
    inst.dim = j.at("dim").get<int>();
    for (const auto& vec : j.at("vectors")) {
        qlab::CVector v(inst.dim);
        for (int i = 0; i < inst.dim; ++i)
            v(i) = qlab::Complex(vec.at(i).at(0).get<double>(),
                                 vec.at(i).at(1).get<double>());
        inst.vectors.emplace_back(std::move(v));
    }
    if (j.contains("contexts"))
        for (const auto& ctx : j.at("contexts"))
            inst.contexts.push_back(qlab::Context{ctx.get<std::vector<int>>()});
    return inst;
}

/// Six spin projectors +z,-z,+x,-x,+y,-y on C^2.
inline std::vector<qlab::Power> spin_pool() {
    using qlab::Complex;
    using qlab::CVector;
    double s = 1.0 / std::sqrt(2.0);
    auto ket = [](Complex a, Complex b) {
        CVector v(2);
        v << a, b;
        return qlab::Ket(v);
    };
    return {
        qlab::make_projector(ket(1, 0), "z+"),
        qlab::make_projector(ket(0, 1), "z-"),
        qlab::make_projector(ket(s, s), "x+"),
        qlab::make_projector(ket(s, -s), "x-"),
        qlab::make_projector(ket(s, Complex(0, s)), "y+"),
        qlab::make_projector(ket(s, Complex(0, -s)), "y-"),
    };
}

}  // namespace qt

#endif
