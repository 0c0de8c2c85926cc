#include "core/contextuality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace qlab {

namespace {

std::vector<Power> instance_powers(const KsInstance& inst) {
    std::vector<Power> powers;
    powers.reserve(inst.vectors.size());
    for (std::size_t i = 0; i < inst.vectors.size(); ++i)
        powers.push_back(make_projector(inst.vectors[i], "v" + std::to_string(i)));
    return powers;
}

Context canonical(const Context& c) {
    Context out = c;
    std::sort(out.members.begin(), out.members.end());
    return out;
}

}  // namespace

VerifyReport verify_instance(const KsInstance& inst, Tolerance tol) {
    VerifyReport report;
    auto violate = [&report](const std::string& msg) {
        report.pass = false;
        report.violations.push_back(msg);
    };

    if (inst.dim < 2) violate("dim must be >= 2");
    if (inst.vectors.empty()) violate("instance has no vectors");
    int n = static_cast<int>(inst.vectors.size());
    for (int i = 0; i < n; ++i) {
        if (inst.vectors[i].dim() != inst.dim) {
            violate("vector " + std::to_string(i) + " has dim " +
                    std::to_string(inst.vectors[i].dim()) + ", expected " +
                    std::to_string(inst.dim));
            continue;
        }
        double norm = inst.vectors[i].amplitudes().norm();
        if (std::abs(norm - 1.0) > tol.eps)
            violate("vector " + std::to_string(i) + " has norm " +
                    std::to_string(norm));
    }
    if (!report.pass) return report;

    PowerGraph graph;
    try {
        graph = build_power_graph(instance_powers(inst), tol);
    } catch (const Error& e) {
        violate(std::string("power pool rejected: ") + e.what());
        return report;
    }
    report.derived_contexts = enumerate_contexts(graph, tol);

    if (!inst.contexts.empty()) {
        std::vector<Context> supplied;
        supplied.reserve(inst.contexts.size());
        for (std::size_t c = 0; c < inst.contexts.size(); ++c) {
            const auto& members = inst.contexts[c].members;
            if (static_cast<int>(members.size()) != inst.dim)
                violate("context " + std::to_string(c) + " has " +
                        std::to_string(members.size()) + " members, expected " +
                        std::to_string(inst.dim) + " (incomplete resolution)");
            Matrix sum = Matrix::Zero(inst.dim, inst.dim);
            bool indices_ok = true;
            for (int m : members) {
                if (m < 0 || m >= n) {
                    violate("context " + std::to_string(c) + " member " +
                            std::to_string(m) + " out of range");
                    indices_ok = false;
                    break;
                }
                sum += graph.powers[m].op();
            }
            if (!indices_ok) continue;
            for (std::size_t a = 0; a < members.size(); ++a)
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    if (!orthogonal(graph.powers[members[a]],
                                    graph.powers[members[b]], tol))
                        violate("context " + std::to_string(c) + " members " +
                                std::to_string(members[a]) + " and " +
                                std::to_string(members[b]) + " not orthogonal");
            double dev = (sum - identity(inst.dim)).norm();
            if (dev > tol.eps)
                violate("context " + std::to_string(c) +
                        " does not resolve the identity, ||sum - I||_F = " +
                        std::to_string(dev));
            supplied.push_back(canonical(inst.contexts[c]));
        }
        std::sort(supplied.begin(), supplied.end());
        if (report.pass && supplied != report.derived_contexts)
            violate("supplied contexts do not match the auto-derived maximal "
                    "contexts (" +
                    std::to_string(supplied.size()) + " supplied, " +
                    std::to_string(report.derived_contexts.size()) + " derived)");
        report.effective_contexts = std::move(supplied);
    } else {
        report.effective_contexts = report.derived_contexts;
    }

    report.occurrences.assign(n, 0);
    for (const Context& c : report.effective_contexts)
        for (int m : c.members) ++report.occurrences[m];
    return report;
}

namespace {

struct ValuationSearch {
    int n = 0;
    std::vector<Context> contexts;
    std::vector<std::vector<bool>> orth;
    std::vector<std::vector<int>> vector_contexts;  // contexts touching a vector

    // mutable search state
    std::vector<signed char> value;  // -1 unknown, 0, 1
    std::vector<int> candidates;     // per context: members not excluded
    std::vector<bool> satisfied;     // per context: has a 1

    std::uint64_t nodes = 0;
    std::optional<std::vector<int>> best;  // sorted 1-indices, lex smallest

    bool assign_one(int v);
    bool assign_zero(int v);
    void search();
    void record();
};

bool ValuationSearch::assign_one(int v) {
    if (value[v] == 0) return false;
    if (value[v] == 1) return true;
    value[v] = 1;
    for (int c : vector_contexts[v]) satisfied[c] = true;
    for (int u = 0; u < n; ++u)
        if (u != v && orth[v][u] && !assign_zero(u)) return false;
    return true;
}

bool ValuationSearch::assign_zero(int v) {
    if (value[v] == 1) return false;
    if (value[v] == 0) return true;
    value[v] = 0;
    for (int c : vector_contexts[v]) {
        if (--candidates[c] == 0 && !satisfied[c]) return false;
        if (candidates[c] == 1 && !satisfied[c]) {
            // unit propagation: the last open member must carry the 1
            int forced = -1;
            for (int m : contexts[c].members)
                if (value[m] == -1) forced = m;
            if (forced >= 0 && !assign_one(forced)) return false;
        }
    }
    return true;
}

void ValuationSearch::record() {
    std::vector<int> ones;
    for (int v = 0; v < n; ++v)
        if (value[v] == 1) ones.push_back(v);
    if (!best || ones < *best) best = std::move(ones);
}

void ValuationSearch::search() {
    // most-constrained unsatisfied context first; ties by index
    int pick = -1;
    for (std::size_t c = 0; c < contexts.size(); ++c)
        if (!satisfied[c] &&
            (pick < 0 || candidates[c] < candidates[pick]))
            pick = static_cast<int>(c);
    if (pick < 0) {
        record();
        return;
    }
    auto saved_value = value;
    auto saved_candidates = candidates;
    auto saved_satisfied = satisfied;
    for (int m : contexts[pick].members) {
        if (value[m] != -1) continue;
        ++nodes;
        if (assign_one(m)) search();
        value = saved_value;
        candidates = saved_candidates;
        satisfied = saved_satisfied;
    }
}

}  // namespace

SearchResult search_binary_valuation(const KsInstance& inst, Tolerance tol) {
    VerifyReport verification = verify_instance(inst, tol);
    if (!verification.pass)
        fail(ErrorCode::Unverified,
             "search_binary_valuation: instance failed verification: " +
                 verification.violations.front());

    auto t0 = std::chrono::steady_clock::now();
    ValuationSearch s;
    s.n = static_cast<int>(inst.vectors.size());
    s.contexts = verification.effective_contexts;
    s.orth.assign(s.n, std::vector<bool>(s.n, false));
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) {
            double overlap =
                std::abs(inst.vectors[i].amplitudes().dot(inst.vectors[j].amplitudes()));
            s.orth[i][j] = s.orth[j][i] = overlap <= tol.eps;
        }
    s.vector_contexts.assign(s.n, {});
    for (std::size_t c = 0; c < s.contexts.size(); ++c)
        for (int m : s.contexts[c].members)
            s.vector_contexts[m].push_back(static_cast<int>(c));
    s.value.assign(s.n, -1);
    s.candidates.resize(s.contexts.size());
    for (std::size_t c = 0; c < s.contexts.size(); ++c)
        s.candidates[c] = static_cast<int>(s.contexts[c].members.size());
    s.satisfied.assign(s.contexts.size(), false);

    s.search();
    auto t1 = std::chrono::steady_clock::now();

    SearchResult result;
    result.stats.nodes = s.nodes;
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (s.best) {
        BinaryValuation val;
        val.assignment.assign(s.n, 0);
        for (int v : *s.best) val.assignment[v] = 1;
        result.valuation = std::move(val);
    }
    return result;
}

CertificateReport intensive_certificate(const IntensiveState& state,
                                        const KsInstance& inst, Tolerance tol) {
    if (state.dim() != inst.dim)
        fail(ErrorCode::DimensionMismatch,
             "intensive_certificate: state dim " + std::to_string(state.dim()) +
                 " vs instance dim " + std::to_string(inst.dim));
    VerifyReport verification = verify_instance(inst, tol);
    if (!verification.pass)
        fail(ErrorCode::Unverified,
             "intensive_certificate: instance failed verification: " +
                 verification.violations.front());

    CertificateReport report;
    std::vector<Power> powers = instance_powers(inst);
    report.potentia.reserve(powers.size());
    for (const Power& p : powers)
        report.potentia.push_back(potentia(state, p, tol));
    for (const Context& c : verification.effective_contexts) {
        double sum = 0.0;
        for (int m : c.members) sum += report.potentia[m];
        report.context_sums.push_back(sum);
        report.max_deviation = std::max(report.max_deviation, std::abs(sum - 1.0));
    }
    report.pass = report.max_deviation <= tol.eps;
    return report;
}

}  // namespace qlab
