#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qlab {

bool PowerGraph::adjacent(int i, int j) const {
    if (i == j) return false;
    auto e = std::minmax(i, j);
    return std::binary_search(edges.begin(), edges.end(),
                              std::make_pair(e.first, e.second));
}

PowerGraph build_power_graph(std::vector<Power> pool, Tolerance tol, int cap) {
    if (pool.empty())
        fail(ErrorCode::InvalidArgument, "build_power_graph: empty pool");
    if (static_cast<int>(pool.size()) > cap)
        fail(ErrorCode::CapExceeded,
             "build_power_graph: pool size " + std::to_string(pool.size()) +
                 " exceeds cap " + std::to_string(cap));
    int dim = pool[0].dim();
    for (const Power& p : pool)
        if (p.dim() != dim)
            fail(ErrorCode::DimensionMismatch,
                 "build_power_graph: mixed dimensions " + std::to_string(dim) +
                     " and " + std::to_string(p.dim()));

    int n = static_cast<int>(pool.size());
    std::vector<std::pair<int, int>> dups;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (max_entry_diff(pool[i].op(), pool[j].op()) <= tol.eps)
                dups.emplace_back(i, j);
    if (!dups.empty()) {
        std::ostringstream os;
        os << "build_power_graph: duplicate powers at indices";
        for (auto [i, j] : dups) os << " (" << i << "," << j << ")";
        fail(ErrorCode::DuplicatePower, os.str());
    }

    PowerGraph g;
    g.dim = dim;
    g.powers = std::move(pool);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (commutes(g.powers[i], g.powers[j], tol)) g.edges.emplace_back(i, j);
    return g;
}

namespace {

struct ContextSearch {
    const PowerGraph& g;
    Tolerance tol;
    int n;
    std::vector<std::vector<bool>> orth;  // pairwise orthogonality
    std::vector<int> ranks;               // rounded traces
    Matrix ident;
    std::vector<int> members;
    std::vector<Context> found;

    explicit ContextSearch(const PowerGraph& graph, Tolerance t)
        : g(graph), tol(t), n(static_cast<int>(graph.powers.size())) {
        orth.assign(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                orth[i][j] = orth[j][i] =
                    orthogonal(g.powers[i], g.powers[j], tol);
        ranks.resize(n);
        for (int i = 0; i < n; ++i)
            ranks[i] = static_cast<int>(std::lround(g.powers[i].op().trace().real()));
        ident = identity(g.dim);
    }

    bool compatible(int j) const {
        for (int m : members)
            if (!orth[m][j]) return false;
        return true;
    }

    bool maximal() const {
        for (int k = 0; k < n; ++k) {
            if (std::binary_search(members.begin(), members.end(), k)) continue;
            if (compatible(k)) return false;
        }
        return true;
    }

    void extend(int start, const Matrix& sum, int rank_sum) {
        if (!members.empty() && rank_sum <= g.dim &&
            (sum - ident).norm() <= tol.eps && maximal()) {
            found.push_back(Context{members});
        }
        for (int j = start; j < n; ++j) {
            if (rank_sum + ranks[j] > g.dim) continue;
            if (!compatible(j)) continue;
            members.push_back(j);
            extend(j + 1, sum + g.powers[j].op(), rank_sum + ranks[j]);
            members.pop_back();
        }
    }
};

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<Context> enumerate_contexts(const PowerGraph& g, Tolerance tol) {
    ContextSearch search(g, tol);
    search.extend(0, Matrix::Zero(g.dim, g.dim), 0);
    std::sort(search.found.begin(), search.found.end());
    return search.found;
}

std::string export_graph(const PowerGraph& g, GraphFormat format) {
    if (format == GraphFormat::Dot) {
        std::ostringstream os;
        os << "graph powers {\n";
        for (std::size_t i = 0; i < g.powers.size(); ++i) {
            os << "  p" << i << " [label=\"" << i;
            if (!g.powers[i].label().empty())
                os << ": " << dot_escape(g.powers[i].label());
            os << "\"];\n";
        }
        for (auto [i, j] : g.edges) os << "  p" << i << " -- p" << j << ";\n";
        os << "}\n";
        return os.str();
    }
    nlohmann::ordered_json j;
    j["dim"] = g.dim;
    j["vertices"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.powers.size(); ++i)
        j["vertices"].push_back({{"index", i}, {"label", g.powers[i].label()}});
    j["edges"] = nlohmann::ordered_json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    return j.dump(2) + "\n";
}

}  // namespace qlab
