#ifndef QLAB_CORE_GRAPH_HPP
#define QLAB_CORE_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "core/linalg.hpp"

namespace qlab {

/// Finite sub-graph of the graph of powers: vertices are validated
/// projectors, edges join commuting pairs.
struct PowerGraph {
    int dim = 0;
    std::vector<Power> powers;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted

    bool adjacent(int i, int j) const;
};

/// A maximal family of pairwise-orthogonal powers summing to the identity
/// (a resolution of the identity). Members are vertex indices.
struct Context {
    std::vector<int> members;

    auto operator<=>(const Context&) const = default;
};

inline constexpr int kDefaultPoolCap = 4096;

/// Edge {i,j} iff pool[i] and pool[j] commute within tol. Vertex order is
/// the input order. Duplicate powers (entrywise within tol) are rejected.
PowerGraph build_power_graph(std::vector<Power> pool, Tolerance tol = {},
                             int cap = kDefaultPoolCap);

/// All maximal pairwise-orthogonal families whose operator sum is I within
/// tol, sorted lexicographically by member indices.
std::vector<Context> enumerate_contexts(const PowerGraph& g, Tolerance tol = {});

enum class GraphFormat { Dot, AdjacencyJson };

/// Byte-deterministic text export (graphviz DOT or adjacency JSON).
std::string export_graph(const PowerGraph& g, GraphFormat format);

}  // namespace qlab

#endif
