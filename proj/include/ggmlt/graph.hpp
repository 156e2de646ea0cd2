#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ggmlt {

/// Thrown when textual input (graph strings, CSV, config files) is malformed.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Edge sets are stored as a 64-bit mask over the C(p,2) vertex pairs in
// lexicographic order, which makes a Graph a cheap value type and hash key.
// C(11,2) = 55 is the largest pair count that fits.
inline constexpr int kMaxVertices = 11;

/// mlt() is only defined on graphs this small; see rigidity.hpp.
inline constexpr int kMaxMltVertices = 9;

/// Undirected simple graph on vertices 1..p. No self-loops, no multi-edges;
/// mask bits at or above pair_count(p) are always zero. Two graphs compare
/// equal iff both the vertex count and the edge mask agree.
struct Graph {
    int p = 1;
    std::uint64_t edge_mask = 0;

    static int pair_count(int p) { return p * (p - 1) / 2; }

    /// Bit position of pair {i,j} (1-indexed, i != j) in lexicographic order
    /// (1,2),(1,3),...,(1,p),(2,3),...
    static int edge_bit(int p, int i, int j);

    bool has_edge(int i, int j) const;
    int edge_count() const;
    int degree(int v) const;

    /// Edges as 1-indexed pairs (i < j), lexicographically sorted.
    std::vector<std::pair<int, int>> edge_list() const;

    /// Packs (p, edge_mask) into one integer; injective for p <= kMaxVertices.
    std::uint64_t key() const { return (std::uint64_t(p) << 56) | edge_mask; }

    bool operator==(const Graph&) const = default;
};

/// Builds the canonical Graph from 1-indexed endpoint pairs. Duplicate pairs
/// and reversed orientations collapse to a single edge. Throws
/// std::invalid_argument on self-loops or out-of-range endpoints.
Graph graph_from_edges(int p, const std::vector<std::pair<int, int>>& edges);

/// Decodes graph6 short form (printable ASCII, <= 62 vertices). Graphs larger
/// than kMaxVertices do not fit the edge mask and are rejected.
Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph& g);

/// Edge-list text format: "p; i j; i j; ...". A bare "p" is the empty graph.
Graph parse_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

/// Accepts either textual format; edge lists are recognized by ';' or space.
Graph parse_graph(std::string_view text);

/// Smallest k >= 1 for which repeatedly deleting vertices of degree < k
/// leaves the empty graph. Upper bound on the MLT.
int k_core_bound(const Graph& g);

/// Size of the largest complete induced subgraph, by exhaustive subset
/// enumeration (2^p subsets, fine for p <= kMaxVertices). Lower bound on
/// the MLT; >= 1 always, >= 2 iff the graph has an edge.
int clique_number(const Graph& g);

}  // namespace ggmlt
