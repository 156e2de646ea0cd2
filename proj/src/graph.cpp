#include "ggmlt/graph.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace ggmlt {

int Graph::edge_bit(int p, int i, int j) {
    int a = std::min(i, j) - 1;  // 0-indexed
    int b = std::max(i, j) - 1;
    return a * p - a * (a + 1) / 2 + (b - a - 1);
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    return (edge_mask >> edge_bit(p, i, j)) & 1u;
}

int Graph::edge_count() const { return std::popcount(edge_mask); }

int Graph::degree(int v) const {
    int d = 0;
    for (int u = 1; u <= p; ++u)
        if (u != v && has_edge(u, v)) ++d;
    return d;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(std::size_t(edge_count()));
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            if (has_edge(i, j)) out.emplace_back(i, j);
    return out;
}

Graph graph_from_edges(int p, const std::vector<std::pair<int, int>>& edges) {
    if (p < 1) throw std::invalid_argument("vertex count must be at least 1");
    if (p > kMaxVertices)
        throw std::invalid_argument("graphs on more than " + std::to_string(kMaxVertices) +
                                    " vertices are not supported");
    Graph g;
    g.p = p;
    for (auto [i, j] : edges) {
        if (i < 1 || i > p || j < 1 || j > p)
            throw std::invalid_argument("vertex index out of range: (" + std::to_string(i) +
                                        "," + std::to_string(j) + ") with p=" + std::to_string(p));
        if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
        g.edge_mask |= std::uint64_t(1) << Graph::edge_bit(p, i, j);
    }
    return g;
}

// graph6 short form: header byte n+63, then the upper triangle of the
// adjacency matrix column by column ((0,1),(0,2),(1,2),(0,3),...), packed
// 6 bits per byte MSB-first, each byte offset by 63.
Graph parse_graph6(std::string_view text) {
    constexpr std::string_view kHeader = ">>graph6<<";
    if (text.substr(0, kHeader.size()) == kHeader) text.remove_prefix(kHeader.size());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty graph6 input");

    unsigned char h = static_cast<unsigned char>(text[0]);
    if (h == 126) throw ParseError("long-form graph6 (63 or more vertices) is not supported");
    if (h < 63 || h > 125) throw ParseError("malformed graph6 header byte");
    int n = h - 63;
    if (n == 0) throw ParseError("graph6 input encodes a graph with no vertices");
    if (n > kMaxVertices)
        throw ParseError("graph on " + std::to_string(n) + " vertices exceeds the " +
                         std::to_string(kMaxVertices) + "-vertex limit");

    int bits = n * (n - 1) / 2;
    int bytes = (bits + 5) / 6;
    if (int(text.size()) - 1 < bytes) throw ParseError("truncated graph6 bit vector");
    if (int(text.size()) - 1 > bytes) throw ParseError("trailing bytes after graph6 data");
    for (int b = 0; b < bytes; ++b) {
        unsigned char c = static_cast<unsigned char>(text[1 + b]);
        if (c < 63 || c > 126) throw ParseError("graph6 byte outside the printable range");
    }

    Graph g;
    g.p = n;
    int bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            int v = text[1 + bit / 6] - 63;
            if ((v >> (5 - bit % 6)) & 1)
                g.edge_mask |= std::uint64_t(1) << Graph::edge_bit(n, i + 1, j + 1);
        }
    }
    return g;
}

std::string write_graph6(const Graph& g) {
    std::string out;
    out.push_back(char(g.p + 63));
    int bits = g.p * (g.p - 1) / 2;
    int acc = 0, filled = 0;
    for (int j = 1; j < g.p; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i + 1, j + 1) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (bits % 6 != 0) out.push_back(char((acc << (6 - bits % 6)) + 63));
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int parse_int(std::string_view s, const char* what) {
    s = trim(s);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(std::string("expected an integer for ") + what + ", got \"" +
                         std::string(s) + "\"");
    return value;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
    std::string_view rest = trim(text);
    if (rest.empty()) throw ParseError("empty edge-list input");

    std::vector<std::string_view> fields;
    while (!rest.empty()) {
        auto pos = rest.find(';');
        fields.push_back(rest.substr(0, pos));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }

    int p = parse_int(fields[0], "the vertex count");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t f = 1; f < fields.size(); ++f) {
        std::string_view field = trim(fields[f]);
        if (field.empty()) continue;  // tolerate a trailing ';'
        std::istringstream ss{std::string(field)};
        int i = 0, j = 0;
        std::string extra;
        if (!(ss >> i >> j) || (ss >> extra))
            throw ParseError("expected \"i j\" in edge-list field \"" + std::string(field) + "\"");
        edges.emplace_back(i, j);
    }
    try {
        return graph_from_edges(p, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.p);
    for (auto [i, j] : g.edge_list())
        out += "; " + std::to_string(i) + " " + std::to_string(j);
    return out;
}

Graph parse_graph(std::string_view text) {
    std::string_view t = trim(text);
    if (t.find(';') != std::string_view::npos || t.find(' ') != std::string_view::npos)
        return parse_edge_list(t);
    // a bare integer is an empty graph in edge-list form (digits are below
    // the graph6 printable range, so this is unambiguous)
    if (!t.empty() && t.find_first_not_of("0123456789") == std::string_view::npos)
        return parse_edge_list(t);
    return parse_graph6(t);
}

int k_core_bound(const Graph& g) {
    // min-degree peeling; the bound is the largest core number plus one
    std::vector<int> deg(std::size_t(g.p));
    std::vector<bool> alive(std::size_t(g.p), true);
    for (int v = 1; v <= g.p; ++v) deg[std::size_t(v - 1)] = g.degree(v);

    int max_core = 0;
    for (int removed = 0; removed < g.p; ++removed) {
        int best = -1;
        for (int v = 0; v < g.p; ++v)
            if (alive[std::size_t(v)] && (best < 0 || deg[std::size_t(v)] < deg[std::size_t(best)]))
                best = v;
        max_core = std::max(max_core, deg[std::size_t(best)]);
        alive[std::size_t(best)] = false;
        for (int u = 0; u < g.p; ++u)
            if (alive[std::size_t(u)] && g.has_edge(u + 1, best + 1)) --deg[std::size_t(u)];
    }
    return max_core + 1;
}

int clique_number(const Graph& g) {
    std::vector<std::uint32_t> adj(std::size_t(g.p), 0);
    for (auto [i, j] : g.edge_list()) {
        adj[std::size_t(i - 1)] |= std::uint32_t(1) << (j - 1);
        adj[std::size_t(j - 1)] |= std::uint32_t(1) << (i - 1);
    }
    int best = 1;
    for (std::uint32_t s = 1; s < (std::uint32_t(1) << g.p); ++s) {
        bool clique = true;
        for (std::uint32_t rest = s; rest && clique;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            if ((adj[std::size_t(v)] & s) != (s ^ (std::uint32_t(1) << v))) clique = false;
        }
        if (clique) best = std::max(best, std::popcount(s));
    }
    return best;
}

}  // namespace ggmlt
