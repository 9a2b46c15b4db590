#ifndef GKG_PRIME_GRAPH_HPP
#define GKG_PRIME_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gkg/spectra.hpp"

namespace gkg {

// Gruenberg-Kegel graph: vertices are the primes dividing some element order,
// r ~ s iff r != s and rs is an element order. At most 64 vertices, adjacency
// kept as one bitmask per vertex.
class PrimeGraph {
public:
    PrimeGraph(std::vector<uint64_t> vertices, std::vector<uint64_t> adjacency)
        : vertices_(std::move(vertices)), adj_(std::move(adjacency)) {
        if (vertices_.size() > 64) throw std::invalid_argument("PrimeGraph: over 64 vertices");
        if (vertices_.size() != adj_.size())
            throw std::invalid_argument("PrimeGraph: adjacency size mismatch");
    }

    const std::vector<uint64_t>& vertices() const { return vertices_; }
    size_t vertex_count() const { return vertices_.size(); }

    bool adjacent(uint64_t r, uint64_t s) const {
        auto ir = index_of(r), is = index_of(s);
        if (!ir || !is) return false;
        return (adj_[*ir] >> *is) & 1;
    }

    // sorted edge list, each edge (r, s) with r < s
    std::vector<std::pair<uint64_t, uint64_t>> edges() const {
        std::vector<std::pair<uint64_t, uint64_t>> out;
        for (size_t i = 0; i < vertices_.size(); ++i)
            for (size_t j = i + 1; j < vertices_.size(); ++j)
                if ((adj_[i] >> j) & 1) out.emplace_back(vertices_[i], vertices_[j]);
        return out;
    }

    uint64_t degree(size_t i) const { return static_cast<uint64_t>(__builtin_popcountll(adj_[i])); }

    std::optional<size_t> index_of(uint64_t v) const {
        for (size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == v) return i;
        return std::nullopt;
    }

    const std::vector<uint64_t>& adjacency_masks() const { return adj_; }

private:
    std::vector<uint64_t> vertices_;
    std::vector<uint64_t> adj_;
};

// GK graph of a spectrum.
inline PrimeGraph gk(const Spectrum& spec) {
    std::set<uint64_t> primes;
    for (uint64_t m : spec.mu())
        for (uint64_t p : factor(m).primes()) primes.insert(p);
    std::vector<uint64_t> vertices(primes.begin(), primes.end());
    std::vector<uint64_t> adj(vertices.size(), 0);
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            if (spec.contains(checked_mul(vertices[i], vertices[j]))) {
                adj[i] |= uint64_t(1) << j;
                adj[j] |= uint64_t(1) << i;
            }
        }
    }
    return PrimeGraph(std::move(vertices), std::move(adj));
}

// Smallest vertex adjacent to all others, if any.
inline std::optional<uint64_t> dominating_vertex(const PrimeGraph& g) {
    size_t n = g.vertex_count();
    if (n == 0) return std::nullopt;
    uint64_t full = n == 64 ? ~uint64_t(0) : (uint64_t(1) << n) - 1;
    for (size_t i = 0; i < n; ++i) {
        uint64_t mask = g.adjacency_masks()[i] | (uint64_t(1) << i);
        if (mask == full) return g.vertices()[i];
    }
    return std::nullopt;
}

struct NonNeighborResult {
    bool every_vertex_has_one = false;
    std::optional<uint64_t> dominating; // the violating vertex when false
};

// The Lie-type non-adjacency property: every vertex misses at least one other
// vertex. Degenerate on graphs with fewer than two vertices.
inline NonNeighborResult every_vertex_has_nonneighbor(const PrimeGraph& g) {
    if (g.vertex_count() < 2)
        throw std::invalid_argument("every_vertex_has_nonneighbor: graph is degenerate");
    auto dom = dominating_vertex(g);
    if (dom) return {false, dom};
    return {true, std::nullopt};
}

// {"vertices":[...],"edges":[[r,s],...]}
inline std::string graph_to_json(const PrimeGraph& g) {
    std::string out = "{\"vertices\":[";
    for (size_t i = 0; i < g.vertices().size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(g.vertices()[i]);
    }
    out += "],\"edges\":[";
    auto edges = g.edges();
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i > 0) out += ',';
        out += '[' + std::to_string(edges[i].first) + ',' + std::to_string(edges[i].second) + ']';
    }
    out += "]}";
    return out;
}

// DOT export: vertices as quoted decimal strings, then edges sorted.
inline std::string graph_to_dot(const PrimeGraph& g) {
    std::ostringstream os;
    os << "graph GK {\n";
    for (uint64_t v : g.vertices()) os << "  \"" << v << "\";\n";
    for (const auto& [r, s] : g.edges()) os << "  \"" << r << "\" -- \"" << s << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace gkg

#endif
