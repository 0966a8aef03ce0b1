#pragma once
// Text format for the pattern's base graph, same shape as the bipartite edge
// list but with a single vertex count: 'p base <n> <m>' then 'e <u> <v>'.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "srlab/subdivision.hpp"

namespace srlab {

inline BaseGraph read_base_graph(std::istream& in) {
    int n = -1;
    long long declared = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "p") {
            if (n >= 0) throw ParseError(lineno, "duplicate header");
            std::string kind;
            if (!(ss >> kind >> n >> declared) || kind != "base")
                throw ParseError(lineno, "expected 'p base <n> <edges>'");
            if (n < 0 || declared < 0) throw ParseError(lineno, "negative size");
        } else if (tag == "e") {
            if (n < 0) throw ParseError(lineno, "edge before header");
            int u, v;
            if (!(ss >> u >> v)) throw ParseError(lineno, "expected 'e <u> <v>'");
            std::string rest;
            if (ss >> rest) throw ParseError(lineno, "trailing tokens");
            edges.emplace_back(u, v);
        } else {
            throw ParseError(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw ParseError(lineno, "missing header");
    if (declared != static_cast<long long>(edges.size()))
        throw ParseError(lineno, "header declares " + std::to_string(declared) + " edges, file has " +
                                     std::to_string(edges.size()));
    try {
        return BaseGraph::from_edges(n, edges);
    } catch (const Error& e) {
        throw ParseError(lineno, e.what());
    }
}

inline void write_base_graph(const BaseGraph& g, std::ostream& out) {
    out << "p base " << g.n << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) out << "e " << u << ' ' << v << '\n';
}

inline BaseGraph load_base_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_base_graph(in);
}

inline void save_base_graph(const BaseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    write_base_graph(g, out);
}

}  // namespace srlab
