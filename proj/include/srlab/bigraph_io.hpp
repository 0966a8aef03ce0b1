#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "srlab/bigraph.hpp"

namespace srlab {

// Text format:
//   c <comment>
//   p bip <size1> <size2> <edges>
//   e <i> <j>            (0-based, i in part 1, j in part 2)
// Canonical form lists edges sorted lexicographically.

inline BipartiteGraph read_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int n1 = 0, n2 = 0;
    long long declared_edges = 0, seen_edges = 0;
    std::optional<BipartiteGraph::Builder> builder;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "p") {
            if (have_header) throw ParseError(lineno, "duplicate header");
            std::string kind;
            if (!(ss >> kind >> n1 >> n2 >> declared_edges) || kind != "bip")
                throw ParseError(lineno, "expected 'p bip <size1> <size2> <edges>'");
            if (n1 < 0 || n2 < 0 || declared_edges < 0) throw ParseError(lineno, "negative size");
            builder.emplace(n1, n2);
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw ParseError(lineno, "edge before header");
            int i, j;
            if (!(ss >> i >> j)) throw ParseError(lineno, "expected 'e <i> <j>'");
            std::string rest;
            if (ss >> rest) throw ParseError(lineno, "trailing tokens");
            try {
                builder->add_edge(i, j);
            } catch (const Error& e) {
                throw ParseError(lineno, e.what());
            }
            ++seen_edges;
        } else {
            throw ParseError(lineno, "unknown line tag '" + tag + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (seen_edges != declared_edges)
        throw ParseError(lineno, "header declares " + std::to_string(declared_edges) + " edges, file has " +
                                     std::to_string(seen_edges));
    return std::move(*builder).build();
}

inline void write_edge_list(const BipartiteGraph& g, std::ostream& out) {
    out << "p bip " << g.size(Part::one) << " " << g.size(Part::two) << " " << g.edge_count() << "\n";
    for (auto [i, j] : g.edges()) out << "e " << i << " " << j << "\n";
}

inline BipartiteGraph load_edge_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return read_edge_list(f);
}

inline void save_edge_list(const BipartiteGraph& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_edge_list(g, f);
}

}  // namespace srlab
