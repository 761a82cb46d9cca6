#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cutpoly/errors.hpp"
#include "cutpoly/types.hpp"

namespace cutpoly {

/// Graph file format: first line "n <count>", then one edge per line
/// "i j w" with 1-based nodes and w a decimal or "p/q" rational.
/// '#' starts a comment.
inline CostVector<Rat> read_cost_vector(std::istream& in) {
    std::string line;
    int n = -1;
    CostVector<Rat> c;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (n < 0) {
            require(tok == "n", Errc::io, "graph file must start with \"n <count>\"");
            require(static_cast<bool>(ls >> n) && n >= 1, Errc::io, "bad node count");
            c = CostVector<Rat>(n);
            continue;
        }
        int i = 0, j = 0;
        std::string w;
        std::istringstream es(line);
        require(static_cast<bool>(es >> i >> j >> w), Errc::io,
                "bad edge line " + std::to_string(lineno));
        c.add(i, j, parse_rat(w));
    }
    require(n >= 1, Errc::io, "empty graph file");
    return c;
}

inline CostVector<Rat> read_cost_vector_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), Errc::io, "cannot open graph file: " + path);
    return read_cost_vector(in);
}

inline void write_cost_vector(std::ostream& out, const CostVector<Rat>& c) {
    out << "n " << c.n() << "\n";
    for (const auto& [p, w] : c.entries())
        out << p.first << " " << p.second << " " << w.get_str() << "\n";
}

}  // namespace cutpoly
