#pragma once

#include <istream>
#include <string>
#include <vector>

#include "coopnet/graph.hpp"

namespace coopnet {

namespace detail {

inline void g6_put_size(std::string& s, int n) {
    if (n <= 62) {
        s.push_back(static_cast<char>(n + 63));
    } else {
        s.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6) s.push_back(static_cast<char>(((n >> shift) & 63) + 63));
    }
}

} // namespace detail

inline std::string encode_graph6(const Graph& g) {
    const int n = g.size();
    std::string s;
    detail::g6_put_size(s, n);
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                s.push_back(static_cast<char>(acc + 63));
                acc = nbits = 0;
            }
        }
    if (nbits > 0) s.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return s;
}

// Decodes one graph6 line. The result is structurally validated only; callers that
// need a connected graph re-validate with Validation::analysis.
inline Graph parse_graph6(std::string line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
        line.pop_back();
    if (line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
    if (line.empty()) throw MalformedGraph6("empty graph6 string");
    for (char c : line)
        if (c < 63 || c > 126) throw MalformedGraph6("byte out of graph6 range in '" + line + "'");
    std::size_t pos = 0;
    int n = 0;
    if (line[0] != '~') {
        n = line[0] - 63;
        pos = 1;
    } else {
        if (line.size() < 4 || line[1] == '~') throw MalformedGraph6("unsupported graph6 size field");
        for (int k = 1; k <= 3; ++k) n = (n << 6) | (line[k] - 63);
        pos = 4;
    }
    if (n < 1) throw MalformedGraph6("graph6 with zero nodes");
    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t need = (bits + 5) / 6;
    if (line.size() - pos != need)
        throw MalformedGraph6("graph6 body has " + std::to_string(line.size() - pos) + " bytes, expected " +
                              std::to_string(need));
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k) {
            int byte = line[pos + k / 6] - 63;
            if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
        }
    if (bits % 6 != 0) {
        int tail = line.back() - 63;
        if (tail & ((1 << (6 - bits % 6)) - 1)) throw MalformedGraph6("nonzero graph6 padding bits");
    }
    return build_graph(n, std::move(edges), Validation::structural);
}

inline std::vector<Graph> read_graph6(std::istream& in) {
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_graph6(line));
    }
    return out;
}

} // namespace coopnet
