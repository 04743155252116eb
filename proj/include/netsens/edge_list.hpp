#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netsens/error.hpp"
#include "netsens/graph.hpp"

namespace netsens {

// Edge-list dialect: one whitespace-separated vertex pair per line; lines
// whose first non-blank character is '#' or '%' are comments (SNAP and KONECT
// headers). Labels are arbitrary tokens, mapped to dense ids in order of first
// appearance. The directive comment "#@isolated <label>" declares a vertex
// without edges; other readers see it as a plain comment.

inline constexpr std::string_view kIsolatedDirective = "#@isolated";

struct LoadedGraph {
  Graph graph;
  SimplifyStats dropped;
};

inline LoadedGraph load_edge_list(std::istream& in, bool directed) {
  std::unordered_map<std::string, vertex_id> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.try_emplace(token, static_cast<vertex_id>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') {
      std::string_view rest(line.data() + first, line.size() - first);
      if (rest.starts_with(kIsolatedDirective)) {
        std::istringstream ss{std::string(rest.substr(kIsolatedDirective.size()))};
        std::string label;
        if (!(ss >> label)) throw parse_error("isolated-vertex directive without a label", line_no);
        intern(label);
      }
      continue;
    }
    tokens.clear();
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) tokens.push_back(std::move(tok));
    if (tokens.size() != 2)
      throw parse_error("expected a vertex pair, found " + std::to_string(tokens.size()) +
                            " tokens",
                        line_no);
    vertex_id u = intern(tokens[0]);
    vertex_id v = intern(tokens[1]);
    edges.push_back({u, v});
  }
  if (in.bad()) throw error("read failure while loading edge list");

  LoadedGraph out;
  const std::size_t n = labels.size();
  out.graph = simplify(n, std::move(edges), directed, &out.dropped, std::move(labels));
  if (out.graph.m() == 0) throw parse_error("empty edge set", 0);
  return out;
}

inline LoadedGraph load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw error("cannot open edge list '" + path + "'");
  return load_edge_list(in, directed);
}

/// Writes g in the dialect above, using vertex labels. Isolated vertices are
/// declared first so that loading the output reproduces g up to relabeling
/// by label.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# " << (g.directed() ? "directed" : "undirected") << " n=" << g.n()
      << " m=" << g.m() << '\n';
  for (vertex_id v = 0; v < g.n(); ++v)
    if (g.out_degree(v) == 0 && g.in_degree(v) == 0)
      out << kIsolatedDirective << ' ' << g.label(v) << '\n';
  for (const Edge& e : g.edges()) out << g.label(e.source) << ' ' << g.label(e.target) << '\n';
}

/// Two-column CSV mapping subgraph ids to labels of the source graph.
inline void write_id_map(std::ostream& out, const Subgraph& sub, const Graph& source) {
  out << "survivor_id,original_label\n";
  for (vertex_id v = 0; v < sub.original_id.size(); ++v)
    out << v << ',' << source.label(sub.original_id[v]) << '\n';
}

}  // namespace netsens
