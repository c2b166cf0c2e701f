#pragma once

// Finite simple graphs, generators for the graph families under study, and
// finite toroidal quotients standing in for the infinite plane tilings.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace closedchroma {

/// Immutable simple undirected graph with 0-based vertex indices.
class Graph {
 public:
  Graph(std::size_t vertex_count, const std::vector<std::pair<int, int>>& edge_list,
        std::optional<std::vector<std::string>> vertex_names = std::nullopt)
      : adjacency_(vertex_count), names_(std::move(vertex_names)) {
    if (names_ && names_->size() != vertex_count)
      throw std::invalid_argument("graph: vertex name count mismatch");
    for (auto [u, v] : edge_list) {
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= vertex_count ||
          static_cast<std::size_t>(v) >= vertex_count)
        throw std::invalid_argument("graph: vertex index out of range");
      if (u == v) throw std::invalid_argument("graph: self-loop");
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end());
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
        throw std::invalid_argument("graph: duplicate edge");
      edge_count_ += nbrs.size();
    }
    edge_count_ /= 2;
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  bool adjacent(int u, int v) const {
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  /// Degree when the graph is regular, nullopt otherwise.
  std::optional<int> regular_degree() const {
    if (adjacency_.empty()) return std::nullopt;
    int d = degree(0);
    for (std::size_t v = 1; v < adjacency_.size(); ++v)
      if (degree(static_cast<int>(v)) != d) return std::nullopt;
    return d;
  }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adjacency_.size(); ++u)
      for (int v : adjacency_[u])
        if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
    return out;
  }

  const std::optional<std::vector<std::string>>& vertex_names() const { return names_; }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::optional<std::vector<std::string>> names_;
  std::size_t edge_count_ = 0;
};

enum class Tiling { R3, R4, R6 };

inline std::string tiling_name(Tiling t) {
  switch (t) {
    case Tiling::R3: return "r3";
    case Tiling::R4: return "r4";
    default: return "r6";
  }
}

/// Symbolic description of a (possibly infinite) parameterized family member.
struct FamilyDescriptor {
  enum class Kind {
    Complete,        // K_m
    Star,            // K_{1,m}, center + m leaves
    Friendship,      // m triangles glued at a hub
    Path,            // P_m
    Cycle,           // C_m, m >= 3
    CompleteBipartite,  // K_{i,j}
    Caterpillar,     // x-y edge, m1 legs under x, m2 legs under y
    PerfectBinaryTree,  // rooted, height d >= 1
    MAryTreeInfinite,   // complete m-ary rooted tree of infinite height
    Petersen,        // G(m,j), m >= 3, 1 <= j < m/2
    TilingR3,
    TilingR4,
    TilingR6,
    Arbitrary,
  };

  Kind kind = Kind::Complete;
  long p1 = 0, p2 = 0;
  std::shared_ptr<const Graph> arbitrary;

  static FamilyDescriptor complete(long m) { return {Kind::Complete, m, 0, nullptr}; }
  static FamilyDescriptor star(long m) { return {Kind::Star, m, 0, nullptr}; }
  static FamilyDescriptor friendship(long m) { return {Kind::Friendship, m, 0, nullptr}; }
  static FamilyDescriptor path(long m) { return {Kind::Path, m, 0, nullptr}; }
  static FamilyDescriptor cycle(long m) { return {Kind::Cycle, m, 0, nullptr}; }
  static FamilyDescriptor complete_bipartite(long i, long j) {
    return {Kind::CompleteBipartite, i, j, nullptr};
  }
  static FamilyDescriptor caterpillar(long m1, long m2) {
    return {Kind::Caterpillar, m1, m2, nullptr};
  }
  static FamilyDescriptor perfect_binary_tree(long d) {
    return {Kind::PerfectBinaryTree, d, 0, nullptr};
  }
  static FamilyDescriptor mary_tree_infinite(long m) {
    return {Kind::MAryTreeInfinite, m, 0, nullptr};
  }
  static FamilyDescriptor petersen(long m, long j) { return {Kind::Petersen, m, j, nullptr}; }
  static FamilyDescriptor tiling(Tiling t) {
    switch (t) {
      case Tiling::R3: return {Kind::TilingR3, 0, 0, nullptr};
      case Tiling::R4: return {Kind::TilingR4, 0, 0, nullptr};
      default: return {Kind::TilingR6, 0, 0, nullptr};
    }
  }
  static FamilyDescriptor arbitrary_graph(Graph g) {
    FamilyDescriptor d;
    d.kind = Kind::Arbitrary;
    d.arbitrary = std::make_shared<const Graph>(std::move(g));
    return d;
  }

  bool finite_realizable() const {
    return kind != Kind::MAryTreeInfinite && kind != Kind::TilingR3 &&
           kind != Kind::TilingR4 && kind != Kind::TilingR6;
  }

  /// Canonical CLI syntax, e.g. "petersen:7,2".
  std::string name() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::Complete: os << "complete:" << p1; break;
      case Kind::Star: os << "star:" << p1; break;
      case Kind::Friendship: os << "friendship:" << p1; break;
      case Kind::Path: os << "path:" << p1; break;
      case Kind::Cycle: os << "cycle:" << p1; break;
      case Kind::CompleteBipartite: os << "bipartite:" << p1 << "," << p2; break;
      case Kind::Caterpillar: os << "caterpillar:" << p1 << "," << p2; break;
      case Kind::PerfectBinaryTree: os << "binarytree:" << p1; break;
      case Kind::MAryTreeInfinite: os << "marytree:" << p1; break;
      case Kind::Petersen: os << "petersen:" << p1 << "," << p2; break;
      case Kind::TilingR3: os << "tiling:r3"; break;
      case Kind::TilingR4: os << "tiling:r4"; break;
      case Kind::TilingR6: os << "tiling:r6"; break;
      case Kind::Arbitrary: os << "arbitrary"; break;
    }
    return os.str();
  }

  /// Parses the `name[:p1[,p2]]` syntax used on the command line.
  static FamilyDescriptor parse(const std::string& text) {
    std::string head = text, args;
    if (auto pos = text.find(':'); pos != std::string::npos) {
      head = text.substr(0, pos);
      args = text.substr(pos + 1);
    }
    auto nargs = [&](std::size_t want) {
      std::vector<long> ps;
      std::istringstream is(args);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        long val = 0;
        try {
          val = std::stol(tok, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("family '" + text + "': bad parameter '" + tok + "'");
        }
        if (used != tok.size())
          throw std::invalid_argument("family '" + text + "': bad parameter '" + tok + "'");
        ps.push_back(val);
      }
      if (ps.size() != want)
        throw std::invalid_argument("family '" + head + "' expects " +
                                    std::to_string(want) + " parameter(s)");
      return ps;
    };
    if (head == "complete") return complete(nargs(1)[0]);
    if (head == "star") return star(nargs(1)[0]);
    if (head == "friendship") return friendship(nargs(1)[0]);
    if (head == "path") return path(nargs(1)[0]);
    if (head == "cycle") return cycle(nargs(1)[0]);
    if (head == "bipartite") {
      auto p = nargs(2);
      return complete_bipartite(p[0], p[1]);
    }
    if (head == "caterpillar") {
      auto p = nargs(2);
      return caterpillar(p[0], p[1]);
    }
    if (head == "binarytree") return perfect_binary_tree(nargs(1)[0]);
    if (head == "marytree") return mary_tree_infinite(nargs(1)[0]);
    if (head == "petersen") {
      auto p = nargs(2);
      return petersen(p[0], p[1]);
    }
    if (head == "tiling") {
      if (args == "r3") return tiling(Tiling::R3);
      if (args == "r4") return tiling(Tiling::R4);
      if (args == "r6") return tiling(Tiling::R6);
      throw std::invalid_argument("tiling must be one of r3, r4, r6");
    }
    throw std::invalid_argument("unknown family '" + head + "'");
  }
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace detail

/// Builds the canonical finite graph of a descriptor. Vertex order is fixed
/// per family: Petersen lists exterior v_0..v_{m-1} then interior u_0..u_{m-1};
/// the perfect binary tree is in level order from the root; the caterpillar is
/// x, y, then the x-legs, then the y-legs.
inline Graph build_family(const FamilyDescriptor& desc) {
  using Kind = FamilyDescriptor::Kind;
  if (!desc.finite_realizable())
    throw std::invalid_argument("family " + desc.name() + " is not finitely realizable");
  std::vector<std::pair<int, int>> edges;
  switch (desc.kind) {
    case Kind::Complete: {
      detail::require(desc.p1 >= 1, "complete: m >= 1 required");
      int m = static_cast<int>(desc.p1);
      for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) edges.emplace_back(u, v);
      return Graph(m, edges);
    }
    case Kind::Star: {
      detail::require(desc.p1 >= 1, "star: m >= 1 required");
      int m = static_cast<int>(desc.p1);
      for (int v = 1; v <= m; ++v) edges.emplace_back(0, v);
      return Graph(m + 1, edges);
    }
    case Kind::Friendship: {
      detail::require(desc.p1 >= 1, "friendship: m >= 1 required");
      int m = static_cast<int>(desc.p1);
      for (int i = 0; i < m; ++i) {
        edges.emplace_back(0, 2 * i + 1);
        edges.emplace_back(0, 2 * i + 2);
        edges.emplace_back(2 * i + 1, 2 * i + 2);
      }
      return Graph(2 * m + 1, edges);
    }
    case Kind::Path: {
      detail::require(desc.p1 >= 1, "path: m >= 1 required");
      int m = static_cast<int>(desc.p1);
      for (int v = 0; v + 1 < m; ++v) edges.emplace_back(v, v + 1);
      return Graph(m, edges);
    }
    case Kind::Cycle: {
      detail::require(desc.p1 >= 3, "cycle: m >= 3 required");
      int m = static_cast<int>(desc.p1);
      for (int v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
      return Graph(m, edges);
    }
    case Kind::CompleteBipartite: {
      detail::require(desc.p1 >= 1 && desc.p2 >= 1, "bipartite: i, j >= 1 required");
      int i = static_cast<int>(desc.p1), j = static_cast<int>(desc.p2);
      for (int u = 0; u < i; ++u)
        for (int v = 0; v < j; ++v) edges.emplace_back(u, i + v);
      return Graph(i + j, edges);
    }
    case Kind::Caterpillar: {
      detail::require(desc.p1 >= 1 && desc.p2 >= 1, "caterpillar: m1, m2 >= 1 required");
      int m1 = static_cast<int>(desc.p1), m2 = static_cast<int>(desc.p2);
      edges.emplace_back(0, 1);  // x - y
      for (int l = 0; l < m1; ++l) edges.emplace_back(0, 2 + l);
      for (int l = 0; l < m2; ++l) edges.emplace_back(1, 2 + m1 + l);
      return Graph(2 + m1 + m2, edges);
    }
    case Kind::PerfectBinaryTree: {
      detail::require(desc.p1 >= 1 && desc.p1 <= 20, "binarytree: 1 <= d <= 20 required");
      int d = static_cast<int>(desc.p1);
      int count = (1 << (d + 1)) - 1;
      for (int v = 1; v < count; ++v) edges.emplace_back((v - 1) / 2, v);
      return Graph(count, edges);
    }
    case Kind::Petersen: {
      long m = desc.p1, j = desc.p2;
      detail::require(m >= 3 && j >= 1 && 2 * j < m,
                      "petersen: m >= 3 and 1 <= j < m/2 required");
      int mi = static_cast<int>(m), ji = static_cast<int>(j);
      std::vector<std::string> names;
      for (int i = 0; i < mi; ++i) names.push_back("v" + std::to_string(i));
      for (int i = 0; i < mi; ++i) names.push_back("u" + std::to_string(i));
      for (int i = 0; i < mi; ++i) {
        edges.emplace_back(i, (i + 1) % mi);            // exterior cycle
        edges.emplace_back(i, mi + i);                  // spoke
        edges.emplace_back(mi + i, mi + (i + ji) % mi); // interior chords
      }
      return Graph(2 * mi, edges, names);
    }
    case Kind::Arbitrary:
      if (!desc.arbitrary) throw std::invalid_argument("arbitrary descriptor holds no graph");
      return *desc.arbitrary;
    default:
      throw std::logic_error("unreachable");
  }
}

/// Finite torus quotient of a regular plane tiling. Identification schemes
/// (deterministic, documented here):
///   R4: vertices (x, y) in Z_a x Z_b, index x*b + y, edges to (x+-1, y) and
///       (x, y+-1); requires a, b >= 3.
///   R3: same vertex set with the additional diagonal edges to (x+1, y-1)
///       and (x-1, y+1); requires a, b >= 4.
///   R6: hexagonal "brick wall": cells (x, y) in Z_a x Z_b each holding two
///       vertices s = 0, 1 with index (x*b + y)*2 + s; (x,y,0) is adjacent to
///       (x,y,1), (x-1,y,1) and (x,y-1,1); requires a, b >= 2.
/// Every closed neighborhood of the quotient has D+1 distinct vertices and
/// matches a closed neighborhood of the corresponding infinite tiling.
inline Graph build_torus_quotient(Tiling tiling, long a, long b) {
  std::vector<std::pair<int, int>> edges;
  auto grid_names = [&](long cells) {
    std::vector<std::string> names;
    for (long x = 0; x < a; ++x)
      for (long y = 0; y < b; ++y)
        names.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
    (void)cells;
    return names;
  };
  switch (tiling) {
    case Tiling::R4: {
      detail::require(a >= 3 && b >= 3,
                      "r4 quotient: a, b >= 3 required so that the four neighbors stay distinct");
      auto id = [&](long x, long y) {
        return static_cast<int>(((x % a + a) % a) * b + ((y % b + b) % b));
      };
      for (long x = 0; x < a; ++x)
        for (long y = 0; y < b; ++y) {
          edges.emplace_back(id(x, y), id(x + 1, y));
          edges.emplace_back(id(x, y), id(x, y + 1));
        }
      return Graph(a * b, edges, grid_names(a * b));
    }
    case Tiling::R3: {
      detail::require(a >= 4 && b >= 4,
                      "r3 quotient: a, b >= 4 required so that the six neighbors stay distinct");
      auto id = [&](long x, long y) {
        return static_cast<int>(((x % a + a) % a) * b + ((y % b + b) % b));
      };
      for (long x = 0; x < a; ++x)
        for (long y = 0; y < b; ++y) {
          edges.emplace_back(id(x, y), id(x + 1, y));
          edges.emplace_back(id(x, y), id(x, y + 1));
          edges.emplace_back(id(x, y), id(x + 1, y - 1));
        }
      return Graph(a * b, edges, grid_names(a * b));
    }
    default: {
      detail::require(a >= 2 && b >= 2,
                      "r6 quotient: a, b >= 2 hexagon cells required so that the three neighbors stay distinct");
      auto id = [&](long x, long y, int s) {
        return static_cast<int>((((x % a + a) % a) * b + ((y % b + b) % b)) * 2 + s);
      };
      std::vector<std::string> names;
      for (long x = 0; x < a; ++x)
        for (long y = 0; y < b; ++y)
          for (int s = 0; s < 2; ++s)
            names.push_back("(" + std::to_string(x) + "," + std::to_string(y) + "," +
                            std::to_string(s) + ")");
      for (long x = 0; x < a; ++x)
        for (long y = 0; y < b; ++y) {
          edges.emplace_back(id(x, y, 0), id(x, y, 1));
          edges.emplace_back(id(x, y, 0), id(x - 1, y, 1));
          edges.emplace_back(id(x, y, 0), id(x, y - 1, 1));
        }
      return Graph(2 * a * b, edges, names);
    }
  }
}

struct EdgeListResult {
  Graph graph;
  std::vector<std::string> warnings;
};

/// Edge-list text format: first line is the vertex count, each following
/// nonempty line is "u v" with 0-based indices, '#' starts a comment line.
inline EdgeListResult read_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long vertex_count = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> warnings;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (vertex_count < 0) {
      if (!(ls >> vertex_count)) continue;  // blank or comment before the header
      if (vertex_count < 0) fail("negative vertex count");
      std::string rest;
      if (ls >> rest) fail("trailing tokens after vertex count");
      continue;
    }
    long u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) fail("expected two vertex indices");
    std::string rest;
    if (ls >> rest) fail("trailing tokens after edge");
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      fail("vertex index out of range");
    if (u == v) fail("self-loop");
    int lo = static_cast<int>(std::min(u, v)), hi = static_cast<int>(std::max(u, v));
    if (std::find(edges.begin(), edges.end(), std::make_pair(lo, hi)) != edges.end()) {
      warnings.push_back("line " + std::to_string(line_no) + ": duplicate edge " +
                         std::to_string(lo) + " " + std::to_string(hi) + " collapsed");
      continue;
    }
    edges.emplace_back(lo, hi);
  }
  if (vertex_count < 0) throw std::invalid_argument("edge list: missing vertex count");
  return EdgeListResult{Graph(vertex_count, edges), std::move(warnings)};
}

/// Canonical writer: vertex count, then edges "u v" with u < v in
/// lexicographic order. write_edge_list . read_edge_list is the identity on
/// canonical texts.
inline std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

}  // namespace closedchroma
