#include "clex/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace clex {

namespace {

int lowest(VertexSet s) { return std::countr_zero(s); }

bool increment_pruefer(std::vector<int>& seq, int base) {
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (++*it < base) return true;
    *it = 0;
  }
  return false;
}

bool increment_growth(std::vector<int>& a) {
  const auto m = a.size();
  for (std::size_t i = m; i-- > 1;) {
    const int max_prefix = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
    if (a[i] <= max_prefix) {
      ++a[i];
      std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
      return true;
    }
  }
  return false;
}

}  // namespace

Graph::Graph(int n_vertices, int white_count) : n_(n_vertices), whites_(white_count) {
  if (n_vertices < 0 || n_vertices > kMaxVertices)
    throw std::invalid_argument("graph size out of range");
  if (white_count < 0 || white_count > n_vertices)
    throw std::invalid_argument("white_count exceeds vertex count");
}

Graph Graph::from_edge_mask(int n_vertices, std::uint64_t mask, int white_count) {
  Graph g(n_vertices, white_count);
  if (pair_count(n_vertices) > 64) throw std::invalid_argument("edge mask too narrow");
  for (int j = 1; j < n_vertices; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> edge_index(i, j) & 1U) {
        g.adj_[i] |= vertex_bit(j);
        g.adj_[j] |= vertex_bit(i);
      }
  return g;
}

Graph Graph::from_edges(int n_vertices, std::span<const std::pair<int, int>> edges,
                        int white_count) {
  Graph g(n_vertices, white_count);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

void Graph::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("vertex out of range");
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
}

bool Graph::has_edge(int i, int j) const {
  check_pair(i, j);
  return (adj_[i] & vertex_bit(j)) != 0;
}

void Graph::add_edge(int i, int j) {
  check_pair(i, j);
  adj_[i] |= vertex_bit(j);
  adj_[j] |= vertex_bit(i);
}

void Graph::remove_edge(int i, int j) {
  check_pair(i, j);
  adj_[i] &= ~vertex_bit(j);
  adj_[j] &= ~vertex_bit(i);
}

void Graph::set_white_count(int w) {
  if (w < 0 || w > n_) throw std::invalid_argument("white_count exceeds vertex count");
  whites_ = w;
}

int Graph::edge_count() const noexcept {
  int twice = 0;
  for (int v = 0; v < n_; ++v) twice += std::popcount(adj_[v]);
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (adj_[i] & vertex_bit(j)) out.emplace_back(i, j);
  return out;
}

std::uint64_t Graph::edge_mask() const {
  if (pair_count(n_) > 64) throw std::logic_error("edge mask needs n <= 11");
  std::uint64_t mask = 0;
  for (auto [i, j] : edges()) mask |= std::uint64_t{1} << edge_index(i, j);
  return mask;
}

VertexSet reachable(const Graph& g, int from, VertexSet within) {
  if (!(within & vertex_bit(from))) return 0;
  VertexSet seen = vertex_bit(from);
  VertexSet frontier = seen;
  while (frontier) {
    VertexSet next = 0;
    for (VertexSet f = frontier; f; f &= f - 1) next |= g.neighbors(lowest(f));
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool is_connected(const Graph& g, VertexSet within) {
  if (within == 0) return true;
  return reachable(g, lowest(within), within) == within;
}

bool is_connected(const Graph& g) { return is_connected(g, g.all_vertices()); }

int component_count(const Graph& g, VertexSet within) {
  int count = 0;
  while (within) {
    within &= ~reachable(g, lowest(within), within);
    ++count;
  }
  return count;
}

namespace {

struct Tarjan {
  const Graph& g;
  Classification& out;
  int timer = 0;
  std::array<int, kMaxVertices> disc{};
  std::array<int, kMaxVertices> low{};
  std::vector<std::pair<int, int>> stack{};

  void pop_block(int u, int v) {
    Block block{0, Graph(g.size(), g.white_count())};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      block.graph.add_edge(a, b);
      block.vertices |= vertex_bit(a) | vertex_bit(b);
      if (a == u && b == v) break;
    }
    out.blocks.push_back(std::move(block));
  }

  void dfs(int u, int parent) {
    disc[u] = low[u] = ++timer;
    int children = 0;
    for (VertexSet nb = g.neighbors(u); nb; nb &= nb - 1) {
      const int v = lowest(nb);
      if (disc[v] == 0) {
        ++children;
        stack.emplace_back(u, v);
        dfs(v, u);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          if (parent != -1 || children > 1) out.cutpoints |= vertex_bit(u);
          pop_block(u, v);
        }
      } else if (v != parent && disc[v] < disc[u]) {
        stack.emplace_back(u, v);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  }
};

}  // namespace

Classification classify(const Graph& g) {
  Classification out;
  out.connected = component_count(g, g.all_vertices()) <= 1;
  Tarjan t{g, out};
  for (int v = 0; v < g.size(); ++v)
    if (t.disc[v] == 0) t.dfs(v, -1);
  return out;
}

bool is_biconnected(const Graph& g) {
  const int n = g.size();
  if (n < 2 || !is_connected(g)) return false;
  for (int v = 0; v < n && n > 2; ++v)
    if (!is_connected(g, g.all_vertices() & ~vertex_bit(v))) return false;
  return true;
}

bool is_tree(const Graph& g) { return g.edge_count() == g.size() - 1 && is_connected(g); }

bool is_black_to_white_connected(const Graph& g) {
  VertexSet covered = 0;
  for (int w = 0; w < g.white_count(); ++w) covered |= reachable(g, w, g.all_vertices());
  return covered == g.all_vertices();
}

bool is_articulation_free(const Graph& g) {
  if (g.white_count() == 0 || !is_connected(g)) return false;
  const VertexSet all = g.all_vertices();
  for (int v = 0; v < g.size(); ++v) {
    VertexSet rest = all & ~vertex_bit(v);
    while (rest) {
      const VertexSet comp = reachable(g, lowest(rest), rest);
      if ((comp & g.white_vertices()) == 0) return false;
      rest &= ~comp;
    }
  }
  return true;
}

VertexSet nodal_vertices(const Graph& g) {
  const VertexSet all = g.all_vertices();
  VertexSet nodal = 0;
  for (int v = 0; v < g.size(); ++v) {
    const VertexSet without = all & ~vertex_bit(v);
    bool separates = false;
    for (int a = 0; a < g.white_count() && !separates; ++a) {
      if (a == v) continue;
      const VertexSet before = reachable(g, a, all);
      const VertexSet after = reachable(g, a, without);
      for (int b = a + 1; b < g.white_count(); ++b) {
        if (b == v) continue;
        if ((before & vertex_bit(b)) && !(after & vertex_bit(b))) {
          separates = true;
          break;
        }
      }
    }
    if (separates) nodal |= vertex_bit(v);
  }
  return nodal;
}

std::string_view to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::All: return "all";
    case GraphClass::Connected: return "connected";
    case GraphClass::Biconnected: return "biconnected";
    case GraphClass::Tree: return "tree";
    case GraphClass::RootedTree: return "rooted-tree";
    case GraphClass::BlackToWhiteConnected: return "black-to-white-connected";
    case GraphClass::ArticulationFree: return "articulation-free";
  }
  return "unknown";
}

std::optional<GraphClass> parse_graph_class(std::string_view name) {
  for (auto cls : {GraphClass::All, GraphClass::Connected, GraphClass::Biconnected,
                   GraphClass::Tree, GraphClass::RootedTree,
                   GraphClass::BlackToWhiteConnected, GraphClass::ArticulationFree})
    if (to_string(cls) == name) return cls;
  return std::nullopt;
}

bool belongs_to(const Graph& g, GraphClass cls) {
  switch (cls) {
    case GraphClass::All: return true;
    case GraphClass::Connected: return is_connected(g);
    case GraphClass::Biconnected: return is_biconnected(g);
    case GraphClass::Tree:
    case GraphClass::RootedTree: return is_tree(g);
    case GraphClass::BlackToWhiteConnected: return is_black_to_white_connected(g);
    case GraphClass::ArticulationFree: return is_articulation_free(g);
  }
  return false;
}

Graph pruefer_decode(std::span<const int> sequence, int n_vertices) {
  if (n_vertices < 2 || static_cast<int>(sequence.size()) != n_vertices - 2)
    throw std::invalid_argument("Pruefer sequence length must be n - 2");
  Graph g(n_vertices);
  std::vector<int> degree(static_cast<std::size_t>(n_vertices), 1);
  for (int s : sequence) {
    if (s < 0 || s >= n_vertices) throw std::invalid_argument("Pruefer symbol out of range");
    ++degree[s];
  }
  for (int s : sequence) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    g.add_edge(leaf, s);
    --degree[leaf];
    --degree[s];
  }
  int u = -1;
  for (int v = 0; v < n_vertices; ++v)
    if (degree[v] == 1) {
      if (u < 0) {
        u = v;
      } else {
        g.add_edge(u, v);
        break;
      }
    }
  return g;
}

GraphStream::GraphStream(int n, int whites, GraphClass cls, Mode mode)
    : n_(n), whites_(whites), cls_(cls), mode_(mode) {
  if (mode_ == Mode::Mask) {
    end_mask_ = std::uint64_t{1} << pair_count(n);
  } else {
    pruefer_.assign(static_cast<std::size_t>(n - 2), 0);
  }
}

std::optional<Graph> GraphStream::next() {
  if (done_) return std::nullopt;
  if (mode_ == Mode::Mask) {
    while (next_mask_ < end_mask_) {
      Graph g = Graph::from_edge_mask(n_, next_mask_++, whites_);
      if (belongs_to(g, cls_)) return g;
    }
    done_ = true;
    return std::nullopt;
  }
  Graph g = pruefer_decode(pruefer_, n_);
  g.set_white_count(whites_);
  if (!increment_pruefer(pruefer_, n_)) done_ = true;
  return g;
}

std::vector<Graph> GraphStream::collect() {
  std::vector<Graph> out;
  while (auto g = next()) out.push_back(std::move(*g));
  return out;
}

std::size_t GraphStream::count() {
  std::size_t c = 0;
  while (next()) ++c;
  return c;
}

namespace {

void check_class_needs_whites(GraphClass cls, int whites) {
  if ((cls == GraphClass::BlackToWhiteConnected || cls == GraphClass::ArticulationFree) &&
      whites == 0)
    throw std::invalid_argument(std::string(to_string(cls)) + " requires white vertices");
}

[[noreturn]] void too_large(int n, double bound) {
  throw EnumerationTooLarge("enumeration too large: n = " + std::to_string(n) +
                                " would visit up to " + std::to_string(bound) + " graphs",
                            bound);
}

}  // namespace

GraphStream enumerate(int n, GraphClass cls) {
  if (n < 1) throw std::invalid_argument("enumerate needs n >= 1");
  check_class_needs_whites(cls, 0);
  const int whites = cls == GraphClass::RootedTree ? 1 : 0;
  if (cls == GraphClass::Tree || cls == GraphClass::RootedTree) {
    if (n <= kExhaustiveCap) return GraphStream(n, whites, cls, GraphStream::Mode::Mask);
    if (n <= kTreeCap) return GraphStream(n, whites, cls, GraphStream::Mode::Pruefer);
    too_large(n, std::pow(double(n), n - 2));
  }
  if (n > kExhaustiveCap) too_large(n, std::ldexp(1.0, pair_count(n)));
  return GraphStream(n, whites, cls, GraphStream::Mode::Mask);
}

GraphStream enumerate_bicolored(int n_white, int n_black, GraphClass cls) {
  if (n_white < 1 || n_black < 0)
    throw std::invalid_argument("bicolored enumeration needs n_white >= 1, n_black >= 0");
  const int n = n_white + n_black;
  if (n > kExhaustiveCap) too_large(n, std::ldexp(1.0, pair_count(std::min(n, 40))));
  return GraphStream(n, n_white, cls, GraphStream::Mode::Mask);
}

EnrichedTreeStream::EnrichedTreeStream(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("enriched trees need n >= 0");
  if (n > kEnrichedTreeCap) {
    double bound = std::pow(double(n + 1), n - 1);
    throw EnumerationTooLarge("enumeration too large: enriched trees with n = " +
                                  std::to_string(n) + " exceed the cap",
                              bound);
  }
  if (n >= 2) pruefer_.assign(static_cast<std::size_t>(n - 1), 0);
  trees_exhausted_ = !load_tree();
  fresh_tree_ = true;
}

bool EnrichedTreeStream::load_tree() {
  const int size = n_ + 1;
  if (size == 1) {
    tree_ = Graph(1, 1);
  } else if (size == 2) {
    tree_ = Graph(2, 1);
    tree_.add_edge(0, 1);
  } else {
    tree_ = pruefer_decode(pruefer_, size);
    tree_.set_white_count(1);
  }
  parent_.assign(static_cast<std::size_t>(size), -1);
  children_.assign(static_cast<std::size_t>(size), {});
  std::vector<int> queue{0};
  VertexSet seen = vertex_bit(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (VertexSet nb = tree_.neighbors(u) & ~seen; nb; nb &= nb - 1) {
      const int v = lowest(nb);
      parent_[v] = u;
      children_[u].push_back(v);
      seen |= vertex_bit(v);
      queue.push_back(v);
    }
  }
  growth_.clear();
  for (const auto& ch : children_) growth_.emplace_back(ch.size(), 0);
  return true;
}

bool EnrichedTreeStream::advance_partitions() {
  for (auto it = growth_.rbegin(); it != growth_.rend(); ++it) {
    if (increment_growth(*it)) return true;
    std::fill(it->begin(), it->end(), 0);
  }
  return false;
}

EnrichedTree EnrichedTreeStream::materialize() const {
  EnrichedTree out{tree_, parent_, {}};
  out.child_partitions.resize(children_.size());
  for (std::size_t v = 0; v < children_.size(); ++v) {
    const auto& labels = growth_[v];
    if (labels.empty()) continue;
    const int blocks = *std::max_element(labels.begin(), labels.end()) + 1;
    auto& parts = out.child_partitions[v];
    parts.resize(static_cast<std::size_t>(blocks));
    for (std::size_t c = 0; c < labels.size(); ++c) parts[labels[c]].push_back(children_[v][c]);
  }
  return out;
}

std::optional<EnrichedTree> EnrichedTreeStream::next() {
  if (trees_exhausted_) return std::nullopt;
  if (fresh_tree_) {
    fresh_tree_ = false;
    return materialize();
  }
  if (advance_partitions()) return materialize();
  if (n_ < 2 || !increment_pruefer(pruefer_, n_ + 1)) {
    trees_exhausted_ = true;
    return std::nullopt;
  }
  load_tree();
  return materialize();
}

std::size_t EnrichedTreeStream::count() {
  std::size_t c = 0;
  while (next()) ++c;
  return c;
}

EnrichedTreeStream enumerate_enriched_trees(int n) { return EnrichedTreeStream(n); }

}  // namespace clex
