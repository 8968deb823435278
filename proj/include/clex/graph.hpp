#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clex {

inline constexpr int kMaxVertices = 16;
inline constexpr int kExhaustiveCap = 7;
inline constexpr int kTreeCap = 12;
inline constexpr int kEnrichedTreeCap = 8;

// Bit v set means vertex v belongs to the set.
using VertexSet = std::uint32_t;

constexpr VertexSet vertex_bit(int v) noexcept { return VertexSet{1} << v; }
constexpr VertexSet first_vertices(int n) noexcept { return (VertexSet{1} << n) - 1; }

class EnumerationTooLarge : public std::length_error {
 public:
  EnumerationTooLarge(const std::string& what, double count_bound)
      : std::length_error(what), count_bound_(count_bound) {}
  double count_bound() const noexcept { return count_bound_; }

 private:
  double count_bound_;
};

// Edge slot of the pair {i, j} in colex order: (0,1),(0,2),(1,2),(0,3),...
constexpr int edge_index(int i, int j) noexcept {
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}
constexpr int pair_count(int n) noexcept { return n * (n - 1) / 2; }

// Labeled simple graph. The first white_count vertices are white (roots).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n_vertices, int white_count = 0);
  static Graph from_edge_mask(int n_vertices, std::uint64_t mask, int white_count = 0);
  static Graph from_edges(int n_vertices, std::span<const std::pair<int, int>> edges,
                          int white_count = 0);

  int size() const noexcept { return n_; }
  int white_count() const noexcept { return whites_; }
  int black_count() const noexcept { return n_ - whites_; }
  bool is_white(int v) const noexcept { return v < whites_; }
  VertexSet all_vertices() const noexcept { return first_vertices(n_); }
  VertexSet white_vertices() const noexcept { return first_vertices(whites_); }
  VertexSet neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  void set_white_count(int w);

  int edge_count() const noexcept;
  std::vector<std::pair<int, int>> edges() const;
  // Requires n <= 11 so that all slots fit in 64 bits.
  std::uint64_t edge_mask() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_pair(int i, int j) const;

  int n_ = 0;
  int whites_ = 0;
  std::array<VertexSet, kMaxVertices> adj_{};
};

VertexSet reachable(const Graph& g, int from, VertexSet within);
bool is_connected(const Graph& g, VertexSet within);
bool is_connected(const Graph& g);
int component_count(const Graph& g, VertexSet within);

struct Block {
  VertexSet vertices = 0;
  Graph graph;  // same vertex labels as the parent, only the block's edges
};

struct Classification {
  bool connected = false;
  VertexSet cutpoints = 0;
  std::vector<Block> blocks;
};

Classification classify(const Graph& g);
bool is_biconnected(const Graph& g);
bool is_tree(const Graph& g);
bool is_black_to_white_connected(const Graph& g);
bool is_articulation_free(const Graph& g);
VertexSet nodal_vertices(const Graph& g);

enum class GraphClass {
  All,
  Connected,
  Biconnected,
  Tree,
  RootedTree,
  BlackToWhiteConnected,
  ArticulationFree
};

std::string_view to_string(GraphClass cls);
std::optional<GraphClass> parse_graph_class(std::string_view name);
bool belongs_to(const Graph& g, GraphClass cls);

Graph pruefer_decode(std::span<const int> sequence, int n_vertices);

// Lazy, single-pass stream of graphs.
class GraphStream {
 public:
  std::optional<Graph> next();
  std::vector<Graph> collect();
  std::size_t count();

  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(GraphStream* s) : stream_(s) { ++*this; }
    const Graph& operator*() const { return *current_; }
    const Graph* operator->() const { return &*current_; }
    iterator& operator++() {
      current_ = stream_->next();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return !it.current_.has_value();
    }

   private:
    GraphStream* stream_ = nullptr;
    std::optional<Graph> current_;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  friend GraphStream enumerate(int, GraphClass);
  friend GraphStream enumerate_bicolored(int, int, GraphClass);

  enum class Mode { Mask, Pruefer };
  GraphStream(int n, int whites, GraphClass cls, Mode mode);

  int n_ = 0;
  int whites_ = 0;
  GraphClass cls_ = GraphClass::All;
  Mode mode_ = Mode::Mask;
  std::uint64_t next_mask_ = 0;
  std::uint64_t end_mask_ = 0;
  std::vector<int> pruefer_;
  bool done_ = false;
};

GraphStream enumerate(int n, GraphClass cls);
GraphStream enumerate_bicolored(int n_white, int n_black, GraphClass cls);

struct EnrichedTree {
  Graph tree;               // tree on {0..n}, rooted at 0
  std::vector<int> parent;  // parent[0] == -1
  // child_partitions[v] is a partition of v's children into cliques.
  std::vector<std::vector<std::vector<int>>> child_partitions;
};

class EnrichedTreeStream {
 public:
  explicit EnrichedTreeStream(int n);
  std::optional<EnrichedTree> next();
  std::size_t count();

 private:
  bool load_tree();
  bool advance_partitions();
  EnrichedTree materialize() const;

  int n_;
  std::vector<int> pruefer_;
  bool trees_exhausted_ = false;
  bool fresh_tree_ = false;
  Graph tree_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> growth_;  // restricted growth string per vertex
};

EnrichedTreeStream enumerate_enriched_trees(int n);

}  // namespace clex
