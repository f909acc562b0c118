#include "capflp/matching.hpp"

#include <deque>
#include <limits>

#include "capflp/error.hpp"

namespace capflp {
namespace {

struct Edge {
  std::size_t to;
  int cap;
  double cost;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, int cap, double cost) {
    adj_[from].push_back(edges_.size());
    edges_.push_back({to, cap, cost});
    adj_[to].push_back(edges_.size());
    edges_.push_back({from, 0, -cost});
    return edges_.size() - 2;
  }

  // Cheapest augmenting path cost from s to t, or +inf when t is unreachable.  Fills parent edges.
  double shortest_path(std::size_t s, std::size_t t, std::vector<std::size_t>& via) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(adj_.size(), inf);
    std::vector<char> queued(adj_.size(), 0);
    via.assign(adj_.size(), npos);
    std::deque<std::size_t> queue{s};
    dist[s] = 0.0;
    queued[s] = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (std::size_t e : adj_[u]) {
        const Edge& edge = edges_[e];
        // Tolerance guards against cycling on floating-point noise.
        if (edge.cap > 0 && dist[u] + edge.cost < dist[edge.to] - 1e-15) {
          dist[edge.to] = dist[u] + edge.cost;
          via[edge.to] = e;
          if (!queued[edge.to]) {
            queued[edge.to] = 1;
            queue.push_back(edge.to);
          }
        }
      }
    }
    return dist[t];
  }

  void augment(std::size_t s, std::size_t t, const std::vector<std::size_t>& via) {
    for (std::size_t v = t; v != s;) {
      const std::size_t e = via[v];
      edges_[e].cap -= 1;
      edges_[e ^ 1].cap += 1;
      v = edges_[e ^ 1].to;
    }
  }

  const Edge& edge(std::size_t e) const { return edges_[e]; }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace

AssignmentResult max_weight_assignment(std::span<const double> weights, std::size_t n, std::span<const int> caps) {
  const std::size_t m = caps.size();
  if (weights.size() != n * m) throw Error(ErrorKind::LengthMismatch, "weight matrix is not n x m");
  const std::size_t source = n + m;
  const std::size_t sink = n + m + 1;
  FlowNetwork net(n + m + 2);
  std::vector<std::size_t> pair_edge(n * m);
  for (std::size_t i = 0; i < n; ++i) net.add_edge(source, i, 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double w = weights[i * m + j];
      if (w < 0.0) throw Error(ErrorKind::InvalidParams, "assignment weights must be non-negative");
      pair_edge[i * m + j] = net.add_edge(i, n + j, 1, -w);
    }
  for (std::size_t j = 0; j < m; ++j) net.add_edge(n + j, sink, caps[j], 0.0);

  std::vector<std::size_t> via;
  for (;;) {
    const double cost = net.shortest_path(source, sink, via);
    if (!(cost < 0.0)) break;  // unreachable, or no strictly improving path
    net.augment(source, sink, via);
  }

  AssignmentResult result;
  result.facility_of.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (net.edge(pair_edge[i * m + j]).cap == 0) {
        result.facility_of[i] = static_cast<int>(j);
        result.value += weights[i * m + j];
      }
  return result;
}

}  // namespace capflp
