#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "netequil/error.hpp"
#include "netequil/matgraph.hpp"

namespace netequil {
namespace {

std::vector<std::vector<std::size_t>> successors(const Matrix& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w(i, j) != 0.0) adj[i].push_back(j);
  return adj;
}

// Iterative Tarjan. Components come out in reverse topological order.
std::vector<std::size_t> tarjan(const std::vector<std::vector<std::size_t>>& adj, std::size_t& count) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < adj[v].size()) {
        const std::size_t w = adj[v][e++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = false;
          comp[x] = count;
        } while (x != done);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace

Condensation scc_condensation(const Matrix& w) {
  const std::size_t n = w.size();
  const auto adj = successors(w);
  std::size_t count = 0;
  const auto raw = tarjan(adj, count);

  // Relabel blocks by smallest member.
  std::vector<std::size_t> first(count, n);
  for (std::size_t v = 0; v < n; ++v) first[raw[v]] = std::min(first[raw[v]], v);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
  std::vector<std::size_t> relabel(count);
  for (std::size_t k = 0; k < count; ++k) relabel[order[k]] = k;

  Condensation c;
  c.blocks.resize(count);
  c.kind.assign(count, BlockKind::InSubgraph);
  c.block_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    c.block_of[v] = relabel[raw[v]];
    c.blocks[c.block_of[v]].push_back(v);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u : adj[v])
      if (c.block_of[u] != c.block_of[v]) c.kind[c.block_of[v]] = BlockKind::OutSubgraph;

  // Tarjan emits sinks first; reversing gives sources first.
  c.topo_order.resize(count);
  for (std::size_t k = 0; k < count; ++k) c.topo_order[count - 1 - k] = relabel[k];
  return c;
}

VertexSet reachable_from(const Matrix& w, const VertexSet& from) {
  const std::size_t n = w.size();
  const auto adj = successors(w);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t v : from) {
    seen.at(v) = true;
    queue.push_back(v);
  }
  VertexSet out;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : adj[v]) {
      if (seen[u]) continue;
      seen[u] = true;
      out.push_back(u);
      queue.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_acyclic(const Matrix& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w(i, i) != 0.0) return false;
  const auto c = scc_condensation(w);
  return c.block_count() == w.size();
}

bool is_irreducible(const Matrix& w) { return w.size() > 0 && scc_condensation(w).block_count() == 1; }

ChainResult weakly_chained_check(const Matrix& w, Orientation orientation) {
  if (!w.is_nonnegative()) throw Error(ErrorCode::NonNegativityViolated, "weakly chained check needs W >= 0");
  const Matrix m = orientation == Orientation::Row ? w : w.transpose();
  const std::size_t n = m.size();
  const Vector sums = m.row_sums();

  VertexSet over;
  VertexSet deficient;
  for (std::size_t i = 0; i < n; ++i) {
    if (sums[i] > 1.0 + kDeficiencyTol) over.push_back(i);
    if (sums[i] < 1.0 - kDeficiencyTol) deficient.push_back(i);
  }
  if (!over.empty()) return ChainFailure{ChainFailure::Kind::NotSubstochastic, over};

  // Backward BFS from the deficient set; next_hop[i] is the first step of a
  // shortest path from i to a deficient vertex.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next_hop(n, kNone);
  std::vector<bool> reached(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t t : deficient) {
    reached[t] = true;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      if (reached[i] || !(m(i, t) > 0.0)) continue;
      reached[i] = true;
      next_hop[i] = t;
      queue.push_back(i);
    }
  }

  VertexSet stranded;
  for (std::size_t i = 0; i < n; ++i)
    if (!reached[i]) stranded.push_back(i);
  if (!stranded.empty()) return ChainFailure{ChainFailure::Kind::NoChain, stranded};

  ChainWitness witness;
  witness.orientation = orientation;
  witness.deficient = deficient;
  witness.chains.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (next_hop[i] == kNone) continue;
    auto& path = witness.chains[i];
    for (std::size_t v = i; v != kNone; v = next_hop[v]) path.push_back(v);
  }
  return witness;
}

VertexSet complement(std::size_t n, const VertexSet& s) {
  std::vector<bool> in(n, false);
  for (std::size_t v : s) {
    if (v >= n) throw Error(ErrorCode::DimensionMismatch, "vertex " + std::to_string(v + 1) + " out of range", v);
    in[v] = true;
  }
  VertexSet out;
  for (std::size_t v = 0; v < n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

Matrix restrict_to(const Matrix& a, const VertexSet& keep) {
  Matrix m(keep.size());
  for (std::size_t p = 0; p < keep.size(); ++p)
    for (std::size_t q = 0; q < keep.size(); ++q) m(p, q) = a(keep[p], keep[q]);
  return m;
}

Matrix principal_submatrix(const Matrix& a, const VertexSet& remove) {
  const VertexSet keep = complement(a.size(), remove);
  if (keep.empty()) throw Error(ErrorCode::RemoveAll, "cannot remove every vertex");
  return restrict_to(a, keep);
}

}  // namespace netequil
