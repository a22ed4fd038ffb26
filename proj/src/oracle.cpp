#include "lagtor/oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace lagtor {

namespace {

using State = std::vector<long long>;

uint64_t pack(const State& v) {
  // components fit in 16 bits each for any instance this oracle accepts
  uint64_t key = 0;
  for (long long x : v) key = (key << 16) | uint64_t(x);
  return key;
}

bool leq_perm_int(State v, State w) {
  std::sort(v.begin(), v.end());
  std::sort(w.begin(), w.end());
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] > w[i]) return false;
  return true;
}

}  // namespace

OracleResult bfs_low_path(const IntInstance& inst) {
  size_t k = inst.d.size();
  if (k == 0 || inst.e.size() != k)
    throw InputError("oracle needs nonempty vectors of equal length");
  if (k > 4) throw InputError("oracle instances are limited to k <= 4");
  for (long long x : inst.d)
    if (x < 1 || x > 4096) throw InputError("oracle component out of range");
  for (long long x : inst.e)
    if (x < 1 || x > 4096) throw InputError("oracle component out of range");

  // moves in lexicographic order: (i, j) then P < M < I
  std::vector<Move> catalog;
  for (size_t i = 1; i <= k; ++i)
    for (size_t j = 1; j <= k; ++j) {
      if (i == j) continue;
      catalog.push_back({MoveKind::P, int(i), int(j)});
      catalog.push_back({MoveKind::M, int(i), int(j)});
      if (i < j) catalog.push_back({MoveKind::I, int(i), int(j)});
    }

  struct Node {
    State state;
    long long parent;
    Move via;
  };
  std::vector<Node> nodes;
  std::unordered_map<uint64_t, size_t> seen;
  nodes.push_back({inst.d, -1, {}});
  seen[pack(inst.d)] = 0;

  OracleResult res;
  for (size_t head = 0; head < nodes.size(); ++head) {
    ++res.nodes_expanded;
    if (nodes[head].state == inst.e) {
      res.found = true;
      for (long long at = (long long)head; nodes[at].parent >= 0;
           at = nodes[at].parent)
        res.moves.push_back(nodes[at].via);
      std::reverse(res.moves.begin(), res.moves.end());
      return res;
    }
    for (const Move& m : catalog) {
      State next = nodes[head].state;
      size_t i = size_t(m.i) - 1, j = size_t(m.j) - 1;
      switch (m.kind) {
        case MoveKind::P: next[i] += next[j]; break;
        case MoveKind::M: next[i] -= next[j]; break;
        case MoveKind::I: std::swap(next[i], next[j]); break;
      }
      if (next[i] < 1) continue;
      if (!leq_perm_int(next, inst.d) && !leq_perm_int(next, inst.e))
        continue;
      uint64_t key = pack(next);
      if (seen.contains(key)) continue;
      if (nodes.size() >= inst.node_cap)
        throw StateSpaceCap("oracle exceeded its node cap");
      seen[key] = nodes.size();
      nodes.push_back({std::move(next), (long long)head, m});
    }
  }
  return res;  // NotFound
}

}  // namespace lagtor
