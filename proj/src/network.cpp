#include "gridmend/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace gridmend {

bool token_less(const std::string& a, const std::string& b) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isdigit(c) != 0;
    });
  };
  if (all_digits(a) && all_digits(b)) {
    // Numeric compare without overflow: strip leading zeros, then
    // shorter-is-smaller, then lexicographic.
    std::string_view av(a), bv(b);
    av.remove_prefix(std::min(av.find_first_not_of('0'), av.size() - 1));
    bv.remove_prefix(std::min(bv.find_first_not_of('0'), bv.size() - 1));
    if (av.size() != bv.size()) return av.size() < bv.size();
    if (av != bv) return av < bv;
    return a < b;  // equal values, e.g. "007" vs "7"
  }
  return a < b;
}

int Network::node_index(const NodeId& id) const {
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
    if (nodes[i].id == id) return i;
  return -1;
}

double Network::total_weight() const {
  double s = 0.0;
  for (const Node& n : nodes) s += n.weight;
  return s;
}

int Network::damaged_count() const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(),
                                        [](const Line& l) { return l.damaged(); }));
}

namespace {

bool valid_id(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

double parse_positive_real(const std::string& tok, int line_no, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line_no, std::string("malformed ") + what + " '" + tok + "'");
  return v;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

Network parse_network(std::string_view text) {
  Network net;
  std::unordered_map<std::string, int> node_idx;
  std::unordered_map<std::string, int> line_idx;
  std::vector<int> edge_line_no;  // source line of each edge, for cycle reports

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "node") {
      if (tok.size() < 3 || tok.size() > 4)
        throw ParseError(line_no, "expected: node <id> <weight> [source]");
      if (!valid_id(tok[1])) throw ParseError(line_no, "bad node id '" + tok[1] + "'");
      if (node_idx.count(tok[1])) throw ParseError(line_no, "duplicate node id '" + tok[1] + "'");
      Node n;
      n.id = tok[1];
      n.weight = parse_positive_real(tok[2], line_no, "node weight");
      if (n.weight < 0.0) throw ParseError(line_no, "negative node weight");
      if (tok.size() == 4) {
        if (tok[3] != "source") throw ParseError(line_no, "unexpected token '" + tok[3] + "'");
        if (net.source >= 0) throw ParseError(line_no, "multiple source nodes");
        n.is_source = true;
        net.source = static_cast<int>(net.nodes.size());
      }
      node_idx.emplace(n.id, static_cast<int>(net.nodes.size()));
      net.nodes.push_back(std::move(n));
    } else if (tok[0] == "edge") {
      if (tok.size() < 5 || tok.size() > 6)
        throw ParseError(line_no, "expected: edge <id> <u> <v> <intact|damaged> [<repair_time>]");
      if (!valid_id(tok[1])) throw ParseError(line_no, "bad edge id '" + tok[1] + "'");
      if (line_idx.count(tok[1])) throw ParseError(line_no, "duplicate edge id '" + tok[1] + "'");
      Line l;
      l.id = tok[1];
      l.u = tok[2];
      l.v = tok[3];
      if (tok[4] == "damaged")
        l.status = LineStatus::kDamaged;
      else if (tok[4] == "intact")
        l.status = LineStatus::kIntact;
      else
        throw ParseError(line_no, "unknown status '" + tok[4] + "'");
      if (l.damaged()) {
        if (tok.size() != 6) throw ParseError(line_no, "damaged edge needs a repair time");
        l.repair_time = parse_positive_real(tok[5], line_no, "repair time");
        if (l.repair_time <= 0.0) throw ParseError(line_no, "nonpositive repair time");
      } else if (tok.size() == 6) {
        throw ParseError(line_no, "intact edge must not carry a repair time");
      }
      line_idx.emplace(l.id, static_cast<int>(net.lines.size()));
      edge_line_no.push_back(line_no);
      net.lines.push_back(std::move(l));
    } else {
      throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
    }
  }

  if (net.nodes.empty()) throw InputError("network has no nodes");
  if (net.source < 0) throw InputError("no source node declared");

  Dsu dsu(static_cast<int>(net.nodes.size()));
  for (std::size_t e = 0; e < net.lines.size(); ++e) {
    const Line& l = net.lines[e];
    auto iu = node_idx.find(l.u);
    auto iv = node_idx.find(l.v);
    if (iu == node_idx.end())
      throw ParseError(edge_line_no[e], "unknown endpoint '" + l.u + "'");
    if (iv == node_idx.end())
      throw ParseError(edge_line_no[e], "unknown endpoint '" + l.v + "'");
    if (!dsu.unite(iu->second, iv->second))
      throw ParseError(edge_line_no[e], "edge '" + l.id + "' closes a cycle");
  }
  // Acyclic with |nodes| - 1 edges iff connected; anything less is disconnected.
  if (net.lines.size() + 1 != net.nodes.size())
    throw InputError("network is disconnected (" +
                     std::to_string(net.nodes.size() - net.lines.size()) + " components)");
  return net;
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

DamagedComponentGraph contract(const Network& net) {
  const int n = static_cast<int>(net.nodes.size());
  Dsu dsu(n);
  for (const Line& l : net.lines)
    if (!l.damaged()) dsu.unite(net.node_index(l.u), net.node_index(l.v));

  DamagedComponentGraph g;
  g.supernode_of.assign(n, -1);
  std::unordered_map<int, int> comp_index;  // dsu root -> supernode index
  for (int i = 0; i < n; ++i) {
    int root = dsu.find(i);
    auto [it, fresh] = comp_index.emplace(root, static_cast<int>(g.supernodes.size()));
    if (fresh) g.supernodes.emplace_back();
    Supernode& sn = g.supernodes[it->second];
    sn.members.push_back(i);
    sn.weight += net.nodes[i].weight;
    g.supernode_of[i] = it->second;
  }
  for (Supernode& sn : g.supernodes) {
    std::sort(sn.members.begin(), sn.members.end(), [&](int a, int b) {
      return token_less(net.nodes[a].id, net.nodes[b].id);
    });
    sn.id = net.nodes[sn.members.front()].id;
  }
  g.source_supernode = g.supernode_of[net.source];

  // Orient damaged lines away from the source by BFS over the supernode tree.
  std::vector<std::vector<std::pair<int, int>>> adj(g.supernodes.size());  // (line, other)
  std::vector<std::pair<int, int>> endpoints;  // per damaged line: supernode pair
  std::vector<int> damaged_lines;
  for (int e = 0; e < static_cast<int>(net.lines.size()); ++e) {
    const Line& l = net.lines[e];
    if (!l.damaged()) continue;
    int su = g.supernode_of[net.node_index(l.u)];
    int sv = g.supernode_of[net.node_index(l.v)];
    if (su == sv)
      throw InputError("damaged line '" + l.id + "' connects nodes in the same intact component");
    int idx = static_cast<int>(damaged_lines.size());
    damaged_lines.push_back(e);
    endpoints.emplace_back(su, sv);
    adj[su].emplace_back(idx, sv);
    adj[sv].emplace_back(idx, su);
  }

  std::vector<int> dist(g.supernodes.size(), -1);
  std::queue<int> bfs;
  bfs.push(g.source_supernode);
  dist[g.source_supernode] = 0;
  while (!bfs.empty()) {
    int s = bfs.front();
    bfs.pop();
    for (auto [line, other] : adj[s]) {
      if (dist[other] >= 0) continue;
      dist[other] = dist[s] + 1;
      bfs.push(other);
    }
  }

  g.edges.resize(damaged_lines.size());
  for (std::size_t i = 0; i < damaged_lines.size(); ++i) {
    const Line& l = net.lines[damaged_lines[i]];
    auto [su, sv] = endpoints[i];
    SuperEdge& edge = g.edges[i];
    edge.line = l.id;
    edge.repair_time = l.repair_time;
    // The radial network is connected and acyclic, so exactly one endpoint is
    // closer to the source.
    if (dist[su] < dist[sv]) {
      edge.head = su;
      edge.tail = sv;
    } else {
      edge.head = sv;
      edge.tail = su;
    }
  }
  return g;
}

namespace {

void finalize_forest(PrecedenceForest& p) {
  const int n = static_cast<int>(p.jobs.size());
  p.children.assign(n, {});
  int roots = 0;
  for (int j = 0; j < n; ++j) {
    int par = p.jobs[j].parent;
    if (par == -1) {
      ++roots;
      p.root = j;
    } else {
      if (par < 0 || par >= n || par == j)
        throw std::logic_error("bad parent index in precedence forest");
      p.children[par].push_back(j);
    }
  }
  if (roots != 1) throw std::logic_error("precedence forest must have exactly one root");
  for (auto& c : p.children) std::sort(c.begin(), c.end());

  p.id_rank.assign(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return token_less(p.jobs[a].id, p.jobs[b].id); });
  for (int r = 0; r < n; ++r) p.id_rank[order[r]] = r;

  if (static_cast<int>(p.topo_order().size()) != n)
    throw std::logic_error("precedence forest contains a cycle");
}

}  // namespace

int PrecedenceForest::index_of(const LineId& id) const {
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j)
    if (jobs[j].id == id) return j;
  return -1;
}

std::vector<int> PrecedenceForest::topo_order() const {
  std::vector<int> order;
  order.reserve(jobs.size());
  if (root < 0) return order;
  order.push_back(root);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int c : children[order[k]]) order.push_back(c);
  return order;
}

PrecedenceForest build_precedence(const DamagedComponentGraph& g) {
  // entering[s] = index of the damaged line whose tail supernode is s.
  std::vector<int> entering(g.supernodes.size(), -1);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
    entering[g.edges[e].tail] = e;

  std::vector<int> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return token_less(g.edges[a].line, g.edges[b].line); });
  std::vector<int> job_of_edge(g.edges.size(), -1);
  for (int j = 0; j < static_cast<int>(order.size()); ++j) job_of_edge[order[j]] = j;

  std::vector<Job> jobs(order.size());
  for (int j = 0; j < static_cast<int>(order.size()); ++j) {
    const SuperEdge& e = g.edges[order[j]];
    Job& job = jobs[j];
    job.id = e.line;
    job.weight = g.supernodes[e.tail].weight;
    job.processing = e.repair_time;
    int up = entering[e.head];  // damaged line feeding e's head supernode
    job.parent = up >= 0 ? job_of_edge[up] : -1;
  }
  return forest_from_jobs(std::move(jobs));
}

PrecedenceForest forest_from_jobs(std::vector<Job> jobs) {
  PrecedenceForest p;
  p.jobs = std::move(jobs);
  int roots = 0;
  for (const Job& j : p.jobs)
    if (j.parent == -1) ++roots;
  if (roots != 1) {
    // More than one parentless job (or none at all, which finalize rejects):
    // hang everything under a zero-weight, zero-time dummy root.
    int dummy = static_cast<int>(p.jobs.size());
    for (Job& j : p.jobs)
      if (j.parent == -1) j.parent = dummy;
    p.jobs.push_back(Job{kDummyRootId, 0.0, 0.0, -1});
    p.has_dummy_root = true;
  }
  finalize_forest(p);
  return p;
}

}  // namespace gridmend
