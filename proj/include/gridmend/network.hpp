#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridmend/errors.hpp"

namespace gridmend {

using NodeId = std::string;
using LineId = std::string;

// Natural token order: two all-digit tokens compare numerically, everything
// else lexicographically. This is the order behind every "lowest id" tie rule.
bool token_less(const std::string& a, const std::string& b);

enum class LineStatus { kIntact, kDamaged };

struct Node {
  NodeId id;
  double weight = 0.0;
  bool is_source = false;
};

struct Line {
  LineId id;
  NodeId u, v;
  LineStatus status = LineStatus::kIntact;
  double repair_time = 0.0;  // > 0 iff damaged
  bool damaged() const { return status == LineStatus::kDamaged; }
};

// A validated radial network: one source, connected, |lines| = |nodes| - 1.
struct Network {
  std::vector<Node> nodes;  // file order
  std::vector<Line> lines;  // file order
  int source = -1;          // index into nodes

  int node_index(const NodeId& id) const;
  double total_weight() const;
  int damaged_count() const;
};

// Line-oriented format, '#' starts a comment:
//   node <id> <weight> [source]
//   edge <id> <u> <v> <intact|damaged> [<repair_time>]
// Ids are alphanumeric-plus-underscore tokens. Throws ParseError (with a
// 1-based line number) on malformed input, and InputError for whole-file
// problems (no source, cycle, disconnected).
Network parse_network(std::string_view text);
Network load_network(const std::string& path);

// Maximal intact-connected components of the network.
struct Supernode {
  std::string id;            // smallest member node id in token order
  std::vector<int> members;  // node indices, token-sorted
  double weight = 0.0;       // sum of member weights
};

// One damaged line, oriented away from the source: head is the endpoint's
// supernode on the source side, tail the other.
struct SuperEdge {
  LineId line;
  double repair_time = 0.0;
  int head = -1;
  int tail = -1;
};

struct DamagedComponentGraph {
  std::vector<Supernode> supernodes;
  std::vector<SuperEdge> edges;   // one per damaged line
  int source_supernode = -1;
  std::vector<int> supernode_of;  // node index -> supernode index
};

// Contracts intact lines away. Rejects a damaged line whose endpoints fall in
// the same supernode (its repair would close an energized loop).
DamagedComponentGraph contract(const Network& net);

// Internal id of the fictitious root job ('(' keeps it outside the legal
// network id charset, so it can never collide with a real line).
inline constexpr const char* kDummyRootId = "(root)";

struct Job {
  LineId id;
  double weight = 0.0;      // aggregate weight of the tail supernode
  double processing = 0.0;  // repair time; 0 for the dummy root
  int parent = -1;          // job index; -1 for the root
};

// Jobs are the damaged lines; j's parent is the unique damaged line entering
// j's head supernode. Real jobs come first in token order of their line ids;
// a dummy root is appended iff the graph has more than one parentless job.
struct PrecedenceForest {
  std::vector<Job> jobs;
  std::vector<std::vector<int>> children;  // child indices, ascending
  std::vector<int> id_rank;                // job -> rank of its id in token order
  int root = -1;
  bool has_dummy_root = false;

  int real_count() const { return static_cast<int>(jobs.size()) - (has_dummy_root ? 1 : 0); }
  bool is_dummy(int j) const { return has_dummy_root && j == root; }
  int index_of(const LineId& id) const;  // -1 if unknown
  std::vector<int> topo_order() const;   // root first, parents before children
};

PrecedenceForest build_precedence(const DamagedComponentGraph& g);

// Assembles a forest from explicit jobs (parents given as indices into `jobs`,
// -1 for roots); appends the dummy root when more than one root is present.
// Used by generators and tests that work on bare trees.
PrecedenceForest forest_from_jobs(std::vector<Job> jobs);

}  // namespace gridmend
