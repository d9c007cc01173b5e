// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LQCT_POLICY_TREE_H_
#define LQCT_POLICY_TREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lqct/graph.h"

namespace lqct {

using TreeNodeId = int32_t;
inline constexpr TreeNodeId kNoTreeNode = -1;

struct TreeNode {
  TreeNodeId parent = kNoTreeNode;
  TreeNodeId left = kNoTreeNode;   // On branch.
  TreeNodeId right = kNoTreeNode;  // Off branch.
  int depth = 0;
};

// Binary tree shape. Node ids are always canonical: breadth-first order with
// the left child before the right child, so the root is node 0 and parents
// precede children.
class TreeStructure {
 public:
  // A single root node.
  TreeStructure();

  // Complete tree with `layers` levels (layers >= 1).
  static TreeStructure Complete(int layers);

  struct Expansion;
  // Attaches two children to each listed leaf and renumbers canonically.
  Expansion Expanded(std::span<const TreeNodeId> leaves) const;

  int size() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(TreeNodeId i) const;
  bool is_leaf(TreeNodeId i) const { return node(i).left == kNoTreeNode; }
  bool is_left_child(TreeNodeId i) const;
  bool is_right_child(TreeNodeId i) const;
  int max_depth() const;

  // Root-to-`i` node ids, inclusive at both ends.
  std::vector<TreeNodeId> Route(TreeNodeId i) const;
  // Numbers of On and Off turns taken on the way to `i`.
  std::pair<int, int> Turns(TreeNodeId i) const;

  bool operator==(const TreeStructure& other) const;

 private:
  friend class TreeStructureBuilder;
  std::vector<TreeNode> nodes_;
};

struct TreeStructure::Expansion {
  TreeStructure structure;
  std::vector<TreeNodeId> old_to_new;
};

// Builds canonical structures from nested child lists; node 0 is the root.
class TreeStructureBuilder {
 public:
  TreeStructureBuilder();
  // Returns the ids (in builder numbering) of the new left and right child.
  std::pair<int, int> AddChildren(int parent);
  // Canonicalizes; `builder_to_canonical` receives the id mapping if given.
  TreeStructure Build(std::vector<TreeNodeId>* builder_to_canonical = nullptr) &&;

 private:
  std::vector<std::pair<int, int>> children_;
};

enum class LabelKind : uint8_t { kQuery, kDone, kLimit };

struct NodeLabel {
  LabelKind kind = LabelKind::kDone;
  EdgeId edge = -1;

  static NodeLabel Query(EdgeId e) { return {LabelKind::kQuery, e}; }
  static NodeLabel Done() { return {LabelKind::kDone, -1}; }
  static NodeLabel Limit() { return {LabelKind::kLimit, -1}; }

  bool is_query() const { return kind == LabelKind::kQuery; }
  bool operator==(const NodeLabel& other) const = default;
};

struct PolicyTree {
  TreeStructure structure;
  std::vector<NodeLabel> labels;  // Indexed by node id.
  double p = 0.5;

  bool operator==(const PolicyTree& other) const = default;
};

// p^(left turns) * (1-p)^(right turns). Throws kInvalidInput for unknown nodes.
double NodeReachProb(const TreeStructure& structure, TreeNodeId node, double p);

// Sum of reach probabilities of query nodes, accumulated in node-id order.
double ExpectedCost(const PolicyTree& tree);

// Structural problems (label count, repeated edge on a route, Done node with
// non-Done children, Limit above depth `budget`, nodes deeper than `budget`).
// Empty when the tree is well-formed.
std::vector<std::string> CheckWellFormed(const PolicyTree& tree, int budget);

// Edge observations along the route to `node`: each query ancestor together
// with the answer that leads towards `node`.
std::vector<std::pair<EdgeId, EdgeState>> RouteObservations(
    const PolicyTree& tree, TreeNodeId node);

// A node is "first-time Done" when it is Done and its parent is not.
bool IsFirstDone(const PolicyTree& tree, TreeNodeId node);

struct DoneViolation {
  TreeNodeId node = kNoTreeNode;
  // Index into the path list and the cut list of one certificate that the
  // route neither disproves; both are set since either would be needed.
  int path_index = -1;
  int cut_index = -1;

  std::string ToString() const;
};

// A first-time Done node is correct when the On edges on its route disprove
// every cut in `cuts` or the Off edges disprove every path in `paths`.
std::vector<DoneViolation> ValidateDoneClaims(
    const PolicyTree& tree, std::span<const Certificate> paths,
    std::span<const Certificate> cuts);

// Drops the (all-Done) subtrees below Done nodes. Expected cost and the
// decisions taken are unchanged.
PolicyTree Pruned(const PolicyTree& tree);

// Preorder text form, e.g. "Q:a(DONE,Q:b(Q:c(DONE,DONE),DONE))". Leaves have no
// parentheses; internal nodes list their (On, Off) children.
std::string SerializeTree(const PolicyTree& tree, const Graph& graph);
PolicyTree ParseTree(std::string_view text, const Graph& graph, double p);

}  // namespace lqct

#endif  // LQCT_POLICY_TREE_H_
