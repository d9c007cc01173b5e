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

#include "lqct/policy_tree.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cctype>
#include <string>
#include <vector>

#include "lqct/error.h"

namespace lqct {

TreeStructure::TreeStructure() : nodes_(1) {}

TreeStructure TreeStructure::Complete(int layers) {
  if (layers < 1) {
    Fail(ErrorCode::kInvalidInput, "a tree needs at least one layer");
  }
  TreeStructureBuilder builder;
  std::vector<int> frontier = {0};
  for (int layer = 1; layer < layers; ++layer) {
    std::vector<int> next;
    for (int v : frontier) {
      auto [l, r] = builder.AddChildren(v);
      next.push_back(l);
      next.push_back(r);
    }
    frontier = std::move(next);
  }
  return std::move(builder).Build();
}

const TreeNode& TreeStructure::node(TreeNodeId i) const {
  if (i < 0 || i >= size()) {
    Fail(ErrorCode::kInvalidInput,
         "unknown tree node " + std::to_string(i));
  }
  return nodes_[i];
}

bool TreeStructure::is_left_child(TreeNodeId i) const {
  const TreeNode& n = node(i);
  return n.parent != kNoTreeNode && nodes_[n.parent].left == i;
}

bool TreeStructure::is_right_child(TreeNodeId i) const {
  const TreeNode& n = node(i);
  return n.parent != kNoTreeNode && nodes_[n.parent].right == i;
}

int TreeStructure::max_depth() const {
  // Canonical order visits depths in non-decreasing order.
  return nodes_.back().depth;
}

std::vector<TreeNodeId> TreeStructure::Route(TreeNodeId i) const {
  std::vector<TreeNodeId> route;
  for (TreeNodeId v = i; v != kNoTreeNode; v = node(v).parent) {
    route.push_back(v);
  }
  std::reverse(route.begin(), route.end());
  return route;
}

std::pair<int, int> TreeStructure::Turns(TreeNodeId i) const {
  int left = 0;
  int right = 0;
  for (TreeNodeId v = i; node(v).parent != kNoTreeNode; v = nodes_[v].parent) {
    if (nodes_[nodes_[v].parent].left == v) {
      ++left;
    } else {
      ++right;
    }
  }
  return {left, right};
}

bool TreeStructure::operator==(const TreeStructure& other) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& a = nodes_[i];
    const TreeNode& b = other.nodes_[i];
    if (a.parent != b.parent || a.left != b.left || a.right != b.right ||
        a.depth != b.depth) {
      return false;
    }
  }
  return true;
}

TreeStructure::Expansion TreeStructure::Expanded(
    std::span<const TreeNodeId> leaves) const {
  TreeStructureBuilder builder;
  // Builder ids coincide with old ids for the existing nodes because the
  // children are re-added in canonical order.
  for (TreeNodeId v = 0; v < size(); ++v) {
    if (!is_leaf(v)) builder.AddChildren(v);
  }
  for (TreeNodeId leaf : leaves) {
    if (!is_leaf(leaf)) {
      Fail(ErrorCode::kInvalidInput,
           "node " + std::to_string(leaf) + " is not a leaf");
    }
    builder.AddChildren(leaf);
  }
  Expansion result;
  std::vector<TreeNodeId> mapping;
  result.structure = std::move(builder).Build(&mapping);
  mapping.resize(nodes_.size());
  result.old_to_new = std::move(mapping);
  return result;
}

TreeStructureBuilder::TreeStructureBuilder() : children_(1, {-1, -1}) {}

std::pair<int, int> TreeStructureBuilder::AddChildren(int parent) {
  if (parent < 0 || parent >= static_cast<int>(children_.size()) ||
      children_[parent].first != -1) {
    Fail(ErrorCode::kInvalidInput, "cannot attach children to node " +
                                       std::to_string(parent));
  }
  int l = static_cast<int>(children_.size());
  children_.push_back({-1, -1});
  children_.push_back({-1, -1});
  children_[parent] = {l, l + 1};
  return {l, l + 1};
}

TreeStructure TreeStructureBuilder::Build(
    std::vector<TreeNodeId>* builder_to_canonical) && {
  std::vector<TreeNodeId> id(children_.size(), kNoTreeNode);
  std::vector<int> order;
  order.reserve(children_.size());
  order.push_back(0);
  id[0] = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    auto [l, r] = children_[order[k]];
    if (l == -1) continue;
    id[l] = static_cast<TreeNodeId>(order.size());
    order.push_back(l);
    id[r] = static_cast<TreeNodeId>(order.size());
    order.push_back(r);
  }
  TreeStructure s;
  s.nodes_.assign(order.size(), TreeNode{});
  for (size_t k = 0; k < order.size(); ++k) {
    auto [l, r] = children_[order[k]];
    if (l == -1) continue;
    TreeNode& n = s.nodes_[k];
    n.left = id[l];
    n.right = id[r];
    s.nodes_[n.left].parent = static_cast<TreeNodeId>(k);
    s.nodes_[n.right].parent = static_cast<TreeNodeId>(k);
    s.nodes_[n.left].depth = n.depth + 1;
    s.nodes_[n.right].depth = n.depth + 1;
  }
  if (builder_to_canonical != nullptr) *builder_to_canonical = std::move(id);
  return s;
}

double NodeReachProb(const TreeStructure& structure, TreeNodeId node,
                     double p) {
  auto [left, right] = structure.Turns(node);
  return std::pow(p, left) * std::pow(1.0 - p, right);
}

double ExpectedCost(const PolicyTree& tree) {
  double cost = 0.0;
  for (TreeNodeId v = 0; v < tree.structure.size(); ++v) {
    if (tree.labels[v].is_query()) {
      cost += NodeReachProb(tree.structure, v, tree.p);
    }
  }
  return cost;
}

std::vector<std::pair<EdgeId, EdgeState>> RouteObservations(
    const PolicyTree& tree, TreeNodeId node) {
  std::vector<std::pair<EdgeId, EdgeState>> observed;
  const TreeStructure& s = tree.structure;
  for (TreeNodeId v = node; s.node(v).parent != kNoTreeNode;
       v = s.node(v).parent) {
    TreeNodeId parent = s.node(v).parent;
    const NodeLabel& label = tree.labels[parent];
    if (!label.is_query()) continue;
    observed.push_back({label.edge, s.node(parent).left == v
                                        ? EdgeState::kOn
                                        : EdgeState::kOff});
  }
  std::reverse(observed.begin(), observed.end());
  return observed;
}

bool IsFirstDone(const PolicyTree& tree, TreeNodeId node) {
  if (tree.labels[node].kind != LabelKind::kDone) return false;
  TreeNodeId parent = tree.structure.node(node).parent;
  return parent == kNoTreeNode ||
         tree.labels[parent].kind != LabelKind::kDone;
}

std::vector<std::string> CheckWellFormed(const PolicyTree& tree, int budget) {
  std::vector<std::string> problems;
  const TreeStructure& s = tree.structure;
  if (static_cast<int>(tree.labels.size()) != s.size()) {
    problems.push_back("label count " + std::to_string(tree.labels.size()) +
                       " does not match node count " +
                       std::to_string(s.size()));
    return problems;
  }
  for (TreeNodeId v = 0; v < s.size(); ++v) {
    const TreeNode& n = s.node(v);
    const NodeLabel& label = tree.labels[v];
    std::string where = "node " + std::to_string(v) + ": ";
    if (n.depth > budget) {
      problems.push_back(where + "deeper than the budget");
    }
    if (label.kind == LabelKind::kLimit && n.depth != budget) {
      problems.push_back(where + "limit leaf above depth B");
    }
    if (label.kind == LabelKind::kLimit && !s.is_leaf(v)) {
      problems.push_back(where + "limit leaf has children");
    }
    if (label.kind == LabelKind::kDone && !s.is_leaf(v) &&
        (tree.labels[n.left].kind != LabelKind::kDone ||
         tree.labels[n.right].kind != LabelKind::kDone)) {
      problems.push_back(where + "Done node with non-Done child");
    }
    if (label.is_query()) {
      if (n.depth >= budget) {
        problems.push_back(where + "query at depth B");
      }
      for (auto [e, state] : RouteObservations(tree, v)) {
        if (e == label.edge) {
          problems.push_back(where + "edge queried twice on its route");
          break;
        }
      }
    }
  }
  return problems;
}

namespace {

// Position of the first certificate the route does not disprove, or -1.
// Paths die on an Off edge, cuts on an On edge.
int FirstSurvivor(std::span<const Certificate> certificates,
                  const std::vector<std::pair<EdgeId, EdgeState>>& observed,
                  EdgeState killer) {
  for (size_t k = 0; k < certificates.size(); ++k) {
    bool killed = false;
    for (EdgeId e : certificates[k].edges) {
      for (auto [f, state] : observed) {
        if (f == e && state == killer) {
          killed = true;
          break;
        }
      }
      if (killed) break;
    }
    if (!killed) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

std::string DoneViolation::ToString() const {
  return "node " + std::to_string(node) + " claims Done but path #" +
         std::to_string(path_index) + " and cut #" +
         std::to_string(cut_index) + " are both still possible";
}

std::vector<DoneViolation> ValidateDoneClaims(
    const PolicyTree& tree, std::span<const Certificate> paths,
    std::span<const Certificate> cuts) {
  std::vector<DoneViolation> violations;
  for (TreeNodeId v = 0; v < tree.structure.size(); ++v) {
    if (!IsFirstDone(tree, v)) continue;
    auto observed = RouteObservations(tree, v);
    int path = FirstSurvivor(paths, observed, EdgeState::kOff);
    int cut = FirstSurvivor(cuts, observed, EdgeState::kOn);
    if (path >= 0 && cut >= 0) violations.push_back({v, path, cut});
  }
  return violations;
}

PolicyTree Pruned(const PolicyTree& tree) {
  const TreeStructure& s = tree.structure;
  TreeStructureBuilder builder;
  std::vector<NodeLabel> labels = {tree.labels[0]};
  std::vector<std::pair<TreeNodeId, int>> stack = {{0, 0}};
  while (!stack.empty()) {
    auto [v, id] = stack.back();
    stack.pop_back();
    if (s.is_leaf(v) || tree.labels[v].kind == LabelKind::kDone) continue;
    auto [l, r] = builder.AddChildren(id);
    labels.resize(std::max<size_t>(labels.size(), r + 1));
    labels[l] = tree.labels[s.node(v).left];
    labels[r] = tree.labels[s.node(v).right];
    stack.push_back({s.node(v).left, l});
    stack.push_back({s.node(v).right, r});
  }
  std::vector<TreeNodeId> mapping;
  PolicyTree out;
  out.p = tree.p;
  out.structure = std::move(builder).Build(&mapping);
  out.labels.resize(labels.size());
  for (size_t k = 0; k < labels.size(); ++k) out.labels[mapping[k]] = labels[k];
  return out;
}

namespace {

void SerializeNode(const PolicyTree& tree, const Graph& graph, TreeNodeId v,
                   std::string& out) {
  const NodeLabel& label = tree.labels[v];
  switch (label.kind) {
    case LabelKind::kQuery:
      out += "Q:";
      out += graph.edge_name(label.edge);
      break;
    case LabelKind::kDone:
      out += "DONE";
      break;
    case LabelKind::kLimit:
      out += "LIMIT";
      break;
  }
  const TreeNode& n = tree.structure.node(v);
  if (n.left == kNoTreeNode) return;
  out += '(';
  SerializeNode(tree, graph, n.left, out);
  out += ',';
  SerializeNode(tree, graph, n.right, out);
  out += ')';
}

class TreeParser {
 public:
  TreeParser(std::string_view text, const Graph& graph)
      : text_(text), graph_(graph) {}

  PolicyTree Parse(double p) {
    ParseNode(0);
    if (pos_ != text_.size()) Bad("trailing characters");
    std::vector<TreeNodeId> mapping;
    PolicyTree tree;
    tree.p = p;
    tree.structure = std::move(builder_).Build(&mapping);
    tree.labels.resize(labels_.size());
    for (size_t k = 0; k < labels_.size(); ++k) {
      tree.labels[mapping[k]] = labels_[k];
    }
    return tree;
  }

 private:
  [[noreturn]] void Bad(const std::string& what) const {
    Fail(ErrorCode::kInvalidInput, "tree text, offset " +
                                       std::to_string(pos_) + ": " + what);
  }

  bool Consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void ParseNode(int id) {
    if (static_cast<int>(labels_.size()) <= id) labels_.resize(id + 1);
    if (Consume("DONE")) {
      labels_[id] = NodeLabel::Done();
    } else if (Consume("LIMIT")) {
      labels_[id] = NodeLabel::Limit();
    } else if (Consume("Q:")) {
      size_t end = text_.find_first_of("(),", pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view name = text_.substr(pos_, end - pos_);
      auto e = graph_.FindEdge(name);
      if (!e) Bad("unknown edge '" + std::string(name) + "'");
      labels_[id] = NodeLabel::Query(*e);
      pos_ = end;
    } else {
      Bad("expected Q:<edge>, DONE or LIMIT");
    }
    if (!Consume("(")) return;
    auto [l, r] = builder_.AddChildren(id);
    ParseNode(l);
    if (!Consume(",")) Bad("expected ','");
    ParseNode(r);
    if (!Consume(")")) Bad("expected ')'");
  }

  std::string_view text_;
  const Graph& graph_;
  size_t pos_ = 0;
  TreeStructureBuilder builder_;
  std::vector<NodeLabel> labels_;
};

}  // namespace

std::string SerializeTree(const PolicyTree& tree, const Graph& graph) {
  std::string out;
  SerializeNode(tree, graph, 0, out);
  return out;
}

PolicyTree ParseTree(std::string_view text, const Graph& graph, double p) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  while (!text.empty() &&
         std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  return TreeParser(text, graph).Parse(p);
}

}  // namespace lqct
