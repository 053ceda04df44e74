#pragma once

#include <cexplain/error.hpp>
#include <cexplain/explain.hpp>
#include <cexplain/formula.hpp>
#include <cexplain/interest.hpp>
#include <cexplain/theory.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace cexplain {

struct TreeNode {
  Literal literal;
  int interest = 0;
  std::vector<std::size_t> children;
  // Defined literal already expanded earlier in the tree; never has children.
  bool cutoff = false;
};

/// Nodes are stored in depth-first preorder; `top` holds the children of the
/// root, which is the explained formula itself.
struct ExplanationTree {
  Formula root;
  bool root_value = false;
  int root_interest = 0;
  std::vector<std::size_t> top;
  std::vector<TreeNode> nodes;

  // Children of `id`, or of the root when `id` is nullopt.
  const std::vector<std::size_t>& children_of(std::optional<std::size_t> id) const {
    return id ? nodes.at(*id).children : top;
  }
};

struct TreeOptions {
  // Siblings matching one of these literals move to the front of their
  // sibling list (in this list's order) before expansion; the rest keep their
  // order.
  std::vector<Literal> expand_first;
  // Omit cutoff nodes from the tree instead of showing them as leaves.
  bool drop_cutoffs = false;
};

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const Theory& t, const Interpretation& i, const InterestMap& m, const TreeOptions& opts)
      : t_(t), i_(i), m_(m), opts_(opts) {}

  ExplanationTree run(const Formula& root) {
    ExplanationTree tree{root, false, 0, {}, {}};
    Explanation e = explain(root, t_, i_, m_);
    tree.root_value = e.value;
    tree.root_interest = e.interest;
    tree_ = &tree;
    tree.top = expand_all(ordered(std::move(e.literals)));
    return tree;
  }

 private:
  std::vector<Literal> ordered(std::vector<Literal> lits) const {
    if (opts_.expand_first.empty()) return lits;
    std::vector<Literal> out;
    for (const auto& want : opts_.expand_first) {
      auto it = std::find(lits.begin(), lits.end(), want);
      if (it == lits.end()) continue;
      out.push_back(*it);
      lits.erase(it);
    }
    out.insert(out.end(), lits.begin(), lits.end());
    return out;
  }

  std::vector<std::size_t> expand_all(const std::vector<Literal>& lits) {
    std::vector<std::size_t> ids;
    for (const auto& l : lits)
      if (auto id = expand(l)) ids.push_back(*id);
    return ids;
  }

  std::optional<std::size_t> expand(const Literal& l) {
    const Definition* d = l.is_equality() ? nullptr : t_.find_definition(l.atom.predicate());
    const bool repeated = d && expanded_.count(l) != 0;
    if (repeated && opts_.drop_cutoffs) return std::nullopt;

    const std::size_t id = tree_->nodes.size();
    tree_->nodes.push_back(TreeNode{l, m_.of(l), {}, repeated});
    if (!d || repeated) return id;

    expanded_.insert(l);
    Explanation e = explain(instantiate_definition(*d, l.atom.args(), l.positive), t_, i_, m_);
    std::vector<std::size_t> kids = expand_all(ordered(std::move(e.literals)));
    tree_->nodes[id].children = std::move(kids);
    return id;
  }

  const Theory& t_;
  const Interpretation& i_;
  const InterestMap& m_;
  const TreeOptions& opts_;
  ExplanationTree* tree_ = nullptr;
  std::set<Literal> expanded_;
};

}  // namespace detail

/// Explains `root` under `i`, then repeatedly unfolds each defined literal of
/// an explanation through its definition (negated for a negative literal)
/// and explains the result. Construction is depth-first in explanation
/// order. A defined literal that was already expanded anywhere earlier is
/// a cutoff leaf.
inline ExplanationTree build_tree(const Theory& t, const Formula& root, const Interpretation& i,
                                  const InterestMap& m, const TreeOptions& opts = {}) {
  return detail::TreeBuilder(t, i, m, opts).run(root);
}

/// The tree rooted at the theory's goal.
inline ExplanationTree build_tree(const Theory& t, const Interpretation& i, const InterestMap& m,
                                  const TreeOptions& opts = {}) {
  if (!t.goal) throw InputError("theory has no goal");
  return build_tree(t, *t.goal, i, m, opts);
}

}  // namespace cexplain
