#pragma once

#include <cexplain/formula.hpp>
#include <cexplain/print.hpp>
#include <cexplain/provenance.hpp>
#include <cexplain/theory.hpp>
#include <cexplain/tree.hpp>

#include <json.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace cexplain {

enum class Format { text, dot, json };

/// Indented outline: the root formula, then one line per node with two
/// spaces per depth. Cutoff nodes carry a "(see above)" suffix.
inline std::string render_tree_text(const ExplanationTree& tree) {
  std::ostringstream os;
  os << print_formula(tree.root) << '\n';
  auto walk = [&](auto&& self, std::size_t id, std::size_t depth) -> void {
    const TreeNode& n = tree.nodes[id];
    os << std::string(2 * depth, ' ') << print_literal(n.literal);
    if (n.cutoff) os << " (see above)";
    os << '\n';
    for (std::size_t c : n.children) self(self, c, depth + 1);
  };
  for (std::size_t id : tree.top) walk(walk, id, 1);
  return os.str();
}

namespace detail {

inline std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string render_tree_dot(const ExplanationTree& tree) {
  std::ostringstream os;
  os << "digraph explanation {\n";
  os << "  node [shape=box];\n";
  os << "  root [label=\"" << detail::dot_escape(print_formula(tree.root)) << "\"];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& n = tree.nodes[i];
    os << "  n" << i << " [label=\"" << detail::dot_escape(print_literal(n.literal)) << '"';
    if (n.cutoff) os << ", style=dashed";
    os << "];\n";
  }
  for (std::size_t c : tree.top) os << "  root -> n" << c << ";\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    for (std::size_t c : tree.nodes[i].children) os << "  n" << i << " -> n" << c << ";\n";
  os << "}\n";
  return os.str();
}

/// {"root": text, "top": [ids], "nodes": [{"id", "literal", "sign",
/// "children", "cutoff"}]}, ids in depth-first preorder.
inline nlohmann::ordered_json tree_to_json(const ExplanationTree& tree) {
  nlohmann::ordered_json j;
  j["root"] = print_formula(tree.root);
  j["top"] = tree.top;
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& n = tree.nodes[i];
    nlohmann::ordered_json o;
    o["id"] = i;
    o["literal"] = print_literal(n.literal);
    o["sign"] = n.literal.positive;
    o["children"] = n.children;
    o["cutoff"] = n.cutoff;
    nodes.push_back(std::move(o));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

inline std::string render_tree(const ExplanationTree& tree, Format fmt) {
  switch (fmt) {
    case Format::dot: return render_tree_dot(tree);
    case Format::json: return tree_to_json(tree).dump(2) + "\n";
    case Format::text: break;
  }
  return render_tree_text(tree);
}

inline std::string render_provenance(const Provenance& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : " ") + print_formula(p[i]);
  s += p.empty() ? "}" : " }";
  return s;
}

inline nlohmann::ordered_json provenances_to_json(const ProvenanceSet& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : s) {
    auto members = nlohmann::ordered_json::array();
    for (const auto& f : p) members.push_back(print_formula(f));
    arr.push_back(std::move(members));
  }
  return arr;
}

/// True atoms of `i` in predicate declaration order. Atoms of defined
/// predicates are left out unless `full`.
inline std::vector<GroundAtom> model_atoms(const Theory& t, const Interpretation& i, bool full) {
  std::vector<GroundAtom> out;
  for (const auto& p : t.predicates) {
    if (!full && t.find_definition(p.name)) continue;
    for (const auto& a : i.atoms())
      if (a.predicate == p.name) out.push_back(a);
  }
  return out;
}

}  // namespace cexplain
