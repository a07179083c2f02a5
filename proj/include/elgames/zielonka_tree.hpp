#pragma once

#include "elgames/el_formula.hpp"

#include <string>
#include <vector>

namespace elgames
{
  /// Largest color count for which trees are built (children are found by
  /// enumerating all subsets of a label).
  inline constexpr int max_tree_colors = 12;

  struct tree_vertex
  {
    color_set label;
    bool winning = false;
    int parent = -1;
    std::vector<int> children;
    int level = 0;
    int depth = 0;
    /// One past the last vertex of this subtree in preorder.
    int subtree_end = 0;
  };

  /// Zielonka tree of an EL formula. Vertices are numbered in preorder
  /// with children ordered by descending label size, then ascending mask;
  /// this numbering is the fixed total order used throughout.
  class zielonka_tree
  {
  public:
    static zielonka_tree build(const el_formula& phi, int num_colors);

    int size() const { return static_cast<int>(v_.size()); }
    int root() const { return 0; }
    int num_colors() const { return num_colors_; }
    const el_formula& formula() const { return phi_; }

    const tree_vertex& vertex(int t) const { return v_[t]; }
    const std::vector<tree_vertex>& vertices() const { return v_; }
    const std::vector<int>& leaves() const { return leaves_; }

    bool is_leaf(int t) const { return v_[t].children.empty(); }
    bool winning(int t) const { return v_[t].winning; }
    const color_set& label(int t) const { return v_[t].label; }

    /// s is an ancestor of t or s == t.
    bool is_ancestor_or_self(int s, int t) const
    {
      return s <= t && t < v_[s].subtree_end;
    }

    /// The child of s on the path to t (requires s a strict ancestor of t).
    int child_toward(int s, int t) const;
    /// Position of child_toward(s, t) in s's child list.
    int child_index_toward(int s, int t) const;

    /// Ancestors-or-self of t from the root down to t.
    std::vector<int> path_to(int t) const;

    /// Deepest ancestor-or-self of t whose label contains `colors`.
    int anchor(int t, color_set colors) const;

    /// Membership of a node with the given colors in anc^s_t.
    /// Throws invalid_input if s is not an ancestor-or-self of t.
    bool anc_member(int s, int t, color_set colors) const;

    int height() const;
    int max_branching() const;
    int first_leaf() const { return leaves_.front(); }

    std::string to_text(const color_table& colors) const;
    std::string to_dot(const color_table& colors) const;

  private:
    int add_subtree(color_set label, int parent, int level, int depth);

    el_formula phi_;
    int num_colors_ = 0;
    std::vector<tree_vertex> v_;
    std::vector<int> leaves_;
  };

  /// An ultimately periodic sequence of node color sets.
  struct lasso_play
  {
    std::vector<color_set> prefix;
    std::vector<color_set> loop;
  };

  struct walk_result
  {
    int dominating = -1;
    bool winning = false;
  };

  /// Simulates the induced walk of a lasso through the tree, resolving
  /// every branching point by round-robin, until the walk state repeats
  /// at a loop boundary. Returns the top-most vertex visited infinitely
  /// often.
  walk_result fair_induced_walk(const zielonka_tree& tree, const lasso_play& play);
}
