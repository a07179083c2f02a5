#pragma once

#include "elgames/zielonka_tree.hpp"

#include <string>
#include <vector>

namespace elgames
{
  enum class polarity
  {
    lfp,
    gfp
  };

  enum class rhs_kind
  {
    union_children,
    intersect_children,
    leaf_attraction
  };

  /// Color guard of an anc set as a conjunction of negative literals and
  /// (unless `self`) a disjunction over `need_one`.
  struct anc_guard
  {
    int ancestor = 0;
    color_set avoid;
    color_set need_one;
    bool self = false;

    bool holds(color_set node_colors) const
    {
      return (node_colors & avoid).empty()
             && (self || !(node_colors & need_one).empty());
    }
  };

  struct equation
  {
    int var = 0;
    polarity eta = polarity::lfp;
    rhs_kind rhs = rhs_kind::union_children;
    std::vector<int> children;
    /// Leaf equations only: one guard per ancestor-or-self, root first.
    std::vector<anc_guard> terms;
  };

  struct equation_system
  {
    std::vector<equation> equations;

    const equation& at(int t) const { return equations[t]; }
    int size() const { return static_cast<int>(equations.size()); }
  };

  anc_guard make_anc_guard(const zielonka_tree& tree, int s, int t);

  equation_system build_equations(const zielonka_tree& tree);

  /// One equation per line, e.g. "X1 =LFP X2 | X3" or
  /// "X4 =LFP (!c & !d & CPre(X1)) | ...". Variables are numbered from 1.
  std::string to_text(const equation_system& sys, const color_table& colors);
  std::string guard_text(const anc_guard& g, const color_table& colors);
}
