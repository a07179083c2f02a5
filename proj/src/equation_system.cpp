#include "elgames/equation_system.hpp"

#include <sstream>

namespace elgames
{
  anc_guard make_anc_guard(const zielonka_tree& tree, int s, int t)
  {
    anc_guard g;
    g.ancestor = s;
    g.avoid = color_set::full(tree.num_colors()).minus(tree.label(s));
    g.self = s == t;
    if (!g.self)
      g.need_one = tree.label(s).minus(tree.label(tree.child_toward(s, t)));
    return g;
  }

  equation_system build_equations(const zielonka_tree& tree)
  {
    equation_system sys;
    for (int t = 0; t < tree.size(); ++t)
      {
        equation e;
        e.var = t;
        e.eta = tree.winning(t) ? polarity::gfp : polarity::lfp;
        if (tree.is_leaf(t))
          {
            e.rhs = rhs_kind::leaf_attraction;
            for (int s : tree.path_to(t))
              e.terms.push_back(make_anc_guard(tree, s, t));
          }
        else
          {
            e.rhs = tree.winning(t) ? rhs_kind::intersect_children
                                    : rhs_kind::union_children;
            e.children = tree.vertex(t).children;
          }
        sys.equations.push_back(std::move(e));
      }
    return sys;
  }

  std::string guard_text(const anc_guard& g, const color_table& colors)
  {
    std::string out;
    for (int c : g.avoid.members())
      out += (out.empty() ? "!" : " & !") + colors.name(c);
    if (!g.self)
      {
        std::string any;
        auto need = g.need_one.members();
        for (int c : need)
          any += (any.empty() ? "" : " | ") + colors.name(c);
        if (need.size() > 1 && !out.empty())
          any = "(" + any + ")";
        out += (out.empty() ? "" : " & ") + any;
      }
    return out.empty() ? "true" : out;
  }

  std::string to_text(const equation_system& sys, const color_table& colors)
  {
    std::ostringstream os;
    for (const auto& e : sys.equations)
      {
        os << 'X' << e.var + 1 << " =" << (e.eta == polarity::lfp ? "LFP" : "GFP")
           << ' ';
        if (e.rhs == rhs_kind::leaf_attraction)
          {
            for (std::size_t i = 0; i < e.terms.size(); ++i)
              os << (i ? " | " : "") << '(' << guard_text(e.terms[i], colors)
                 << " & CPre(X" << e.terms[i].ancestor + 1 << "))";
          }
        else
          {
            const char* op = e.rhs == rhs_kind::union_children ? " | " : " & ";
            for (std::size_t i = 0; i < e.children.size(); ++i)
              os << (i ? op : "") << 'X' << e.children[i] + 1;
          }
        os << '\n';
      }
    return os.str();
  }
}
