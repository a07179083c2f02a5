#include "elgames/parity_reduction.hpp"

#include "elgames/errors.hpp"

#include <sstream>

namespace elgames
{
  reduction_result reduce_to_parity(const el_game& game, const zielonka_tree& tree,
                                    bool prune)
  {
    if (!(tree.formula() == game.objective) || tree.num_colors() != game.colors.size())
      throw invalid_input("Zielonka tree does not match the game objective");
    const arena& a = game.graph;
    const int n = a.size(), nt = tree.size();

    auto successors = [&](int v, int t) {
      std::vector<int> out;
      if (!tree.is_leaf(t))
        for (int c : tree.vertex(t).children)
          out.push_back(v * nt + c);
      else
        {
          int s = tree.anchor(t, a.colors(v));
          for (int w : a.succ(v))
            out.push_back(w * nt + s);
        }
      return out;
    };

    std::vector<char> keep(static_cast<std::size_t>(n) * nt, prune ? 0 : 1);
    if (prune)
      {
        std::vector<int> stack;
        for (int v = 0; v < n; ++v)
          {
            keep[v * nt] = 1;
            stack.push_back(v * nt);
          }
        while (!stack.empty())
          {
            int x = stack.back();
            stack.pop_back();
            for (int y : successors(x / nt, x % nt))
              if (!keep[y])
                {
                  keep[y] = 1;
                  stack.push_back(y);
                }
          }
      }

    reduction_result r;
    r.tree_size = nt;
    r.index.assign(keep.size(), -1);
    for (std::size_t x = 0; x < keep.size(); ++x)
      if (keep[x])
        {
          int v = static_cast<int>(x) / nt, t = static_cast<int>(x) % nt;
          bool exist = tree.is_leaf(t) ? a.owner(v) == player::exist : !tree.winning(t);
          r.index[x] = r.game.graph.add_node(exist ? player::exist : player::forall);
          r.origin.push_back({v, t});
          int lev = tree.vertex(t).level;
          r.game.priority.push_back(tree.winning(t) ? 2 * lev : 2 * lev + 1);
          r.game.names.push_back("(" + std::to_string(v) + "," + std::to_string(t) + ")");
        }
    for (std::size_t x = 0; x < keep.size(); ++x)
      if (keep[x])
        for (int y : successors(static_cast<int>(x) / nt, static_cast<int>(x) % nt))
          r.game.graph.add_edge(r.index[x], r.index[y]);
    return r;
  }

  std::string export_pgsolver(const parity_game& pg)
  {
    std::ostringstream os;
    const arena& a = pg.graph;
    os << "parity " << a.size() - 1 << ";\n";
    for (int v = 0; v < a.size(); ++v)
      {
        os << v << ' ' << pg.priority[v] << ' '
           << (a.owner(v) == player::exist ? 0 : 1) << ' ';
        const auto& s = a.succ(v);
        for (std::size_t i = 0; i < s.size(); ++i)
          os << (i ? "," : "") << s[i];
        std::string name = v < static_cast<int>(pg.names.size())
                             ? pg.names[v]
                             : "n" + std::to_string(v);
        os << " \"" << name << "\";\n";
      }
    return os.str();
  }

  std::string parity_to_dot(const parity_game& pg)
  {
    std::ostringstream os;
    const arena& a = pg.graph;
    os << "digraph parity {\n";
    for (int v = 0; v < a.size(); ++v)
      {
        std::string name = v < static_cast<int>(pg.names.size())
                             ? pg.names[v]
                             : std::to_string(v);
        os << "  n" << v << " [shape="
           << (a.owner(v) == player::exist ? "diamond" : "box") << ", label=\""
           << name << "\\n" << pg.priority[v] << "\"];\n";
      }
    for (int v = 0; v < a.size(); ++v)
      for (int w : a.succ(v))
        os << "  n" << v << " -> n" << w << ";\n";
    os << "}\n";
    return os.str();
  }
}
