#include "elgames/fixpoint_solver.hpp"

#include "elgames/errors.hpp"

namespace elgames
{
  node_set explicit_backend::guard(const anc_guard& g) const
  {
    node_set s(a_.size());
    for (int v = 0; v < a_.size(); ++v)
      if (g.holds(a_.colors(v)))
        s.set(v);
    return s;
  }

  solve_result<node_set> solve_game(const el_game& game, const zielonka_tree& tree)
  {
    if (!(tree.formula() == game.objective) || tree.num_colors() != game.colors.size())
      throw invalid_input("Zielonka tree does not match the game objective");
    equation_system sys = build_equations(tree);
    explicit_backend b(game.graph);
    return solve(sys, b);
  }

  std::vector<std::vector<std::optional<std::vector<int>>>>
  signature_table(const solve_result<node_set>& res, int num_nodes, int tree_size)
  {
    std::vector<std::vector<std::optional<std::vector<int>>>> sig(
      num_nodes, std::vector<std::optional<std::vector<int>>>(tree_size));
    std::vector<int> ctx;
    for_each_record(res.root, ctx,
                    [&](const call_record<node_set>& r, const std::vector<int>& c) {
                      for (int v : r.value().members())
                        {
                          auto& slot = sig[v][r.vertex];
                          if (slot)
                            continue;
                          std::vector<int> s = c;
                          if (r.lfp)
                            s.push_back(*entry_rank(
                              r, [v](const node_set& x) { return x.test(v); }));
                          slot = std::move(s);
                        }
                      return false;
                    });
    return sig;
  }
}
