#include "elgames/corpus.hpp"

#include "elgames/fixpoint_solver.hpp"
#include "elgames/game.hpp"
#include "elgames/oracles.hpp"
#include "elgames/strategy.hpp"
#include "elgames/zielonka_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace elgames
{
  namespace
  {
    node_set complement(const node_set& s)
    {
      node_set r(s.width());
      for (int v = 0; v < s.width(); ++v)
        if (!s.test(v))
          r.set(v);
      return r;
    }

    node_set colored(const arena& a, int c)
    {
      node_set r(a.size());
      for (int v = 0; v < a.size(); ++v)
        if (a.colors(v).contains(c))
          r.set(v);
      return r;
    }

    int memory_in_use(const el_strategy& s)
    {
      std::set<int> used;
      for (const auto& [v, m] : s.initial)
        used.insert(m);
      for (const auto& [key, m] : s.update)
        used.insert(m);
      return static_cast<int>(used.size());
    }

    node_set solve_with(const el_game& g, const el_formula& phi)
    {
      el_game h = g;
      h.objective = phi;
      return solve_game(h, zielonka_tree::build(phi, h.colors.size())).winning();
    }
  }

  long tree_size_bound(int k)
  {
    double f = 1;
    for (int i = 2; i <= k; ++i)
      f *= i;
    return static_cast<long>(std::ceil(std::exp(1.0) * f));
  }

  std::string corpus_report::table() const
  {
    std::ostringstream os;
    os << std::left << std::setw(20) << "check" << std::right << std::setw(8) << "pass"
       << std::setw(8) << "fail" << '\n';
    for (const auto& c : checks)
      {
        os << std::left << std::setw(20) << c.name << std::right << std::setw(8) << c.pass
           << std::setw(8) << c.fail;
        if (!c.failures.empty())
          {
            os << "  first failures:";
            for (int i : c.failures)
              os << ' ' << i;
          }
        os << '\n';
      }
    os << "split outcomes " << split << ", max tree size " << max_tree_size << ", max memory " << max_memory << '\n';
    os << agree << '/' << count << " agree\n";
    return os.str();
  }

  corpus_report run_corpus(const corpus_options& o)
  {
    corpus_report rep;
    rep.count = o.count;
    for (const char* name : {"oracle equivalence", "dual complement", "strategy verify",
                             "memory bound", "buchi direct", "parity direct"})
      rep.checks.push_back(corpus_check{name, 0, 0, {}});
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < o.count; ++i)
      {
        random_game_params p;
        p.nodes = std::uniform_int_distribution<int>(1, std::max(1, o.max_nodes))(rng);
        p.colors = std::uniform_int_distribution<int>(1, std::max(1, o.max_colors))(rng);
        el_game g = random_game(rng(), p);
        const int k = g.colors.size();

        bool all = true;
        auto record = [&](int idx, bool ok) {
          auto& c = rep.checks[idx];
          if (ok)
            ++c.pass;
          else
            {
              ++c.fail;
              if (c.failures.size() < 5)
                c.failures.push_back(i);
              all = false;
            }
        };

        auto tree = zielonka_tree::build(g.objective, k);
        auto res = solve_game(g, tree);
        const node_set& win = res.winning();
        rep.max_tree_size = std::max(rep.max_tree_size, tree.size());
        if (!win.none() && win.count() < g.graph.size())
          ++rep.split;

        record(0, win == solve_el_via_reduction(g));

        el_game d = dual_game(g);
        auto dres = solve_game(d, zielonka_tree::build(d.objective, k));
        record(1, dres.winning() == complement(win));

        auto s = extract_strategy(g, tree, res);
        record(2, verify_strategy(g, s, win).ok);

        int mem = memory_in_use(s);
        rep.max_memory = std::max(rep.max_memory, mem);
        int leaves = static_cast<int>(tree.leaves().size());
        record(3, mem <= leaves && static_cast<int>(s.memory.size()) <= leaves &&
                    leaves <= tree_size_bound(k) && tree.size() <= tree_size_bound(k));

        record(4, solve_with(g, objectives::buchi(0)) ==
                    solve_buchi_classic(g.graph, colored(g.graph, 0)));

        std::vector<int> prio(k);
        for (int c = 0; c < k; ++c)
          prio[c] = c;
        el_game pg = g;
        pg.objective = objectives::parity(prio);
        record(5, solve_with(g, pg.objective) == solve_parity_family(pg, prio));

        if (all)
          ++rep.agree;
      }
    return rep;
  }
}
