#include "elgames/corpus.hpp"
#include "elgames/errors.hpp"
#include "elgames/fixpoint_solver.hpp"
#include "elgames/game.hpp"
#include "elgames/oracles.hpp"
#include "elgames/parity_reduction.hpp"
#include "elgames/strategy.hpp"
#include "elgames/synthesis.hpp"
#include "elgames/zielonka_tree.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace elgames;

namespace
{
  constexpr int exit_check = 1;
  constexpr int exit_input = 3;

  struct check_failure : std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  std::string ids(const node_set& s)
  {
    std::string out;
    for (int v : s.members())
      out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
  }

  void write_file(const std::string& path, const std::string& text)
  {
    std::ofstream f(path);
    if (!f)
      throw std::runtime_error("cannot write " + path);
    f << text;
  }

  std::vector<std::string> split_list(const std::string& s)
  {
    std::vector<std::string> r;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos)
          r.push_back(item.substr(b, e - b + 1));
      }
    return r;
  }

  /// Colors in order of first occurrence after Inf / Fin.
  color_table infer_colors(const std::string& formula)
  {
    color_table t;
    static const std::regex atom(R"(\b(Inf|Fin)\s+([A-Za-z_][A-Za-z0-9_]*))");
    for (auto it = std::sregex_iterator(formula.begin(), formula.end(), atom);
         it != std::sregex_iterator(); ++it)
      {
        std::string name = (*it)[2];
        if (!t.find(name))
          t.add(name);
      }
    return t;
  }

  struct solve_args
  {
    std::string game, strategy;
    bool verify = false, oracle = false;
  };

  int run_solve(const solve_args& a)
  {
    el_game g = load_game_file(a.game);
    auto tree = zielonka_tree::build(g.objective, g.colors.size());
    auto res = solve_game(g, tree);
    const node_set& win = res.winning();
    std::cout << "WIN: " << ids(win) << '\n';
    if (a.oracle)
      {
        node_set ref = solve_el_via_reduction(g);
        if (!(ref == win))
          throw check_failure("oracle disagrees, reduction gives WIN: " + ids(ref));
        std::cout << "oracle: agree\n";
      }
    if (a.verify || !a.strategy.empty())
      {
        auto s = extract_strategy(g, tree, res);
        if (!a.strategy.empty())
          write_file(a.strategy, save_strategy(s));
        if (a.verify)
          {
            auto v = verify_strategy(g, s, win);
            if (!v.ok)
              throw check_failure("strategy verification failed: " + v.reason);
            std::cout << "verify: ok (" << s.memory.size() << " memory values)\n";
          }
      }
    return 0;
  }

  int run_reduce(const std::string& path, bool dot, const std::string& pg_out)
  {
    el_game g = load_game_file(path);
    auto tree = zielonka_tree::build(g.objective, g.colors.size());
    auto red = reduce_to_parity(g, tree);
    if (!pg_out.empty())
      write_file(pg_out, export_pgsolver(red.game));
    if (dot)
      std::cout << parity_to_dot(red.game);
    else
      std::cout << "parity game: " << red.game.graph.size() << " nodes, "
                << red.game.graph.edge_count() << " edges, max priority "
                << red.game.max_priority() << ", tree " << tree.size() << " vertices\n";
    return 0;
  }

  int run_ztree(const std::string& formula, const std::string& colors, bool dot)
  {
    color_table t = colors.empty() ? infer_colors(formula) : color_table(split_list(colors));
    auto tree = zielonka_tree::build(parse_el(formula, t), t.size());
    std::cout << (dot ? tree.to_dot(t) : tree.to_text(t));
    if (!dot)
      std::cout << tree.size() << " vertices, height " << tree.height() << ", "
                << tree.leaves().size() << " leaves\n";
    return 0;
  }

  struct synth_args
  {
    std::string safety = "true", liveness = "true", inputs, outputs, controller;
    bool expand_check = false, dot = false;
  };

  int run_synth(const synth_args& a)
  {
    synthesis_problem p{parse_ltl(a.safety), parse_ltl(a.liveness), split_list(a.inputs),
                        split_list(a.outputs)};
    auto r = solve_synthesis(p);
    std::cout << (r.realizable ? "REALIZABLE" : "UNREALIZABLE") << '\n';
    std::cout << "subsets: " << r.reachable_subsets << ", tree: " << r.tree.size()
              << " vertices, iterations: " << r.solution.iterations << '\n';
    if (r.controller)
      {
        auto check = verify_controller(r.game, *r.controller);
        if (!check.ok)
          throw check_failure("controller verification failed: " + check.reason);
        std::cout << "controller: " << r.controller->size() << " states, verified\n";
        if (!a.controller.empty())
          write_file(a.controller, r.controller->to_text());
      }
    else if (!a.controller.empty())
      std::cerr << "no controller written: specification is unrealizable\n";
    if (a.expand_check)
      {
        auto x = expand_game(r.game);
        bool direct = solve_expansion(x).realizable;
        bool reduced = solve_expansion(x, true).realizable;
        if (direct != r.realizable || reduced != r.realizable)
          throw check_failure("explicit expansion disagrees");
        std::cout << "expand-check: agree (" << x.game.graph.size() << " nodes, "
                  << x.subset_count() << " subsets)\n";
      }
    if (a.dot)
      std::cout << r.manager->to_dot(r.solution.winning());
    return 0;
  }

  int run_oracle(const std::string& path)
  {
    el_game g = load_game_file(path);
    node_set ref = solve_el_via_reduction(g);
    std::cout << "WIN: " << ids(ref) << '\n';
    auto win = solve_game(g, zielonka_tree::build(g.objective, g.colors.size())).winning();
    if (!(win == ref))
      throw check_failure("fixpoint solver disagrees, WIN: " + ids(win));
    std::cout << "fixpoint: agree\n";
    return 0;
  }

  int run_corpus_cmd(const corpus_options& o)
  {
    auto rep = elgames::run_corpus(o);
    std::cout << rep.table();
    return rep.ok() ? 0 : exit_check;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"Emerson-Lei game solver and safety synthesis"};
  app.require_subcommand(1);

  solve_args sa;
  auto* solve = app.add_subcommand("solve", "Solve an EL game");
  solve->add_option("game", sa.game, "Game file")->required();
  solve->add_option("--strategy", sa.strategy, "Write the extracted strategy");
  solve->add_flag("--verify", sa.verify, "Verify the extracted strategy");
  solve->add_flag("--oracle-check", sa.oracle, "Compare with the parity reduction");

  std::string reduce_game, pg_out;
  bool reduce_dot = false;
  auto* reduce = app.add_subcommand("reduce", "Reduce an EL game to a parity game");
  reduce->add_option("game", reduce_game, "Game file")->required();
  reduce->add_flag("--dot", reduce_dot, "Print the parity game as GraphViz");
  reduce->add_option("--pgsolver", pg_out, "Write the parity game in PGSolver format");

  std::string zt_formula, zt_colors;
  bool zt_dot = false;
  auto* ztree = app.add_subcommand("ztree", "Print the Zielonka tree of an EL formula");
  ztree->add_option("--el", zt_formula, "EL formula")->required();
  ztree->add_option("--colors", zt_colors, "Comma-separated colors (default: inferred)");
  ztree->add_flag("--dot", zt_dot, "Print as GraphViz");

  synth_args sy;
  auto* synth = app.add_subcommand("synth", "Synthesize a controller");
  synth->add_option("--safety", sy.safety, "Safety LTL formula");
  synth->add_option("--el", sy.liveness, "Boolean combination of GF / FG assertions");
  synth->add_option("--inputs", sy.inputs, "Comma-separated inputs")->required();
  synth->add_option("--outputs", sy.outputs, "Comma-separated outputs")->required();
  synth->add_option("--controller", sy.controller, "Write the Mealy controller");
  synth->add_flag("--expand-check", sy.expand_check, "Cross-check on the explicit expansion");
  synth->add_flag("--dot", sy.dot, "Print the winning region as a BDD");

  std::string oracle_game;
  auto* oracle = app.add_subcommand("oracle", "Solve an EL game via the parity reduction");
  oracle->add_option("game", oracle_game, "Game file")->required();

  corpus_options co;
  auto* corpus = app.add_subcommand("corpus", "Run the random regression corpus");
  corpus->add_option("--seed", co.seed, "Seed");
  corpus->add_option("--count", co.count, "Number of games")->check(CLI::PositiveNumber);
  corpus->add_option("--max-nodes", co.max_nodes, "Maximum nodes")->check(CLI::Range(1, 64));
  corpus->add_option("--max-colors", co.max_colors, "Maximum colors")->check(CLI::Range(1, 6));

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

  try
    {
      if (*solve)
        return run_solve(sa);
      if (*reduce)
        return run_reduce(reduce_game, reduce_dot, pg_out);
      if (*ztree)
        return run_ztree(zt_formula, zt_colors, zt_dot);
      if (*synth)
        return run_synth(sy);
      if (*oracle)
        return run_oracle(oracle_game);
      return run_corpus_cmd(co);
    }
  catch (const check_failure& e)
    {
      std::cerr << "check failed: " << e.what() << '\n';
      return exit_check;
    }
  catch (const budget_exceeded& e)
    {
      std::cerr << "budget exceeded: " << e.what() << '\n';
      return exit_check;
    }
  catch (const std::exception& e)
    {
      std::cerr << "error: " << e.what() << '\n';
      return exit_input;
    }
}
