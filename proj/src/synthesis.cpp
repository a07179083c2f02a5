#include "elgames/synthesis.hpp"

#include "elgames/equation_system.hpp"
#include "elgames/errors.hpp"
#include "elgames/oracles.hpp"
#include "elgames/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace elgames
{
  namespace
  {
    using k = ltl::kind;

    // psi with F G chi = Fin psi
    ltl fin_assertion(const ltl& chi)
    {
      return chi.type() == k::not_ ? chi.operand() : ltl::negate(chi);
    }

    // Collects the assertions in occurrence order; validates the fragment.
    void collect_assertions(const ltl& f, std::vector<ltl>& out)
    {
      auto add = [&](const ltl& psi) {
        if (std::find(out.begin(), out.end(), psi) == out.end())
          out.push_back(psi);
      };
      switch (f.type())
        {
        case k::true_:
        case k::false_:
          return;
        case k::not_:
          collect_assertions(f.operand(), out);
          return;
        case k::and_:
        case k::or_:
        case k::implies:
          collect_assertions(f.lhs(), out);
          collect_assertions(f.rhs(), out);
          return;
        case k::globally:
          if (f.operand().type() == k::eventually && f.operand().operand().is_propositional())
            {
              add(f.operand().operand());
              return;
            }
          break;
        case k::eventually:
          if (f.operand().type() == k::globally && f.operand().operand().is_propositional())
            {
              add(fin_assertion(f.operand().operand()));
              return;
            }
          break;
        default:
          break;
        }
      throw not_el_fragment("not in the Emerson-Lei fragment: " + to_string(f));
    }

    el_formula convert(const ltl& f, const std::vector<ltl>& assertions)
    {
      auto id = [&](const ltl& psi) {
        return static_cast<int>(std::find(assertions.begin(), assertions.end(), psi)
                                - assertions.begin());
      };
      switch (f.type())
        {
        case k::true_:
          return el_formula::tt();
        case k::false_:
          return el_formula::ff();
        case k::not_:
          return el_formula::negate(convert(f.operand(), assertions));
        case k::and_:
          return el_formula::conj(convert(f.lhs(), assertions), convert(f.rhs(), assertions));
        case k::or_:
          return el_formula::disj(convert(f.lhs(), assertions), convert(f.rhs(), assertions));
        case k::implies:
          return el_formula::implies(convert(f.lhs(), assertions),
                                     convert(f.rhs(), assertions));
        case k::globally:
          return el_formula::inf(id(f.operand().operand()));
        default:  // F G chi
          return el_formula::fin(id(fin_assertion(f.operand().operand())));
        }
    }

    bdd propositional_bdd(bdd_manager& m, const ltl& f, const std::vector<std::string>& atoms,
                          const std::vector<int>& vars)
    {
      switch (f.type())
        {
        case k::true_:
          return m.tt();
        case k::false_:
          return m.ff();
        case k::atom:
          {
            auto it = std::find(atoms.begin(), atoms.end(), f.name());
            if (it == atoms.end())
              throw invalid_input("atom '" + f.name() + "' is neither input nor output");
            return m.var(vars[it - atoms.begin()]);
          }
        case k::not_:
          return !propositional_bdd(m, f.operand(), atoms, vars);
        case k::and_:
          return propositional_bdd(m, f.lhs(), atoms, vars)
                 & propositional_bdd(m, f.rhs(), atoms, vars);
        case k::or_:
          return propositional_bdd(m, f.lhs(), atoms, vars)
                 | propositional_bdd(m, f.rhs(), atoms, vars);
        case k::implies:
          return propositional_bdd(m, f.lhs(), atoms, vars)
            .implies(propositional_bdd(m, f.rhs(), atoms, vars));
        default:
          throw invalid_input("temporal operator in a propositional formula");
        }
    }

    std::string cube_text(std::uint32_t bits, const std::vector<std::string>& names)
    {
      if (names.empty())
        return "true";
      std::string out;
      for (std::size_t i = 0; i < names.size(); ++i)
        {
          if (i)
            out += '&';
          if (!(bits >> i & 1u))
            out += '!';
          out += names[i];
        }
      return out;
    }

    std::uint32_t subset_mask(const std::vector<bool>& subset)
    {
      std::uint32_t m = 0;
      for (std::size_t q = 0; q < subset.size(); ++q)
        if (subset[q])
          m |= 1u << q;
      return m;
    }

    std::vector<bool> nfa_post(const safety_nfa& nfa, const std::vector<bool>& subset,
                               std::uint32_t letter)
    {
      std::vector<bool> out(nfa.size(), false);
      for (int q = 0; q < nfa.size(); ++q)
        if (subset[q])
          for (auto& e : nfa.edges[q])
            if (e.matches(letter))
              out[e.target] = true;
      return out;
    }

    bool any(const std::vector<bool>& s)
    {
      return std::find(s.begin(), s.end(), true) != s.end();
    }

    color_set letter_colors(const el_colors& colors, const std::vector<std::string>& atoms,
                            std::uint32_t letter)
    {
      color_set c;
      lasso_word w{{}, {letter}};
      for (std::size_t i = 0; i < colors.assertion.size(); ++i)
        if (holds_on_lasso(colors.assertion[i], atoms, w))
          c = c.with(static_cast<int>(i));
      return c;
    }
  }

  el_colors colors_of(const ltl& liveness)
  {
    std::vector<ltl> found;
    collect_assertions(liveness, found);
    std::vector<ltl> ordered;
    for (auto& psi : found)
      if (psi.type() == k::atom)
        ordered.push_back(psi);
    for (auto& psi : found)
      if (psi.type() != k::atom)
        ordered.push_back(psi);

    el_colors out;
    for (auto& psi : ordered)
      out.table.add(to_string(psi));
    out.assertion = ordered;
    out.objective = convert(liveness, ordered);
    return out;
  }

  color_set symbolic_game::colors_of_letter(std::uint32_t letter) const
  {
    return letter_colors(colors, nfa.atoms, letter);
  }

  std::vector<bool> symbolic_game::position(const std::vector<bool>& subset,
                                            std::uint32_t letter) const
  {
    std::vector<bool> a(manager->num_vars(), false);
    for (std::size_t q = 0; q < subset.size(); ++q)
      a[automaton.state_vars[q]] = subset[q];
    for (std::size_t i = 0; i < automaton.letter_vars.size(); ++i)
      a[automaton.letter_vars[i]] = letter >> i & 1u;
    return a;
  }

  symbolic_game build_game(const synthesis_problem& p, bdd_manager& m)
  {
    if (p.inputs.empty() || p.outputs.empty())
      throw invalid_input("inputs and outputs must be nonempty");
    std::vector<std::string> atoms = p.inputs;
    atoms.insert(atoms.end(), p.outputs.begin(), p.outputs.end());
    std::set<std::string> distinct(atoms.begin(), atoms.end());
    if (distinct.size() != atoms.size())
      throw invalid_input("inputs and outputs must be distinct");
    if (atoms.size() > 24)
      throw budget_exceeded("more than 24 atomic propositions");
    for (const ltl* f : {&p.safety, &p.liveness})
      for (auto& a : atoms_of(*f))
        if (!distinct.count(a))
          throw invalid_input("atom '" + a + "' is neither input nor output");

    symbolic_game g;
    g.manager = &m;
    g.inputs = p.inputs;
    g.outputs = p.outputs;
    g.colors = colors_of(p.liveness);
    g.nfa = nfa_from_safety(check_safety(p.safety), atoms);
    if (g.nfa.size() > max_state_vars)
      throw budget_exceeded("safety automaton has " + std::to_string(g.nfa.size())
                            + " states, more than " + std::to_string(max_state_vars));

    std::vector<int> state_vars;
    for (int q = 0; q < g.nfa.size(); ++q)
      state_vars.push_back(m.add_pair("v" + std::to_string(q + 1), var_block::state));
    for (auto& a : p.inputs)
      {
        g.input_vars.push_back(m.add_pair(a, var_block::input));
        g.env_next.push_back(g.input_vars.back() + 1);
      }
    for (auto& a : p.outputs)
      {
        g.output_vars.push_back(m.add_pair(a, var_block::output));
        g.sys_next.push_back(g.output_vars.back() + 1);
      }
    for (int v : state_vars)
      g.sys_next.push_back(v + 1);

    std::vector<int> letter_vars = g.input_vars;
    letter_vars.insert(letter_vars.end(), g.output_vars.begin(), g.output_vars.end());
    g.automaton = determinize_symbolic(g.nfa, m, state_vars, letter_vars);
    g.theta = g.automaton.initial;
    g.rho = g.automaton.trans;
    for (auto& psi : g.colors.assertion)
      g.color_sets.push_back(propositional_bdd(m, psi, atoms, letter_vars));
    return g;
  }

  bdd symbolic_cpre(const symbolic_game& g, const bdd& s)
  {
    bdd_manager& m = *g.manager;
    return m.forall(g.env_next, m.and_exists(g.rho, m.rename(s), g.sys_next));
  }

  bdd symbolic_backend::guard(const anc_guard& a) const
  {
    bdd_manager& m = *g_.manager;
    bdd out = m.tt();
    for (int c : a.avoid.members())
      out &= !g_.color_sets[c];
    if (!a.self)
      {
        bdd some = m.ff();
        for (int c : a.need_one.members())
          some |= g_.color_sets[c];
        out &= some;
      }
    return out;
  }

  synthesis_result solve_synthesis(const synthesis_problem& problem,
                                   const synthesis_options& options)
  {
    synthesis_result r;
    r.manager = std::make_unique<bdd_manager>();
    bdd_manager& m = *r.manager;
    r.game = build_game(problem, m);
    const symbolic_game& g = r.game;
    r.tree = zielonka_tree::build(g.colors.objective, g.colors.table.size());
    equation_system sys = build_equations(r.tree);
    symbolic_backend backend(g);
    r.solution = solve(sys, backend);

    std::vector<int> hidden = g.output_vars;
    hidden.insert(hidden.end(), g.state_vars().begin(), g.state_vars().end());
    r.losing_inputs = !m.exists(hidden, g.theta & r.solution.winning());
    r.realizable = r.losing_inputs.is_false();
    r.reachable_subsets = reachable_subset_count(g.automaton);
    if (r.realizable && options.extract_controller)
      r.controller = extract_controller(r);
    return r;
  }

  mealy_controller extract_controller(const synthesis_result& r)
  {
    if (!r.realizable)
      throw invalid_input("no controller for an unrealizable specification");
    const symbolic_game& g = r.game;
    const zielonka_tree& z = r.tree;
    bdd_manager& m = *g.manager;
    if (g.num_inputs() > 12 || g.num_outputs() > 12)
      throw budget_exceeded("controller extraction supports at most 12 inputs and outputs");

    using sig_t = std::optional<std::vector<int>>;
    std::map<std::tuple<std::uint32_t, std::uint32_t, int>, sig_t> cache;
    auto sig = [&](const std::vector<bool>& subset, std::uint32_t letter, int t) -> sig_t {
      auto key = std::tuple{subset_mask(subset), letter, t};
      auto it = cache.find(key);
      if (it != cache.end())
        return it->second;
      auto asg = g.position(subset, letter);
      sig_t s = signature(r.solution, t, [&](const bdd& x) { return m.eval(x, asg); });
      cache.emplace(key, s);
      return s;
    };

    mealy_controller c;
    c.inputs = g.inputs;
    c.outputs = g.outputs;
    std::map<std::tuple<std::uint32_t, int, int>, int> index;
    std::deque<int> queue;
    auto intern = [&](mealy_state s) {
      auto key = std::tuple{subset_mask(s.subset), s.leaf, s.anchor};
      auto [it, fresh] = index.emplace(key, c.size());
      if (fresh)
        {
          c.states.push_back(std::move(s));
          c.transitions.emplace_back();
          queue.push_back(it->second);
        }
      return it->second;
    };

    c.initial = intern({m.pick_witness(g.theta, g.state_vars()), -1, -1});
    const std::uint32_t num_in = 1u << g.num_inputs(), num_out = 1u << g.num_outputs();
    while (!queue.empty())
      {
        int id = queue.front();
        queue.pop_front();
        mealy_state s = c.states[id];
        bool start = s.leaf < 0;
        int a = start ? z.root() : s.anchor;
        std::vector<mealy_transition> row(num_in);
        for (std::uint32_t in = 0; in < num_in; ++in)
          {
            std::uint32_t best = 0;
            sig_t best_sig;
            for (std::uint32_t out = 0; out < num_out; ++out)
              {
                sig_t sy = sig(s.subset, g.letter(in, out), a);
                if (sy && (!best_sig || *sy < *best_sig))
                  {
                    best = out;
                    best_sig = sy;
                  }
              }
            if (!best_sig)
              throw std::logic_error("controller left the winning region");
            std::uint32_t letter = g.letter(in, best);
            auto sig_y = [&](int u) { return sig(s.subset, letter, u); };
            int leaf;
            if (start)
              leaf = descend(z, z.root(), -1, sig_y);
            else if (z.is_leaf(a))
              leaf = a;
            else
              leaf = descend(z, a, z.winning(a) ? z.child_index_toward(a, s.leaf) : -1, sig_y);
            auto next = dfa_step(g.automaton, s.subset, letter);
            if (!next || !any(*next))
              throw std::logic_error("controller violates the safety automaton");
            int anchor = z.anchor(leaf, g.colors_of_letter(letter));
            row[in] = {best, intern({*next, leaf, anchor})};
          }
        c.transitions[id] = std::move(row);
      }
    return c;
  }

  std::string mealy_controller::to_text() const
  {
    std::ostringstream out;
    out << "mealy 1\ninputs";
    for (auto& a : inputs)
      out << ' ' << a;
    out << "\noutputs";
    for (auto& a : outputs)
      out << ' ' << a;
    out << '\n';
    for (int s = 0; s < size(); ++s)
      {
        out << "state " << s << " subset=" << std::hex << subset_mask(states[s].subset)
            << std::dec << " leaf=";
        if (states[s].leaf < 0)
          out << "- anchor=-\n";
        else
          out << states[s].leaf << " anchor=" << states[s].anchor << '\n';
      }
    out << "init " << initial << '\n';
    for (int s = 0; s < size(); ++s)
      for (std::size_t in = 0; in < transitions[s].size(); ++in)
        out << "on " << s << ' ' << cube_text(static_cast<std::uint32_t>(in), inputs) << " -> "
            << cube_text(transitions[s][in].output, outputs) << ' ' << transitions[s][in].next
            << '\n';
    return out.str();
  }

  controller_check verify_controller(const symbolic_game& g, const mealy_controller& c)
  {
    controller_check res;
    auto fail = [&](std::string why) {
      res.ok = false;
      res.reason = std::move(why);
      return res;
    };
    const std::uint32_t num_in = 1u << g.num_inputs();
    bdd_manager& m = *g.manager;

    // Safety on the NFA, and each transition against rho.
    std::vector<bool> init_nfa(g.nfa.size(), false);
    for (int q : g.nfa.initial)
      init_nfa[q] = true;
    if (c.states[c.initial].subset != init_nfa)
      return fail("initial subset differs from the automaton's initial states");
    std::set<std::pair<int, std::vector<bool>>> seen{{c.initial, init_nfa}};
    std::deque<std::pair<int, std::vector<bool>>> work{{c.initial, init_nfa}};
    while (!work.empty())
      {
        auto [s, nset] = work.front();
        work.pop_front();
        for (std::uint32_t in = 0; in < num_in; ++in)
          {
            const auto& t = c.transitions[s][in];
            std::uint32_t letter = g.letter(in, t.output);
            std::vector<bool> next = nfa_post(g.nfa, nset, letter);
            if (!any(next))
              return fail("safety violated from state " + std::to_string(s) + " on input "
                          + cube_text(in, c.inputs));
            auto asg = g.position(c.states[s].subset, letter);
            for (std::size_t q = 0; q < c.states[t.next].subset.size(); ++q)
              asg[g.automaton.next_vars[q]] = c.states[t.next].subset[q];
            if (!m.eval(g.rho, asg))
              return fail("transition from state " + std::to_string(s) + " not allowed by rho");
            if (seen.insert({t.next, next}).second)
              work.push_back({t.next, next});
          }
      }

    // Objective on all cycles of (state, input) pairs.
    colored_graph cg;
    auto id = [&](int s, std::uint32_t in) { return s * static_cast<int>(num_in) + in; };
    cg.succ.resize(c.size() * num_in);
    cg.colors.resize(c.size() * num_in);
    for (int s = 0; s < c.size(); ++s)
      for (std::uint32_t in = 0; in < num_in; ++in)
        {
          const auto& t = c.transitions[s][in];
          cg.colors[id(s, in)] = g.colors_of_letter(g.letter(in, t.output));
          for (std::uint32_t in2 = 0; in2 < num_in; ++in2)
            cg.succ[id(s, in)].push_back(id(t.next, in2));
        }
    for (std::uint32_t in = 0; in < num_in; ++in)
      cg.initial.push_back(id(c.initial, in));
    if (auto v = find_violation(cg, g.colors.objective, g.colors.table.size()))
      return fail("a cycle realizes " + g.colors.table.format(v->inf_set)
                  + ", which violates the objective");
    return res;
  }

  controller_check simulate_controller(const symbolic_game& g, const mealy_controller& c,
                                       std::uint64_t seed, int runs, int length)
  {
    controller_check res;
    std::mt19937_64 rng(seed);
    std::vector<bool> init_nfa(g.nfa.size(), false);
    for (int q : g.nfa.initial)
      init_nfa[q] = true;
    for (int run = 0; run < runs; ++run)
      {
        ++res.runs;
        lasso_word inputs = random_lasso_word(rng, g.num_inputs(), 9, 10);
        int prefix = static_cast<int>(inputs.prefix.size());
        int loop = static_cast<int>(inputs.loop.size());
        int s = c.initial;
        std::vector<bool> nset = init_nfa;
        std::map<std::pair<int, int>, int> first_seen;
        std::vector<color_set> colors;
        bool closed = false;
        for (int step = 0; step < length; ++step)
          {
            int pos = step < prefix ? step : prefix + (step - prefix) % loop;
            if (!closed && step >= prefix)
              {
                auto [it, fresh] = first_seen.emplace(std::pair{s, pos}, step);
                if (!fresh)
                  {
                    color_set inf;
                    for (int i = it->second; i < step; ++i)
                      inf |= colors[i];
                    ++res.closures;
                    closed = true;
                    if (!g.colors.objective.eval(inf))
                      {
                        res.ok = false;
                        res.reason = "run " + std::to_string(run) + " closes a loop visiting "
                                     + g.colors.table.format(inf);
                        return res;
                      }
                  }
              }
            std::uint32_t in = pos < prefix ? inputs.prefix[pos] : inputs.loop[pos - prefix];
            const auto& t = c.transitions[s][in];
            std::uint32_t letter = g.letter(in, t.output);
            colors.push_back(g.colors_of_letter(letter));
            nset = nfa_post(g.nfa, nset, letter);
            if (!any(nset))
              {
                res.ok = false;
                res.reason = "run " + std::to_string(run) + " violates safety at step "
                             + std::to_string(step);
                return res;
              }
            s = t.next;
          }
      }
    return res;
  }

  int synthesis_expansion::subset_count() const
  {
    std::set<std::vector<bool>> s;
    for (auto& n : nodes)
      if (n.type == kind::position)
        s.insert(n.subset);
    return static_cast<int>(s.size());
  }

  int synthesis_expansion::find_position(const std::vector<bool>& subset,
                                         std::uint32_t letter) const
  {
    for (std::size_t v = 0; v < nodes.size(); ++v)
      if (nodes[v].type == kind::position && nodes[v].subset == subset
          && nodes[v].letter == letter)
        return static_cast<int>(v);
    return -1;
  }

  synthesis_expansion expand_game(const symbolic_game& g, int max_nodes)
  {
    using kind = synthesis_expansion::kind;
    synthesis_expansion x;
    x.game.colors = g.colors.table;
    x.game.objective = g.colors.objective;
    arena& a = x.game.graph;
    const std::uint32_t num_in = 1u << g.num_inputs(), num_out = 1u << g.num_outputs();

    std::map<std::pair<std::vector<bool>, std::uint32_t>, int> positions;
    std::deque<int> work;
    auto add = [&](synthesis_expansion::node_info info, player owner, color_set colors) {
      if (a.size() >= max_nodes)
        throw budget_exceeded("expansion exceeds " + std::to_string(max_nodes) + " nodes");
      x.nodes.push_back(std::move(info));
      return a.add_node(owner, colors);
    };
    auto position = [&](const std::vector<bool>& subset, std::uint32_t letter) {
      auto it = positions.find({subset, letter});
      if (it != positions.end())
        return it->second;
      int v = add({kind::position, subset, letter, 0}, player::forall,
                  g.colors_of_letter(letter));
      positions.emplace(std::pair{subset, letter}, v);
      work.push_back(v);
      return v;
    };

    std::vector<bool> init(g.nfa.size(), false);
    for (int q : g.nfa.initial)
      init[q] = true;
    x.start = add({kind::start, init, 0, 0}, player::forall, {});
    for (std::uint32_t in = 0; in < num_in; ++in)
      {
        int ch = add({kind::start_choice, init, 0, in}, player::exist, {});
        a.add_edge(x.start, ch);
        for (std::uint32_t out = 0; out < num_out; ++out)
          a.add_edge(ch, position(init, g.letter(in, out)));
      }
    while (!work.empty())
      {
        int v = work.front();
        work.pop_front();
        auto info = x.nodes[v];
        std::vector<bool> next = nfa_post(g.nfa, info.subset, info.letter);
        for (std::uint32_t in = 0; in < num_in; ++in)
          {
            int ch = add({kind::choice, info.subset, info.letter, in}, player::exist,
                         a.colors(v));
            a.add_edge(v, ch);
            if (any(next))
              for (std::uint32_t out = 0; out < num_out; ++out)
                a.add_edge(ch, position(next, g.letter(in, out)));
          }
      }
    return x;
  }

  explicit_verdict solve_expansion(const synthesis_expansion& x, bool via_reduction)
  {
    const arena& a = x.game.graph;
    const int n = a.size();
    node_set dead(n);
    for (int v = 0; v < n; ++v)
      if (a.succ(v).empty())
        dead.set(v);
    node_set lost = attractor(a, node_set::full(n), dead, player::forall);

    explicit_verdict out;
    out.winning = node_set(n);
    std::vector<int> keep = (~lost).members(), local(n, -1);
    if (keep.empty())
      return out;
    el_game sub;
    sub.colors = x.game.colors;
    sub.objective = x.game.objective;
    for (std::size_t i = 0; i < keep.size(); ++i)
      {
        local[keep[i]] = static_cast<int>(i);
        sub.graph.add_node(a.owner(keep[i]), a.colors(keep[i]));
      }
    for (int v : keep)
      for (int w : a.succ(v))
        if (local[w] >= 0)
          sub.graph.add_edge(local[v], local[w]);

    node_set win;
    if (via_reduction)
      win = solve_el_via_reduction(sub);
    else
      win = solve_game(sub, zielonka_tree::build(sub.objective, sub.colors.size())).winning();
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (win.test(static_cast<int>(i)))
        out.winning.set(keep[i]);
    out.realizable = out.winning.test(x.start);
    return out;
  }
}
