#include "elgames/safety_automaton.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace elgames
{
  namespace
  {
    using k = ltl::kind;
    using obligation_set = std::map<std::string, ltl>;

    void add_obligation(obligation_set& s, const ltl& f)
    {
      if (f.type() == k::and_)
        {
          add_obligation(s, f.lhs());
          add_obligation(s, f.rhs());
        }
      else if (f.type() != k::true_)
        s.emplace(to_string(f), f);
    }

    struct branch
    {
      std::uint32_t pos = 0, neg = 0;
      obligation_set next;
    };

    class tableau
    {
    public:
      explicit tableau(const std::vector<std::string>& atoms) : atoms_(atoms) {}

      std::vector<branch> expand(const obligation_set& state)
      {
        std::vector<ltl> todo;
        for (auto it = state.rbegin(); it != state.rend(); ++it)
          todo.push_back(it->second);
        std::vector<branch> out;
        run(std::move(todo), {}, out);
        return out;
      }

    private:
      std::uint32_t bit(const ltl& a) const
      {
        auto it = std::find(atoms_.begin(), atoms_.end(), a.name());
        if (it == atoms_.end())
          throw invalid_input("atom '" + a.name() + "' missing from the alphabet");
        return 1u << (it - atoms_.begin());
      }

      // Depth-first over disjunctions; the left disjunct's branches come first.
      void run(std::vector<ltl> todo, branch b, std::vector<branch>& out)
      {
        while (!todo.empty())
          {
            ltl f = todo.back();
            todo.pop_back();
            switch (f.type())
              {
              case k::true_:
                break;
              case k::false_:
                return;
              case k::atom:
                if (b.neg & bit(f))
                  return;
                b.pos |= bit(f);
                break;
              case k::not_:
                if (f.operand().type() != k::atom)
                  throw invalid_input("formula is not in negation normal form");
                if (b.pos & bit(f.operand()))
                  return;
                b.neg |= bit(f.operand());
                break;
              case k::and_:
                todo.push_back(f.rhs());
                todo.push_back(f.lhs());
                break;
              case k::or_:
                {
                  auto left = todo;
                  left.push_back(f.lhs());
                  run(std::move(left), b, out);
                  todo.push_back(f.rhs());
                  break;
                }
              case k::next:
                add_obligation(b.next, f.operand());
                break;
              case k::globally:
                todo.push_back(f.operand());
                add_obligation(b.next, f);
                break;
              case k::release:
                {
                  todo.push_back(f.rhs());
                  auto left = todo;
                  left.push_back(f.lhs());
                  run(std::move(left), b, out);
                  add_obligation(b.next, f);
                  break;
                }
              default:
                throw not_safety(f.type() == k::until ? "U" : "F");
              }
          }
        out.push_back(std::move(b));
      }

      const std::vector<std::string>& atoms_;
    };

    std::string key_of(const obligation_set& s)
    {
      std::string key;
      for (auto& [text, f] : s)
        key += text + ";";
      return key;
    }

    std::string guard_text(const nfa_edge& e, const std::vector<std::string>& atoms)
    {
      std::string out;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        {
          if (!((e.pos | e.neg) >> i & 1u))
            continue;
          if (!out.empty())
            out += " & ";
          if (e.neg >> i & 1u)
            out += '!';
          out += atoms[i];
        }
      return out.empty() ? "true" : out;
    }

    bool weaker(const nfa_edge& a, const nfa_edge& b)
    {
      return a.target == b.target && (a.pos & ~b.pos) == 0 && (a.neg & ~b.neg) == 0;
    }
  }

  std::string safety_nfa::to_text() const
  {
    std::string out = "nfa " + std::to_string(size()) + " states, atoms";
    for (auto& a : atoms)
      out += " " + a;
    out += "\n";
    for (int q = 0; q < size(); ++q)
      {
        out += std::to_string(q);
        if (std::find(initial.begin(), initial.end(), q) != initial.end())
          out += " init";
        out += " {";
        for (std::size_t i = 0; i < states[q].size(); ++i)
          out += (i ? ", " : "") + to_string(states[q][i]);
        out += "}\n";
        for (auto& e : edges[q])
          out += "  -> " + std::to_string(e.target) + " : " + guard_text(e, atoms) + "\n";
      }
    return out;
  }

  safety_nfa nfa_from_safety(const ltl& phi, std::vector<std::string> atoms)
  {
    if (atoms.empty())
      atoms = atoms_of(phi);
    if (atoms.size() > 32)
      throw budget_exceeded("more than 32 atoms");
    tableau tab(atoms);

    std::vector<obligation_set> sets;
    std::map<std::string, int> index;
    std::vector<std::vector<nfa_edge>> edges;
    auto intern = [&](const obligation_set& s) {
      auto [it, fresh] = index.emplace(key_of(s), static_cast<int>(sets.size()));
      if (fresh)
        sets.push_back(s);
      return it->second;
    };

    obligation_set init;
    add_obligation(init, phi);
    intern(init);
    for (std::size_t q = 0; q < sets.size(); ++q)
      {
        std::vector<nfa_edge> out;
        for (auto& b : tab.expand(sets[q]))
          {
            nfa_edge e{b.pos, b.neg, intern(b.next)};
            if (std::find(out.begin(), out.end(), e) == out.end())
              out.push_back(e);
          }
        std::vector<nfa_edge> kept;
        for (std::size_t i = 0; i < out.size(); ++i)
          {
            bool subsumed = false;
            for (std::size_t j = 0; j < out.size() && !subsumed; ++j)
              subsumed = j != i && weaker(out[j], out[i]);
            if (!subsumed)
              kept.push_back(out[i]);
          }
        edges.push_back(std::move(kept));
      }

    // Drop states without an infinite run; the initial state stays.
    int n = static_cast<int>(sets.size());
    std::vector<char> live(n, 1);
    for (bool changed = true; changed;)
      {
        changed = false;
        for (int q = 0; q < n; ++q)
          if (live[q]
              && std::none_of(edges[q].begin(), edges[q].end(),
                              [&](const nfa_edge& e) { return live[e.target]; }))
            {
              live[q] = 0;
              changed = true;
            }
      }
    std::vector<int> renum(n, -1);
    safety_nfa nfa;
    nfa.atoms = atoms;
    for (int q = 0; q < n; ++q)
      if (live[q] || q == 0)
        {
          renum[q] = nfa.size();
          std::vector<ltl> obligations;
          for (auto& [text, f] : sets[q])
            obligations.push_back(f);
          nfa.states.push_back(std::move(obligations));
        }
    nfa.edges.resize(nfa.size());
    for (int q = 0; q < n; ++q)
      if (renum[q] >= 0)
        for (auto e : edges[q])
          if (live[e.target])
            {
              e.target = renum[e.target];
              nfa.edges[renum[q]].push_back(e);
            }
    nfa.initial = {0};
    return nfa;
  }

  bool nfa_accepts(const safety_nfa& nfa, const lasso_word& w)
  {
    if (w.loop.empty())
      throw invalid_input("lasso word with empty loop");
    std::vector<std::uint32_t> letters = w.prefix;
    letters.insert(letters.end(), w.loop.begin(), w.loop.end());
    int len = static_cast<int>(letters.size());
    int loop_start = static_cast<int>(w.prefix.size());
    auto id = [&](int q, int i) { return q * len + i; };
    auto next_pos = [&](int i) { return i + 1 < len ? i + 1 : loop_start; };

    // reachable part of NFA x positions
    std::vector<char> seen(nfa.size() * len, 0);
    std::vector<std::pair<int, int>> stack, reached;
    for (int q : nfa.initial)
      {
        seen[id(q, 0)] = 1;
        stack.push_back({q, 0});
      }
    while (!stack.empty())
      {
        auto [q, i] = stack.back();
        stack.pop_back();
        reached.push_back({q, i});
        for (auto& e : nfa.edges[q])
          if (e.matches(letters[i]) && !seen[id(e.target, next_pos(i))])
            {
              seen[id(e.target, next_pos(i))] = 1;
              stack.push_back({e.target, next_pos(i)});
            }
      }
    // peel off nodes without a surviving successor
    for (bool changed = true; changed;)
      {
        changed = false;
        for (auto [q, i] : reached)
          {
            if (!seen[id(q, i)])
              continue;
            bool alive = false;
            for (auto& e : nfa.edges[q])
              alive = alive || (e.matches(letters[i]) && seen[id(e.target, next_pos(i))]);
            if (!alive)
              {
                seen[id(q, i)] = 0;
                changed = true;
              }
          }
      }
    return std::any_of(nfa.initial.begin(), nfa.initial.end(),
                       [&](int q) { return seen[id(q, 0)]; });
  }

  bdd symbolic_safety::nonempty() const
  {
    bdd r = manager->ff();
    for (int v : state_vars)
      r |= manager->var(v);
    return r;
  }

  symbolic_safety determinize_symbolic(const safety_nfa& nfa, bdd_manager& m,
                                       const std::vector<int>& state_vars,
                                       const std::vector<int>& letter_vars)
  {
    if (nfa.size() > max_state_vars)
      throw budget_exceeded("NFA has " + std::to_string(nfa.size())
                            + " states, more than " + std::to_string(max_state_vars)
                            + " state variables");
    if (static_cast<int>(state_vars.size()) != nfa.size()
        || letter_vars.size() != nfa.atoms.size())
      throw invalid_input("variable lists do not match the automaton");

    symbolic_safety a;
    a.manager = &m;
    a.atoms = nfa.atoms;
    a.letter_vars = letter_vars;
    a.state_vars = state_vars;
    for (int v : state_vars)
      {
        if (m.partner(v) < 0)
          throw invalid_input("state variable '" + m.var_name(v) + "' has no primed copy");
        a.next_vars.push_back(m.partner(v));
      }

    auto guard = [&](const nfa_edge& e) {
      bdd g = m.tt();
      for (std::size_t i = 0; i < letter_vars.size(); ++i)
        {
          if (e.pos >> i & 1u)
            g &= m.var(letter_vars[i]);
          if (e.neg >> i & 1u)
            g &= m.nvar(letter_vars[i]);
        }
      return g;
    };

    std::vector<bdd> incoming(nfa.size(), m.ff());
    for (int p = 0; p < nfa.size(); ++p)
      for (auto& e : nfa.edges[p])
        incoming[e.target] |= m.var(state_vars[p]) & guard(e);

    a.trans = a.nonempty();
    for (int q = 0; q < nfa.size(); ++q)
      a.trans &= m.var(a.next_vars[q]).iff(incoming[q]);

    a.initial = m.tt();
    for (int q = 0; q < nfa.size(); ++q)
      {
        bool init = std::find(nfa.initial.begin(), nfa.initial.end(), q) != nfa.initial.end();
        a.initial &= init ? m.var(state_vars[q]) : m.nvar(state_vars[q]);
      }
    return a;
  }

  symbolic_safety determinize_symbolic(const safety_nfa& nfa, bdd_manager& m)
  {
    if (nfa.size() > max_state_vars)
      throw budget_exceeded("NFA has " + std::to_string(nfa.size())
                            + " states, more than " + std::to_string(max_state_vars)
                            + " state variables");
    std::vector<int> state_vars, letter_vars;
    for (int q = 0; q < nfa.size(); ++q)
      state_vars.push_back(m.add_pair("v" + std::to_string(q + 1), var_block::state));
    for (auto& name : nfa.atoms)
      letter_vars.push_back(m.add_var(name, var_block::input));
    return determinize_symbolic(nfa, m, state_vars, letter_vars);
  }

  bdd reachable_subsets(const symbolic_safety& a)
  {
    bdd_manager& m = *a.manager;
    std::vector<int> quantified = a.state_vars;
    quantified.insert(quantified.end(), a.letter_vars.begin(), a.letter_vars.end());
    bdd reach = a.initial, frontier = a.initial;
    while (!frontier.is_false())
      {
        bdd image = m.rename(m.and_exists(a.trans, frontier, quantified));
        frontier = image & !reach;
        reach |= frontier;
      }
    return reach;
  }

  std::uint64_t reachable_subset_count(const symbolic_safety& a)
  {
    return a.manager->count_sat(reachable_subsets(a) & a.nonempty(), a.state_vars);
  }

  std::optional<std::vector<bool>> dfa_step(const symbolic_safety& a,
                                            const std::vector<bool>& subset,
                                            std::uint32_t letter)
  {
    bdd_manager& m = *a.manager;
    std::vector<int> vars = a.state_vars;
    std::vector<bool> values = subset;
    for (std::size_t i = 0; i < a.letter_vars.size(); ++i)
      {
        vars.push_back(a.letter_vars[i]);
        values.push_back(letter >> i & 1u);
      }
    bdd step = a.trans & m.cube(vars, values);
    if (step.is_false())
      return std::nullopt;
    return m.pick_witness(step, a.next_vars);
  }

  bool dfa_accepts(const symbolic_safety& a, const lasso_word& w)
  {
    if (w.loop.empty())
      throw invalid_input("lasso word with empty loop");
    std::vector<bool> subset = a.manager->pick_witness(a.initial, a.state_vars);
    for (auto letter : w.prefix)
      {
        auto next = dfa_step(a, subset, letter);
        if (!next)
          return false;
        subset = std::move(*next);
      }
    // deterministic: the run on the loop repeats once a subset recurs at its start
    std::set<std::vector<bool>> seen;
    while (seen.insert(subset).second)
      for (auto letter : w.loop)
        {
          auto next = dfa_step(a, subset, letter);
          if (!next)
            return false;
          subset = std::move(*next);
        }
    return true;
  }
}
