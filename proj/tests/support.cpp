#include "support.hpp"

#include "elgames/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace elgames
{
  std::string check_tree_invariants(const zielonka_tree& z)
  {
    std::string err;
    auto fail = [&](int t, const char* what) {
      err += "vertex " + std::to_string(t) + ": " + what + "\n";
    };
    const el_formula& phi = z.formula();
    const int k = z.num_colors();
    if (z.label(0) != color_set::full(k))
      fail(0, "root label is not C");
    if (z.vertex(0).level != k || z.vertex(0).parent != -1)
      fail(0, "root level/parent");
    std::vector<int> leaves;
    for (int t = 0; t < z.size(); ++t)
      {
        const auto& v = z.vertex(t);
        if (v.winning != phi.eval(v.label))
          fail(t, "winning flag differs from eval");
        if (v.children.empty())
          leaves.push_back(t);
        int prev = t;
        for (std::size_t i = 0; i < v.children.size(); ++i)
          {
            int c = v.children[i];
            const auto& cv = z.vertex(c);
            if (cv.parent != t)
              fail(c, "parent link");
            if (c != prev + 1 && i == 0)
              fail(c, "not preorder");
            if (!cv.label.subset_of(v.label) || cv.label == v.label)
              fail(c, "label not a proper subset");
            if (cv.winning == v.winning)
              fail(c, "satisfaction does not flip");
            if (cv.level != v.level - 1)
              fail(c, "level");
            for (int c2 : v.children)
              if (c2 != c && cv.label.subset_of(z.label(c2)))
                fail(c, "siblings not an antichain");
            for (int col : v.label.minus(cv.label).members())
              if (phi.eval(cv.label.with(col)) != v.winning)
                fail(c, "child not maximal");
            if (i > 0)
              {
                color_set p = z.label(v.children[i - 1]);
                if (p.size() < cv.label.size()
                    || (p.size() == cv.label.size() && p.bits() >= cv.label.bits()))
                  fail(c, "child order");
              }
            prev = z.vertex(c).subtree_end - 1;
          }
        // every flipping subset lies below some child
        for (std::uint32_t m = 0; m < (1u << k); ++m)
          {
            color_set d(m);
            if (!d.subset_of(v.label) || d == v.label || phi.eval(d) == v.winning)
              continue;
            bool covered = false;
            for (int c : v.children)
              covered = covered || d.subset_of(z.label(c));
            if (!covered)
              fail(t, "missing child for a flipping subset");
          }
      }
    if (leaves != z.leaves())
      fail(0, "leaf list");
    return err;
  }

  lasso_play random_lasso(std::mt19937_64& rng, int num_colors)
  {
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<std::uint32_t> set(0, (1u << num_colors) - 1);
    lasso_play p;
    int a = len(rng), b = 1 + len(rng);
    for (int i = 0; i < a; ++i)
      p.prefix.emplace_back(set(rng));
    for (int i = 0; i < b; ++i)
      p.loop.emplace_back(set(rng));
    return p;
  }
}

namespace elgames
{
  namespace
  {
    std::string canon(std::uint32_t label, bool win, std::vector<std::string> kids)
    {
      std::sort(kids.begin(), kids.end());
      std::string s = std::to_string(label) + (win ? "W" : "L") + "(";
      for (auto& k : kids)
        s += k + ",";
      return s + ")";
    }
  }

  std::string canonical_form(const zielonka_tree& z, int t)
  {
    std::vector<std::string> kids;
    for (int c : z.vertex(t).children)
      kids.push_back(canonical_form(z, c));
    return canon(z.label(t).bits(), z.winning(t), kids);
  }

  std::string streett_description_canon(int k)
  {
    const color_set all = color_set::full(2 * k);
    std::function<std::string(std::vector<int>)> rec = [&](std::vector<int> l) {
      color_set used;
      for (int c : l)
        used = used.with(c);
      color_set label = all.minus(used);
      bool win = l.size() % 2 == 0;
      std::vector<std::string> kids;
      if (!label.empty())
        {
          if (win)
            {
              for (int j = 0; j < k; ++j)
                if (label.contains(2 * j + 1))
                  {
                    auto l2 = l;
                    l2.push_back(2 * j + 1);
                    kids.push_back(rec(l2));
                  }
            }
          else
            {
              auto l2 = l;
              l2.push_back(l.back() - 1);
              kids.push_back(rec(l2));
            }
        }
      return canon(label.bits(), win, kids);
    };
    return rec({});
  }

  int streett_leaf_count(int k)
  {
    int f = 1;
    for (int i = 2; i <= k; ++i)
      f *= i;
    return f;
  }
}

namespace elgames
{
  namespace
  {
    std::vector<int> successors(const el_game& g, const el_strategy& s, int v, int m)
    {
      if (g.graph.owner(v) == player::exist)
        return {s.move.at({v, m})};
      return g.graph.succ(v);
    }
  }

  el_strategy complete_strategy(const el_game& g, el_strategy s)
  {
    std::deque<std::pair<int, int>> q;
    std::set<std::pair<int, int>> seen;
    for (auto [v, m] : s.initial)
      if (seen.insert({v, m}).second)
        q.push_back({v, m});
    while (!q.empty())
      {
        auto [v, m] = q.front();
        q.pop_front();
        if (g.graph.owner(v) == player::exist && !s.move.count({v, m}))
          s.move[{v, m}] = g.graph.succ(v).front();
        for (int w : successors(g, s, v, m))
          {
            auto key = std::tuple{v, m, w};
            if (!s.update.count(key))
              s.update[key] = s.memory.front();
            int m2 = s.update[key];
            if (seen.insert({w, m2}).second)
              q.push_back({w, m2});
          }
      }
    return s;
  }

  bool judge_strategy(const el_game& g, const el_strategy& s)
  {
    el_game prod;
    prod.colors = g.colors;
    prod.objective = g.objective;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int v, int m) {
      auto [it, fresh] = id.emplace(std::pair{v, m}, static_cast<int>(states.size()));
      if (fresh)
        {
          states.push_back({v, m});
          prod.graph.add_node(player::forall, g.graph.colors(v));
        }
      return it->second;
    };
    std::vector<int> init;
    for (auto [v, m] : s.initial)
      init.push_back(intern(v, m));
    for (std::size_t i = 0; i < states.size(); ++i)
      {
        auto [v, m] = states[i];
        for (int w : successors(g, s, v, m))
          {
            int x = intern(w, s.update.at({v, m, w}));
            prod.graph.add_edge(static_cast<int>(i), x);
          }
      }
    auto win = solve_el_via_reduction(prod);
    for (int x : init)
      if (!win.test(x))
        return false;
    return true;
  }

  color_set lasso_colors(const el_game& g, const el_strategy& s, const verify_result& r,
                         bool& valid)
  {
    valid = !r.loop.empty();
    std::vector<std::pair<int, int>> path = r.prefix;
    path.insert(path.end(), r.loop.begin(), r.loop.end());
    path.push_back(r.loop.front());
    if (!r.prefix.empty())
      valid = valid && s.initial.count(r.prefix.front().first)
              && s.initial.at(r.prefix.front().first) == r.prefix.front().second;
    else if (valid)
      valid = s.initial.count(r.loop.front().first)
              && s.initial.at(r.loop.front().first) == r.loop.front().second;
    for (std::size_t i = 0; valid && i + 1 < path.size(); ++i)
      {
        auto [v, m] = path[i];
        auto [w, m2] = path[i + 1];
        auto succ = successors(g, s, v, m);
        valid = std::find(succ.begin(), succ.end(), w) != succ.end()
                && s.update.at({v, m, w}) == m2;
      }
    color_set c;
    for (auto [v, m] : r.loop)
      c |= g.graph.colors(v);
    return c;
  }
}

namespace elgames
{
  differential_report backend_differential(std::uint64_t seed, int sequences,
                                           int max_vars, int ops_per_sequence)
  {
    differential_report rep;
    std::mt19937_64 rng(seed);
    for (int s = 0; s < sequences; ++s)
      {
        ++rep.sequences;
        // pairs keep rename total; an odd count leaves one unpartnered var
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vars));
        bdd_manager m;
        std::vector<int> partner(n, -1);
        for (int v = 0; v + 1 < n; v += 2)
          {
            m.add_pair("x" + std::to_string(v / 2), var_block::state);
            partner[v] = v + 1;
            partner[v + 1] = v;
          }
        if (n % 2)
          m.add_var("z", var_block::input);
        const bool renamable = n % 2 == 0;

        std::vector<std::pair<bdd, truth_table>> pool;
        auto table_of = [&](const bdd& f) {
          truth_table t = truth_table::constant(n, false);
          std::vector<bool> asg(n);
          for (std::uint32_t a = 0; a < (1u << n); ++a)
            {
              for (int v = 0; v < n; ++v)
                asg[v] = (a >> v) & 1u;
              t.assign(a, m.eval(f, asg));
            }
          return t;
        };
        auto random_vars = [&]() {
          std::vector<int> vs;
          for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0)
              vs.push_back(v);
          return vs;
        };
        auto pick = [&]() -> std::pair<bdd, truth_table>& { return pool[rng() % pool.size()]; };
        auto fail = [&](const std::string& what) {
          rep.mismatches.push_back("sequence " + std::to_string(s) + ": " + what);
        };

        pool.push_back({m.tt(), truth_table::constant(n, true)});
        pool.push_back({m.ff(), truth_table::constant(n, false)});
        for (int v = 0; v < n; ++v)
          pool.push_back({m.var(v), truth_table::var(n, v)});

        for (int i = 0; i < ops_per_sequence; ++i)
          {
            ++rep.operations;
            std::pair<bdd, truth_table> r;
            std::string op;
            switch (rng() % 10)
              {
              case 0:
                {
                  auto& a = pick();
                  r = {!a.first, !a.second};
                  op = "not";
                  break;
                }
              case 1:
                {
                  auto& a = pick();
                  auto& b = pick();
                  r = {a.first & b.first, a.second & b.second};
                  op = "and";
                  break;
                }
              case 2:
                {
                  auto& a = pick();
                  auto& b = pick();
                  r = {a.first | b.first, a.second | b.second};
                  op = "or";
                  break;
                }
              case 3:
                {
                  auto& a = pick();
                  auto& b = pick();
                  r = {a.first ^ b.first, a.second ^ b.second};
                  op = "xor";
                  break;
                }
              case 4:
                {
                  auto& a = pick();
                  auto& b = pick();
                  auto& c = pick();
                  r = {m.ite(a.first, b.first, c.first),
                       truth_table::ite(a.second, b.second, c.second)};
                  op = "ite";
                  break;
                }
              case 5:
                {
                  auto& a = pick();
                  auto vs = random_vars();
                  r = {m.exists(vs, a.first), a.second.exists(vs)};
                  op = "exists";
                  break;
                }
              case 6:
                {
                  auto& a = pick();
                  auto vs = random_vars();
                  r = {m.forall(vs, a.first), a.second.forall(vs)};
                  op = "forall";
                  break;
                }
              case 7:
                {
                  auto& a = pick();
                  if (!renamable)
                    {
                      bool threw = false;
                      try
                        {
                          r = {m.rename(a.first), a.second};
                        }
                      catch (const std::exception&)
                        {
                          threw = true;
                        }
                      bool mentions_z = a.second.exists({n - 1}) != a.second;
                      if (threw != mentions_z)
                        fail("rename error on unpartnered variable");
                      continue;
                    }
                  r = {m.rename(a.first), a.second.rename(partner)};
                  if (m.rename(r.first) != a.first)
                    fail("rename is not an involution");
                  op = "rename";
                  break;
                }
              case 8:
                {
                  auto& a = pick();
                  auto& b = pick();
                  auto vs = random_vars();
                  r = {m.and_exists(a.first, b.first, vs),
                       (a.second & b.second).exists(vs)};
                  op = "and_exists";
                  break;
                }
              default:
                {
                  auto& a = pick();
                  auto vs = random_vars();
                  if (m.count_sat(a.first, vs) != a.second.count_sat(vs))
                    fail("count_sat");
                  if (a.second.is_false())
                    {
                      bool threw = false;
                      try
                        {
                          m.pick_witness(a.first, vs);
                        }
                      catch (const std::exception&)
                        {
                          threw = true;
                        }
                      if (!threw)
                        fail("pick_witness on false");
                    }
                  else
                    {
                      auto w = m.pick_witness(a.first, vs);
                      bdd cof = a.first;
                      for (std::size_t j = 0; j < vs.size(); ++j)
                        cof = m.restrict(cof, vs[j], w[j]);
                      if (cof.is_false())
                        fail("witness cofactor is false");
                    }
                  continue;
                }
              }
            if (table_of(r.first) != r.second)
              fail(op + " result differs");
            for (auto& [f, t] : pool)
              if ((f == r.first) != (t == r.second))
                fail(op + " breaks canonicity");
            pool.push_back(std::move(r));
          }
      }
    return rep;
  }

  namespace
  {
    std::vector<char> live_states(const safety_nfa& a)
    {
      std::vector<char> live(a.size(), 1);
      for (bool changed = true; changed;)
        {
          changed = false;
          for (int q = 0; q < a.size(); ++q)
            {
              bool any = false;
              for (auto& e : a.edges[q])
                any = any || (live[e.target] && (e.pos & e.neg) == 0);
              if (live[q] && !any)
                {
                  live[q] = 0;
                  changed = true;
                }
            }
        }
      return live;
    }

    std::vector<int> post(const safety_nfa& a, const std::vector<char>& live,
                          const std::vector<int>& subset, std::uint32_t letter)
    {
      std::set<int> out;
      for (int q : subset)
        for (auto& e : a.edges[q])
          if (live[e.target] && e.matches(letter))
            out.insert(e.target);
      return {out.begin(), out.end()};
    }
  }

  bool nfa_language_equal(const safety_nfa& x, const safety_nfa& y)
  {
    if (x.atoms != y.atoms)
      return false;
    auto lx = live_states(x), ly = live_states(y);
    auto start = [](const safety_nfa& a, const std::vector<char>& live) {
      std::vector<int> s;
      for (int q : a.initial)
        if (live[q])
          s.push_back(q);
      return s;
    };
    using pair_t = std::pair<std::vector<int>, std::vector<int>>;
    std::set<pair_t> seen;
    std::deque<pair_t> work{{start(x, lx), start(y, ly)}};
    seen.insert(work.front());
    std::uint32_t letters = 1u << x.atoms.size();
    while (!work.empty())
      {
        auto [sx, sy] = work.front();
        work.pop_front();
        // a nonempty set of live states always has a continuation
        if (sx.empty() != sy.empty())
          return false;
        if (sx.empty())
          continue;
        for (std::uint32_t l = 0; l < letters; ++l)
          {
            pair_t nxt{post(x, lx, sx, l), post(y, ly, sy, l)};
            if (seen.insert(nxt).second)
              work.push_back(nxt);
          }
      }
    return true;
  }

  ltl random_ltl(std::mt19937_64& rng, int num_atoms, int depth)
  {
    std::uniform_int_distribution<int> op(0, depth <= 0 ? 1 : 11);
    auto sub = [&] { return random_ltl(rng, num_atoms, depth - 1); };
    switch (op(rng))
      {
      case 0:
      case 1:
        return ltl::atom(std::string(
          1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, num_atoms - 1)(rng))));
      case 2:
        return ltl::negate(sub());
      case 3:
        return ltl::conj(sub(), sub());
      case 4:
        return ltl::disj(sub(), sub());
      case 5:
        return ltl::implies(sub(), sub());
      case 6:
        return ltl::next(sub());
      case 7:
        return ltl::globally(sub());
      case 8:
        return ltl::eventually(sub());
      case 9:
        return ltl::until(sub(), sub());
      case 10:
        return ltl::release(sub(), sub());
      default:
        return std::bernoulli_distribution(0.5)(rng) ? ltl::tt() : ltl::ff();
      }
  }

  lasso_agreement_report lasso_agreement(std::uint64_t seed, int formulas,
                                         int words_per_formula, int max_atoms,
                                         int max_nfa_states, int max_lasso_part)
  {
    std::mt19937_64 rng(seed);
    lasso_agreement_report rep;
    const std::vector<std::string> names{"a", "b", "c", "d", "e"};
    while (rep.formulas < formulas)
      {
        int n = std::uniform_int_distribution<int>(1, max_atoms)(rng);
        ltl phi = random_safety_formula(rng, n, std::uniform_int_distribution<int>(1, 4)(rng));
        std::vector<std::string> atoms(names.begin(), names.begin() + n);
        safety_nfa nfa = nfa_from_safety(check_safety(phi), atoms);
        if (nfa.size() > max_nfa_states)
          {
            ++rep.skipped;
            continue;
          }
        ++rep.formulas;
        bdd_manager m;
        symbolic_safety dfa = determinize_symbolic(nfa, m);
        for (int i = 0; i < words_per_formula; ++i)
          {
            lasso_word w = random_lasso_word(rng, n, max_lasso_part, max_lasso_part);
            ++rep.words;
            bool sem = holds_on_lasso(phi, atoms, w);
            bool run = nfa_accepts(nfa, w);
            bool det = dfa_accepts(dfa, w);
            if (sem != run || sem != det)
              rep.mismatches.push_back(to_string(phi) + ": semantics " + std::to_string(sem)
                                       + ", nfa " + std::to_string(run) + ", dfa "
                                       + std::to_string(det));
          }
      }
    return rep;
  }

  synthesis_problem random_synthesis_problem(std::mt19937_64& rng)
  {
    synthesis_problem p;
    int num_in = std::uniform_int_distribution<int>(1, 2)(rng);
    const std::vector<std::string> atoms{"a", "b", "c"};
    p.inputs.assign(atoms.begin(), atoms.begin() + num_in);
    p.outputs.assign(atoms.begin() + num_in, atoms.end());
    p.safety = std::bernoulli_distribution(0.15)(rng)
                 ? ltl::tt()
                 : random_safety_formula(rng, 3, std::uniform_int_distribution<int>(1, 3)(rng));

    auto literal = [&] {
      ltl a = ltl::atom(atoms[std::uniform_int_distribution<int>(0, 2)(rng)]);
      return std::bernoulli_distribution(0.3)(rng) ? ltl::negate(a) : a;
    };
    auto assertion = [&] {
      switch (std::uniform_int_distribution<int>(0, 3)(rng))
        {
        case 0:
          return ltl::conj(literal(), literal());
        case 1:
          return ltl::disj(literal(), literal());
        default:
          return literal();
        }
    };
    std::function<ltl(int)> live = [&](int depth) -> ltl {
      int op = std::uniform_int_distribution<int>(0, depth <= 0 ? 1 : 4)(rng);
      switch (op)
        {
        case 0:
          return ltl::globally(ltl::eventually(assertion()));
        case 1:
          return ltl::eventually(ltl::globally(assertion()));
        case 2:
          return ltl::conj(live(depth - 1), live(depth - 1));
        case 3:
          return ltl::disj(live(depth - 1), live(depth - 1));
        default:
          return ltl::implies(live(depth - 1), live(depth - 1));
        }
    };
    p.liveness = live(2);
    return p;
  }
}
