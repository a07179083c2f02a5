#include "elgames/strategy.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace elgames
{
  namespace
  {
    // iterative Tarjan restricted to `alive`; returns component id per node
    // (-1 outside alive)
    std::vector<int> scc(const std::vector<std::vector<int>>& succ,
                         const std::vector<char>& alive, int& count)
    {
      const int n = static_cast<int>(succ.size());
      std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
      std::vector<char> on_stack(n, 0);
      std::vector<std::pair<int, std::size_t>> call;
      int next = 0;
      count = 0;
      for (int root = 0; root < n; ++root)
        {
          if (!alive[root] || index[root] != -1)
            continue;
          call.push_back({root, 0});
          index[root] = low[root] = next++;
          stack.push_back(root);
          on_stack[root] = 1;
          while (!call.empty())
            {
              auto& [v, i] = call.back();
              if (i < succ[v].size())
                {
                  int w = succ[v][i++];
                  if (!alive[w])
                    continue;
                  if (index[w] == -1)
                    {
                      index[w] = low[w] = next++;
                      stack.push_back(w);
                      on_stack[w] = 1;
                      call.push_back({w, 0});
                    }
                  else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                  continue;
                }
              if (low[v] == index[v])
                {
                  int w;
                  do
                    {
                      w = stack.back();
                      stack.pop_back();
                      on_stack[w] = 0;
                      comp[w] = count;
                    }
                  while (w != v);
                  ++count;
                }
              int done = v;
              call.pop_back();
              if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
      return comp;
    }

    // shortest path from one of `from` to a node satisfying `goal` through
    // `allowed` nodes; with min_steps = 1 the path has at least one edge
    template <class Goal>
    std::vector<int> bfs_path(const std::vector<std::vector<int>>& succ,
                              const std::vector<int>& from, const std::vector<char>& allowed,
                              Goal goal, int min_steps)
    {
      const int n = static_cast<int>(succ.size());
      constexpr int unseen = -2;
      std::vector<int> parent(n, unseen);
      std::vector<char> is_source(n, 0);
      std::deque<int> q;
      for (int s : from)
        is_source[s] = 1;
      auto found = [&](int w) {
        std::vector<int> path{w};
        for (int x = parent[w]; x != -1; x = parent[x])
          {
            path.push_back(x);
            if (min_steps && is_source[x])
              break;
          }
        std::reverse(path.begin(), path.end());
        return path;
      };
      for (int s : from)
        {
          if (min_steps == 0)
            {
              if (parent[s] != unseen)
                continue;
              parent[s] = -1;
              if (goal(s))
                return {s};
              q.push_back(s);
              continue;
            }
          for (int w : succ[s])
            if (allowed[w] && parent[w] == unseen)
              {
                parent[w] = s;
                if (goal(w))
                  return found(w);
                q.push_back(w);
              }
        }
      while (!q.empty())
        {
          int v = q.front();
          q.pop_front();
          for (int w : succ[v])
            {
              if (!allowed[w] || parent[w] != unseen)
                continue;
              parent[w] = v;
              if (goal(w))
                return found(w);
              q.push_back(w);
            }
        }
      return {};
    }
  }

  std::optional<cycle_violation> find_violation(const colored_graph& g,
                                                const el_formula& phi, int num_colors)
  {
    if (num_colors > 20)
      throw budget_exceeded("cycle verification enumerates 2^k color sets");
    const int n = static_cast<int>(g.succ.size());
    std::vector<char> reach(n, 0);
    std::vector<int> stack = g.initial;
    for (int v : stack)
      reach[v] = 1;
    while (!stack.empty())
      {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.succ[v])
          if (!reach[w])
            {
              reach[w] = 1;
              stack.push_back(w);
            }
      }
    const std::vector<char> everywhere(n, 1);

    for (std::uint32_t m = 0; m < (1u << num_colors); ++m)
      {
        color_set d(m);
        if (phi.eval(d))
          continue;
        std::vector<char> alive(n, 0);
        for (int v = 0; v < n; ++v)
          alive[v] = reach[v] && g.colors[v].subset_of(d);
        int count = 0;
        auto comp = scc(g.succ, alive, count);
        std::vector<color_set> cu(count);
        std::vector<char> has_edge(count, 0);
        for (int v = 0; v < n; ++v)
          if (comp[v] >= 0)
            {
              cu[comp[v]] |= g.colors[v];
              for (int w : g.succ[v])
                if (comp[w] == comp[v])
                  has_edge[comp[v]] = 1;
            }
        for (int c = 0; c < count; ++c)
          {
            if (!has_edge[c] || cu[c] != d)
              continue;
            std::vector<char> in(n, 0);
            for (int v = 0; v < n; ++v)
              in[v] = comp[v] == c;
            cycle_violation out;
            out.inf_set = d;
            auto prefix = bfs_path(g.succ, g.initial, everywhere,
                                   [&](int v) { return in[v] == 1; }, 0);
            int entry = prefix.back();
            prefix.pop_back();
            out.prefix = prefix;
            // loop from entry through every color of d and back
            std::vector<int> loop{entry};
            color_set seen = g.colors[entry];
            for (int col : d.members())
              {
                if (seen.contains(col))
                  continue;
                auto leg = bfs_path(g.succ, {loop.back()}, in,
                                    [&](int v) { return g.colors[v].contains(col); }, 0);
                for (std::size_t i = 1; i < leg.size(); ++i)
                  {
                    loop.push_back(leg[i]);
                    seen |= g.colors[leg[i]];
                  }
              }
            auto back = bfs_path(g.succ, {loop.back()}, in,
                                 [&](int v) { return v == entry; }, 1);
            for (std::size_t i = 1; i + 1 < back.size(); ++i)
              loop.push_back(back[i]);
            out.loop = loop;
            return out;
          }
      }
    return std::nullopt;
  }

  el_strategy extract_strategy(const el_game& game, const zielonka_tree& z,
                               const solve_result<node_set>& res)
  {
    const arena& a = game.graph;
    const int n = a.size();
    auto table = signature_table(res, n, z.size());
    auto sig_of = [&](int v) {
      return [&, v](int u) -> const std::optional<std::vector<int>>& { return table[v][u]; };
    };

    el_strategy s;
    s.memory = z.leaves();
    std::deque<std::pair<int, int>> queue;
    std::set<std::pair<int, int>> seen;
    for (int v : res.winning().members())
      {
        int m = descend(z, z.root(), -1, sig_of(v));
        s.initial[v] = m;
        if (seen.insert({v, m}).second)
          queue.push_back({v, m});
      }
    while (!queue.empty())
      {
        auto [v, m] = queue.front();
        queue.pop_front();
        int anc = z.anchor(m, a.colors(v));
        std::vector<int> targets;
        if (a.owner(v) == player::exist)
          {
            int best = -1;
            for (int w : a.succ(v))
              {
                const auto& sw = table[w][anc];
                if (sw && (best == -1 || *sw < *table[best][anc]
                           || (*sw == *table[best][anc] && w < best)))
                  best = w;
              }
            if (best == -1)
              throw std::logic_error("no successor continues the signature");
            s.move[{v, m}] = best;
            targets = {best};
          }
        else
          targets = a.succ(v);
        int after = !z.is_leaf(anc) && z.winning(anc) ? z.child_index_toward(anc, m) : -1;
        for (int w : targets)
          {
            int m2 = z.is_leaf(anc) ? anc : descend(z, anc, after, sig_of(w));
            s.update[{v, m, w}] = m2;
            if (seen.insert({w, m2}).second)
              queue.push_back({w, m2});
          }
      }
    return s;
  }

  verify_result verify_strategy(const el_game& game, const el_strategy& s,
                                const node_set& claimed)
  {
    const arena& a = game.graph;
    verify_result out;
    std::set<int> leaves(s.memory.begin(), s.memory.end());
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> states;
    colored_graph g;
    auto intern = [&](int v, int m) {
      auto [it, fresh] = id.emplace(std::pair{v, m}, static_cast<int>(states.size()));
      if (fresh)
        {
          states.push_back({v, m});
          g.succ.emplace_back();
          g.colors.push_back(a.colors(v));
        }
      return it->second;
    };
    auto fail = [&](std::string why) {
      out.ok = false;
      out.reason = std::move(why);
      return out;
    };

    for (int v : claimed.members())
      {
        auto it = s.initial.find(v);
        if (it == s.initial.end())
          return fail("no initial memory for node " + std::to_string(v));
        if (!leaves.count(it->second))
          return fail("initial memory is not a memory value");
        g.initial.push_back(intern(v, it->second));
      }
    for (std::size_t i = 0; i < states.size(); ++i)
      {
        auto [v, m] = states[i];
        auto where = " at (" + std::to_string(v) + "," + std::to_string(m) + ")";
        if (!claimed.test(v))
          return fail("play leaves the claimed winning set" + where);
        std::vector<int> targets;
        if (a.owner(v) == player::exist)
          {
            auto it = s.move.find({v, m});
            if (it == s.move.end())
              return fail("missing move" + where);
            const auto& succ = a.succ(v);
            if (std::find(succ.begin(), succ.end(), it->second) == succ.end())
              return fail("move is not an edge" + where);
            targets = {it->second};
          }
        else
          targets = a.succ(v);
        for (int w : targets)
          {
            auto it = s.update.find({v, m, w});
            if (it == s.update.end())
              return fail("missing memory update" + where);
            if (!leaves.count(it->second))
              return fail("update yields an unknown memory value" + where);
            int x = intern(w, it->second);
            g.succ[i].push_back(x);
          }
      }
    auto bad = find_violation(g, game.objective, game.colors.size());
    if (!bad)
      {
        out.ok = true;
        return out;
      }
    out.ok = false;
    out.inf_set = bad->inf_set;
    out.reason = "a play visits exactly " + game.colors.format(bad->inf_set)
                 + " infinitely often";
    for (int x : bad->prefix)
      out.prefix.push_back(states[x]);
    for (int x : bad->loop)
      out.loop.push_back(states[x]);
    return out;
  }

  std::string save_strategy(const el_strategy& s)
  {
    std::ostringstream os;
    os << "strategy 1\n";
    for (auto [v, m] : s.initial)
      os << "initial " << v << ' ' << m << '\n';
    for (auto& [k, w] : s.move)
      os << "move " << k.first << ' ' << k.second << ' ' << w << '\n';
    for (auto& [k, m2] : s.update)
      os << "update " << std::get<0>(k) << ' ' << std::get<1>(k) << ' ' << std::get<2>(k)
         << ' ' << m2 << '\n';
    return os.str();
  }

  el_strategy load_strategy(std::string_view text)
  {
    el_strategy s;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool header = false;
    std::set<int> mem;
    while (std::getline(in, raw))
      {
        ++lineno;
        std::istringstream ls(raw.substr(0, raw.find('#')));
        std::string kw;
        if (!(ls >> kw))
          continue;
        std::vector<int> args;
        std::string tok;
        while (ls >> tok)
          {
            try
              {
                std::size_t used = 0;
                args.push_back(std::stoi(tok, &used));
                if (used != tok.size())
                  throw std::invalid_argument(tok);
              }
            catch (const std::exception&)
              {
                throw parse_error("expected integer, got '" + tok + "'", lineno);
              }
          }
        auto want = [&](std::size_t k) {
          if (args.size() != k)
            throw parse_error("wrong number of fields for '" + kw + "'", lineno);
        };
        if (!header)
          {
            if (kw != "strategy" || args != std::vector<int>{1})
              throw parse_error("expected header 'strategy 1'", lineno);
            header = true;
          }
        else if (kw == "initial")
          {
            want(2);
            s.initial[args[0]] = args[1];
            mem.insert(args[1]);
          }
        else if (kw == "move")
          {
            want(3);
            s.move[{args[0], args[1]}] = args[2];
            mem.insert(args[1]);
          }
        else if (kw == "update")
          {
            want(4);
            s.update[{args[0], args[1], args[2]}] = args[3];
            mem.insert(args[1]);
            mem.insert(args[3]);
          }
        else
          throw parse_error("unknown keyword '" + kw + "'", lineno);
      }
    if (!header)
      throw parse_error("missing header 'strategy 1'", lineno + 1);
    s.memory.assign(mem.begin(), mem.end());
    return s;
  }
}
