#include "elgames/game.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace elgames
{
  node_set node_set::full(int n)
  {
    node_set s(n);
    for (auto& w : s.w_)
      w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  node_set node_set::of(int n, const std::vector<int>& members)
  {
    node_set s(n);
    for (int v : members)
      s.set(v);
    return s;
  }

  void node_set::trim()
  {
    if (n_ % 64 != 0 && !w_.empty())
      w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int node_set::count() const
  {
    int c = 0;
    for (auto w : w_)
      c += __builtin_popcountll(w);
    return c;
  }

  bool node_set::none() const
  {
    return std::all_of(w_.begin(), w_.end(), [](auto w) { return w == 0; });
  }

  bool node_set::subset_of(const node_set& o) const
  {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i])
        return false;
    return true;
  }

  std::vector<int> node_set::members() const
  {
    std::vector<int> out;
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (auto w = w_[i]; w; w &= w - 1)
        out.push_back(static_cast<int>(i * 64) + __builtin_ctzll(w));
    return out;
  }

  node_set node_set::operator|(const node_set& o) const
  {
    node_set r = *this;
    return r |= o;
  }

  node_set node_set::operator&(const node_set& o) const
  {
    node_set r = *this;
    return r &= o;
  }

  node_set node_set::operator~() const
  {
    node_set r = *this;
    for (auto& w : r.w_)
      w = ~w;
    r.trim();
    return r;
  }

  node_set& node_set::operator|=(const node_set& o)
  {
    for (std::size_t i = 0; i < w_.size(); ++i)
      w_[i] |= o.w_[i];
    return *this;
  }

  node_set& node_set::operator&=(const node_set& o)
  {
    for (std::size_t i = 0; i < w_.size(); ++i)
      w_[i] &= o.w_[i];
    return *this;
  }

  int arena::add_node(player owner, color_set colors)
  {
    owner_.push_back(owner);
    colors_.push_back(colors);
    succ_.emplace_back();
    pred_.emplace_back();
    return size() - 1;
  }

  void arena::add_edge(int src, int dst)
  {
    if (src < 0 || src >= size() || dst < 0 || dst >= size())
      throw invalid_input("edge endpoint out of range");
    auto& s = succ_[src];
    if (std::find(s.begin(), s.end(), dst) != s.end())
      return;
    s.push_back(dst);
    pred_[dst].push_back(src);
  }

  std::size_t arena::edge_count() const
  {
    std::size_t m = 0;
    for (auto& s : succ_)
      m += s.size();
    return m;
  }

  bool arena::is_total() const
  {
    return std::none_of(succ_.begin(), succ_.end(),
                        [](auto& s) { return s.empty(); });
  }

  void arena::validate(color_set allowed) const
  {
    for (int v = 0; v < size(); ++v)
      {
        if (succ_[v].empty())
          throw invalid_input("node " + std::to_string(v) + " has no successor");
        if (!colors_[v].subset_of(allowed))
          throw invalid_input("node " + std::to_string(v)
                              + " uses a color outside the table");
      }
  }

  int parity_game::max_priority() const
  {
    return priority.empty() ? 0 : *std::max_element(priority.begin(), priority.end());
  }

  node_set cpre(const arena& a, const node_set& x, player p)
  {
    const int n = a.size();
    node_set out(n);
    for (int v = 0; v < n; ++v)
      {
        const auto& s = a.succ(v);
        if (a.owner(v) == p)
          {
            if (std::any_of(s.begin(), s.end(), [&](int w) { return x.test(w); }))
              out.set(v);
          }
        else if (std::all_of(s.begin(), s.end(), [&](int w) { return x.test(w); }))
          out.set(v);
      }
    return out;
  }

  namespace
  {
    std::vector<std::string> split_ws(const std::string& line)
    {
      std::istringstream is(line);
      std::vector<std::string> out;
      std::string w;
      while (is >> w)
        out.push_back(w);
      return out;
    }

    int parse_int(const std::string& s, std::size_t line)
    {
      std::size_t used = 0;
      int v = 0;
      try
        {
          v = std::stoi(s, &used);
        }
      catch (const std::exception&)
        {
          throw parse_error("expected integer, got '" + s + "'", line);
        }
      if (used != s.size())
        throw parse_error("expected integer, got '" + s + "'", line);
      return v;
    }
  }

  el_game load_game(std::string_view text)
  {
    el_game g;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool header = false, have_colors = false, have_objective = false;
    std::string objective_text;
    std::size_t objective_line = 0;
    std::vector<std::pair<std::pair<int, int>, std::size_t>> edges;

    while (std::getline(in, raw))
      {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto words = split_ws(line);
        if (words.empty())
          continue;
        const std::string& kw = words[0];
        if (!header)
          {
            if (kw != "elgame" || words.size() != 2 || words[1] != "1")
              throw parse_error("expected header 'elgame 1'", lineno);
            header = true;
          }
        else if (kw == "colors")
          {
            if (have_colors)
              throw parse_error("duplicate colors line", lineno);
            have_colors = true;
            for (std::size_t i = 1; i < words.size(); ++i)
              {
                try
                  {
                    g.colors.add(words[i]);
                  }
                catch (const invalid_input& e)
                  {
                    throw parse_error(e.what(), lineno);
                  }
              }
          }
        else if (kw == "node")
          {
            if (!have_colors)
              throw parse_error("node before colors line", lineno);
            if (words.size() < 3)
              throw parse_error("expected 'node <id> <E|A> [color...]'", lineno);
            int id = parse_int(words[1], lineno);
            if (id != g.graph.size())
              throw parse_error("node ids must be consecutive from 0", lineno);
            player p;
            if (words[2] == "E")
              p = player::exist;
            else if (words[2] == "A")
              p = player::forall;
            else
              throw parse_error("owner must be E or A", lineno);
            color_set cs;
            for (std::size_t i = 3; i < words.size(); ++i)
              cs = cs.with(g.colors.at(words[i]));
            g.graph.add_node(p, cs);
          }
        else if (kw == "edge")
          {
            if (words.size() != 3)
              throw parse_error("expected 'edge <src> <dst>'", lineno);
            edges.push_back({{parse_int(words[1], lineno), parse_int(words[2], lineno)},
                             lineno});
          }
        else if (kw == "objective")
          {
            if (have_objective)
              throw parse_error("duplicate objective line", lineno);
            have_objective = true;
            auto at = line.find("objective") + 9;
            objective_text = line.substr(at);
            objective_line = lineno;
          }
        else
          throw parse_error("unknown keyword '" + kw + "'", lineno);
      }
    if (!header)
      throw parse_error("missing header 'elgame 1'", lineno + 1);
    if (!have_objective)
      throw parse_error("missing objective line", lineno + 1);
    for (auto& [e, ln] : edges)
      {
        if (e.first < 0 || e.first >= g.graph.size() || e.second < 0
            || e.second >= g.graph.size())
          throw parse_error("edge endpoint out of range", ln);
        g.graph.add_edge(e.first, e.second);
      }
    try
      {
        g.objective = parse_el(objective_text, g.colors);
      }
    catch (const parse_error& e)
      {
        throw parse_error(std::string("objective: ") + e.what(), objective_line);
      }
    g.graph.validate(g.colors.all());
    return g;
  }

  el_game load_game_file(const std::string& path)
  {
    std::ifstream f(path);
    if (!f)
      throw invalid_input("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return load_game(ss.str());
  }

  std::string save_game(const el_game& g)
  {
    std::ostringstream os;
    os << "elgame 1\ncolors";
    for (auto& n : g.colors.names())
      os << ' ' << n;
    os << '\n';
    const arena& a = g.graph;
    for (int v = 0; v < a.size(); ++v)
      {
        os << "node " << v << ' ' << (a.owner(v) == player::exist ? 'E' : 'A');
        for (int c : a.colors(v).members())
          os << ' ' << g.colors.name(c);
        os << '\n';
      }
    for (int v = 0; v < a.size(); ++v)
      for (int w : a.succ(v))
        os << "edge " << v << ' ' << w << '\n';
    os << "objective " << to_string(g.objective, g.colors) << '\n';
    return os.str();
  }

  el_game dual_game(const el_game& g)
  {
    el_game d = g;
    for (int v = 0; v < d.graph.size(); ++v)
      d.graph.set_owner(v, opponent(d.graph.owner(v)));
    d.objective = el_formula::negate(g.objective);
    return d;
  }

  el_formula random_formula(std::mt19937_64& rng, int num_colors, int depth)
  {
    std::uniform_int_distribution<int> pick(0, 19);
    if (num_colors == 0)
      return pick(rng) % 2 ? el_formula::tt() : el_formula::ff();
    int r = pick(rng);
    if (depth <= 0 || r < 3)
      {
        int c = std::uniform_int_distribution<int>(0, num_colors - 1)(rng);
        return pick(rng) % 2 ? el_formula::inf(c) : el_formula::fin(c);
      }
    if (r < 5)
      return el_formula::negate(random_formula(rng, num_colors, depth - 1));
    el_formula x = random_formula(rng, num_colors, depth - 1);
    el_formula y = random_formula(rng, num_colors, depth - 1);
    return r < 12 ? el_formula::conj(x, y) : el_formula::disj(x, y);
  }

  el_formula random_objective(std::mt19937_64& rng, int num_colors, int depth)
  {
    if (num_colors == 0)
      return random_formula(rng, 0, depth);
    std::vector<int> cs(num_colors);
    for (int c = 0; c < num_colors; ++c)
      cs[c] = c;
    std::shuffle(cs.begin(), cs.end(), rng);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i + 1 < num_colors; i += 2)
      pairs.push_back({cs[i], cs[i + 1]});
    switch (std::uniform_int_distribution<int>(0, 9)(rng))
      {
      case 0:
      case 1:
      case 2:
        {
          std::vector<color_set> family;
          for (std::uint32_t m = 0; m < (1u << num_colors); ++m)
            if (rng() % 2)
              family.emplace_back(m);
          return objectives::muller(family, num_colors);
        }
      case 3:
        if (!pairs.empty())
          return objectives::streett(pairs);
        break;
      case 4:
        if (!pairs.empty())
          return objectives::rabin(pairs);
        break;
      case 5:
        return objectives::parity(cs);
      case 6:
        return objectives::generalized_buchi(cs);
      default:
        break;
      }
    return random_formula(rng, num_colors, depth);
  }

  el_game random_game(std::uint64_t seed, const random_game_params& p)
  {
    if (p.nodes < 1 || p.colors < 0 || p.colors > max_colors)
      throw invalid_input("bad random game parameters");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5), edge(p.edge_density),
      color(p.color_density);
    std::uniform_int_distribution<int> pick_node(0, p.nodes - 1);

    el_game g;
    for (int c = 0; c < p.colors; ++c)
      g.colors.add(std::string(1, static_cast<char>('a' + c % 26))
                   + (c >= 26 ? std::to_string(c / 26) : ""));
    for (int v = 0; v < p.nodes; ++v)
      {
        color_set cs;
        for (int c = 0; c < p.colors; ++c)
          if (color(rng))
            cs = cs.with(c);
        g.graph.add_node(coin(rng) ? player::exist : player::forall, cs);
      }
    for (int v = 0; v < p.nodes; ++v)
      {
        g.graph.add_edge(v, pick_node(rng));
        for (int w = 0; w < p.nodes; ++w)
          if (edge(rng))
            g.graph.add_edge(v, w);
      }
    g.objective = p.mixed_objectives
                    ? random_objective(rng, p.colors, p.formula_depth)
                    : random_formula(rng, p.colors, p.formula_depth);
    return g;
  }
}
