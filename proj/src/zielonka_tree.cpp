#include "elgames/zielonka_tree.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace elgames
{
  zielonka_tree zielonka_tree::build(const el_formula& phi, int num_colors)
  {
    if (num_colors > max_tree_colors)
      throw budget_exceeded("Zielonka tree construction supports at most "
                            + std::to_string(max_tree_colors) + " colors");
    if (!phi.colors().subset_of(color_set::full(num_colors)))
      throw invalid_input("formula mentions colors outside the table");
    zielonka_tree t;
    t.phi_ = phi;
    t.num_colors_ = num_colors;
    t.add_subtree(color_set::full(num_colors), -1, num_colors, 0);
    return t;
  }

  int zielonka_tree::add_subtree(color_set label, int parent, int level, int depth)
  {
    int id = size();
    bool win = phi_.eval(label);
    v_.push_back(tree_vertex{label, win, parent, {}, level, depth, 0});

    // all proper subsets with flipped satisfaction, then keep the maximal ones
    std::vector<color_set> flipped;
    const std::uint32_t l = label.bits();
    if (l != 0)
      for (std::uint32_t sub = (l - 1) & l;; sub = (sub - 1) & l)
        {
          if (phi_.eval(color_set(sub)) != win)
            flipped.emplace_back(sub);
          if (sub == 0)
            break;
        }
    std::sort(flipped.begin(), flipped.end(), [](color_set a, color_set b) {
      if (a.size() != b.size())
        return a.size() > b.size();
      return a.bits() < b.bits();
    });
    std::vector<color_set> maximal;
    for (color_set d : flipped)
      if (std::none_of(maximal.begin(), maximal.end(),
                       [&](color_set k) { return d.subset_of(k); }))
        maximal.push_back(d);

    if (maximal.empty())
      leaves_.push_back(id);
    for (color_set d : maximal)
      {
        int c = add_subtree(d, id, level - 1, depth + 1);
        v_[id].children.push_back(c);
      }
    v_[id].subtree_end = size();
    return id;
  }

  int zielonka_tree::child_index_toward(int s, int t) const
  {
    const auto& ch = v_[s].children;
    for (std::size_t i = 0; i < ch.size(); ++i)
      if (is_ancestor_or_self(ch[i], t))
        return static_cast<int>(i);
    throw invalid_input("vertex is not a strict descendant");
  }

  int zielonka_tree::child_toward(int s, int t) const
  {
    return v_[s].children[child_index_toward(s, t)];
  }

  std::vector<int> zielonka_tree::path_to(int t) const
  {
    std::vector<int> p;
    for (int s = t; s != -1; s = v_[s].parent)
      p.push_back(s);
    std::reverse(p.begin(), p.end());
    return p;
  }

  int zielonka_tree::anchor(int t, color_set colors) const
  {
    int s = t;
    while (!colors.subset_of(v_[s].label))
      s = v_[s].parent;
    return s;
  }

  bool zielonka_tree::anc_member(int s, int t, color_set colors) const
  {
    if (!is_ancestor_or_self(s, t))
      throw invalid_input("anc set requires an ancestor-or-self pair");
    if (!colors.subset_of(v_[s].label))
      return false;
    return s == t || !colors.subset_of(v_[child_toward(s, t)].label);
  }

  int zielonka_tree::height() const
  {
    int h = 0;
    for (auto& v : v_)
      h = std::max(h, v.depth);
    return h;
  }

  int zielonka_tree::max_branching() const
  {
    std::size_t b = 0;
    for (auto& v : v_)
      b = std::max(b, v.children.size());
    return static_cast<int>(b);
  }

  std::string zielonka_tree::to_text(const color_table& colors) const
  {
    std::ostringstream os;
    for (int t = 0; t < size(); ++t)
      {
        const auto& v = v_[t];
        os << std::string(2 * v.depth, ' ') << t << ' '
           << (v.winning ? "[win] " : "(lose) ") << colors.format(v.label)
           << " lev=" << v.level << '\n';
      }
    return os.str();
  }

  std::string zielonka_tree::to_dot(const color_table& colors) const
  {
    std::ostringstream os;
    os << "digraph zielonka {\n";
    for (int t = 0; t < size(); ++t)
      {
        const auto& v = v_[t];
        os << "  t" << t << " [shape=" << (v.winning ? "box" : "circle")
           << ", label=\"" << t << "\\n" << colors.format(v.label)
           << "\\nlev " << v.level << "\"];\n";
      }
    for (int t = 0; t < size(); ++t)
      for (int c : v_[t].children)
        os << "  t" << t << " -> t" << c << ";\n";
    os << "}\n";
    return os.str();
  }

  walk_result fair_induced_walk(const zielonka_tree& tree, const lasso_play& play)
  {
    if (play.loop.empty())
      throw invalid_input("lasso loop must be nonempty");

    // last[u]: index of the child most recently entered below u
    std::vector<int> last(tree.size(), 0);
    int leaf = tree.first_leaf();

    auto descend = [&](int from) {
      int u = from;
      while (!tree.is_leaf(u))
        {
          const auto& ch = tree.vertex(u).children;
          int j = (last[u] + 1) % static_cast<int>(ch.size());
          last[u] = j;
          u = ch[j];
        }
      return u;
    };

    // returns the anchor visited at this step
    auto step = [&](color_set colors) {
      int s = tree.anchor(leaf, colors);
      if (s != leaf)
        {
          // the anchor continues after the child holding the current leaf
          last[s] = tree.child_index_toward(s, leaf);
        }
      leaf = descend(s);
      return s;
    };

    for (color_set c : play.prefix)
      step(c);

    using state = std::pair<int, std::vector<int>>;
    std::map<state, int> seen;
    std::vector<std::vector<int>> visited_per_round;
    constexpr int round_limit = 1'000'000;
    for (int round = 0; round < round_limit; ++round)
      {
        auto [it, fresh] = seen.emplace(state{leaf, last}, round);
        if (!fresh)
          {
            // vertices visited in rounds it->second .. round-1 recur forever
            int best = -1;
            for (int r = it->second; r < round; ++r)
              for (int u : visited_per_round[r])
                if (best == -1 || tree.vertex(u).depth < tree.vertex(best).depth)
                  best = u;
            return {best, tree.winning(best)};
          }
        std::vector<int> visited;
        for (color_set c : play.loop)
          {
            visited.push_back(step(c));
            visited.push_back(leaf);
          }
        visited_per_round.push_back(std::move(visited));
      }
    throw budget_exceeded("induced walk did not become periodic");
  }
}
