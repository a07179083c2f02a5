#pragma once

#include "elgames/el_formula.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace elgames
{
  enum class player
  {
    exist,
    forall
  };

  inline player opponent(player p)
  {
    return p == player::exist ? player::forall : player::exist;
  }

  /// Dense bit set over the nodes of one arena.
  class node_set
  {
  public:
    node_set() = default;
    explicit node_set(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static node_set empty(int n) { return node_set(n); }
    static node_set full(int n);
    static node_set of(int n, const std::vector<int>& members);

    int width() const { return n_; }
    bool test(int v) const { return (w_[v >> 6] >> (v & 63)) & 1u; }
    void set(int v) { w_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) { w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    int count() const;
    bool none() const;
    bool subset_of(const node_set& o) const;
    std::vector<int> members() const;

    node_set operator|(const node_set& o) const;
    node_set operator&(const node_set& o) const;
    node_set operator~() const;
    node_set& operator|=(const node_set& o);
    node_set& operator&=(const node_set& o);
    bool operator==(const node_set& o) const = default;

  private:
    void trim();
    int n_ = 0;
    std::vector<std::uint64_t> w_;
  };

  /// Game graph with ownership and node coloring.
  class arena
  {
  public:
    int add_node(player owner, color_set colors = {});
    /// Duplicate edges are ignored.
    void add_edge(int src, int dst);

    int size() const { return static_cast<int>(owner_.size()); }
    player owner(int v) const { return owner_[v]; }
    color_set colors(int v) const { return colors_[v]; }
    void set_owner(int v, player p) { owner_[v] = p; }
    void set_colors(int v, color_set c) { colors_[v] = c; }
    const std::vector<int>& succ(int v) const { return succ_[v]; }
    const std::vector<int>& pred(int v) const { return pred_[v]; }
    std::size_t edge_count() const;

    bool is_total() const;
    /// Throws invalid_input on a node without successors or colors
    /// outside `allowed`.
    void validate(color_set allowed) const;

  private:
    std::vector<player> owner_;
    std::vector<color_set> colors_;
    std::vector<std::vector<int>> succ_, pred_;
  };

  struct el_game
  {
    arena graph;
    color_table colors;
    el_formula objective;
  };

  /// Max-even parity game; `names` may be empty.
  struct parity_game
  {
    arena graph;
    std::vector<int> priority;
    std::vector<std::string> names;

    int max_priority() const;
  };

  /// Nodes from which `p` forces the next position into `x`.
  node_set cpre(const arena& a, const node_set& x, player p = player::exist);

  /// Parses the `elgame 1` text format. Errors carry 1-based line numbers.
  el_game load_game(std::string_view text);
  el_game load_game_file(const std::string& path);
  std::string save_game(const el_game& g);

  /// Same arena with swapped ownership and negated objective.
  el_game dual_game(const el_game& g);

  struct random_game_params
  {
    int nodes = 6;
    int colors = 3;
    /// Probability of each additional edge beyond the guaranteed one.
    double edge_density = 0.3;
    /// Probability that a node carries a given color.
    double color_density = 0.4;
    int formula_depth = 3;
    /// Draw objectives from random_objective instead of random_formula.
    bool mixed_objectives = true;
  };

  el_formula random_formula(std::mt19937_64& rng, int num_colors, int depth);

  /// Mix of random formulas, random Muller families and random instances
  /// of the Streett, Rabin, parity and generalized Buchi families.
  el_formula random_objective(std::mt19937_64& rng, int num_colors, int depth);

  el_game random_game(std::uint64_t seed, const random_game_params& params);
}
