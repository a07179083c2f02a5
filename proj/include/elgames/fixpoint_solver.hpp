#pragma once

#include "elgames/equation_system.hpp"
#include "elgames/game.hpp"

#include <concepts>
#include <optional>
#include <vector>

namespace elgames
{
  template <class B>
  concept set_backend = requires(B& b, const typename B::set_type& x,
                                 const anc_guard& g) {
    { b.bottom() } -> std::convertible_to<typename B::set_type>;
    { b.top() } -> std::convertible_to<typename B::set_type>;
    { b.unite(x, x) } -> std::convertible_to<typename B::set_type>;
    { b.intersect(x, x) } -> std::convertible_to<typename B::set_type>;
    { b.equal(x, x) } -> std::convertible_to<bool>;
    { b.cpre(x) } -> std::convertible_to<typename B::set_type>;
    { b.guard(g) } -> std::convertible_to<typename B::set_type>;
  };

  /// One evaluation of Solve(s, ...) under fixed ancestor values.
  /// LFP: stages are X^0 = {} .. X^K (the fixpoint), and contexts[i] holds
  /// the child records computed with X_s = stages[i].
  /// GFP: stages holds the fixpoint only, contexts the final iteration.
  /// Leaves keep empty child lists.
  template <class Set>
  struct call_record
  {
    int vertex = 0;
    bool lfp = true;
    std::vector<Set> stages;
    std::vector<std::vector<call_record>> contexts;

    const Set& value() const { return stages.back(); }
  };

  template <class Set>
  struct solve_result
  {
    call_record<Set> root;
    /// Value of each variable along the final iteration of every ancestor.
    std::vector<Set> solution;
    long iterations = 0;

    const Set& winning() const { return root.value(); }
  };

  namespace detail
  {
    template <set_backend B>
    class kleene
    {
    public:
      using set = typename B::set_type;

      kleene(const equation_system& sys, B& backend) : sys_(sys), b_(backend)
      {
        guards_.resize(sys.size());
        for (const auto& e : sys.equations)
          for (const auto& g : e.terms)
            guards_[e.var].push_back(b_.guard(g));
        env_.resize(sys.size(), b_.bottom());
      }

      call_record<set> solve(int s)
      {
        const equation& e = sys_.at(s);
        call_record<set> r;
        r.vertex = s;
        r.lfp = e.eta == polarity::lfp;
        set x = r.lfp ? b_.bottom() : b_.top();
        if (r.lfp)
          r.stages.push_back(x);
        for (;;)
          {
            ++iterations;
            env_[s] = x;
            std::vector<call_record<set>> ctx;
            set next = evaluate(e, ctx);
            bool stable = b_.equal(next, x);
            if (r.lfp)
              {
                r.contexts.push_back(std::move(ctx));
                if (stable)
                  break;
                r.stages.push_back(next);
              }
            else if (stable)
              {
                r.stages.push_back(x);
                r.contexts.push_back(std::move(ctx));
                break;
              }
            x = std::move(next);
          }
        env_[s] = r.value();
        return r;
      }

      long iterations = 0;

    private:
      set evaluate(const equation& e, std::vector<call_record<set>>& ctx)
      {
        if (e.rhs == rhs_kind::leaf_attraction)
          {
            set acc = b_.bottom();
            for (std::size_t i = 0; i < e.terms.size(); ++i)
              acc = b_.unite(acc, b_.intersect(guards_[e.var][i],
                                               b_.cpre(env_[e.terms[i].ancestor])));
            return acc;
          }
        const bool uni = e.rhs == rhs_kind::union_children;
        set acc = uni ? b_.bottom() : b_.top();
        for (int c : e.children)
          {
            ctx.push_back(solve(c));
            const set& v = ctx.back().value();
            acc = uni ? b_.unite(acc, v) : b_.intersect(acc, v);
          }
        return acc;
      }

      const equation_system& sys_;
      B& b_;
      std::vector<std::vector<set>> guards_;
      std::vector<set> env_;
    };

    template <class Set>
    void collect_final(const call_record<Set>& r, std::vector<Set>& out)
    {
      out[r.vertex] = r.value();
      if (!r.contexts.empty())
        for (const auto& c : r.contexts.back())
          collect_final(c, out);
    }
  }

  /// Nested Kleene iteration over the equation system, root first.
  template <set_backend B>
  solve_result<typename B::set_type> solve(const equation_system& sys, B& backend)
  {
    detail::kleene<B> k(sys, backend);
    solve_result<typename B::set_type> res;
    res.root = k.solve(0);
    res.iterations = k.iterations;
    res.solution.assign(sys.size(), backend.bottom());
    detail::collect_final(res.root, res.solution);
    return res;
  }

  /// Visits records in lexicographic order of their context vectors
  /// (LFP ancestors only). `visit(record, contexts)` returns true to stop.
  template <class Set, class Visit>
  bool for_each_record(const call_record<Set>& r, std::vector<int>& ctx, Visit&& visit)
  {
    if (visit(r, static_cast<const std::vector<int>&>(ctx)))
      return true;
    for (std::size_t i = 0; i < r.contexts.size(); ++i)
      {
        if (r.lfp)
          ctx.push_back(static_cast<int>(i));
        for (const auto& c : r.contexts[i])
          if (for_each_record(c, ctx, visit))
            {
              if (r.lfp)
                ctx.pop_back();
              return true;
            }
        if (r.lfp)
          ctx.pop_back();
      }
    return false;
  }

  /// Entry rank of a node in an LFP record: least i >= 1 with the node in
  /// stages[i].
  template <class Set, class Contains>
  std::optional<int> entry_rank(const call_record<Set>& r, Contains&& contains)
  {
    for (std::size_t i = 1; i < r.stages.size(); ++i)
      if (contains(r.stages[i]))
        return static_cast<int>(i);
    return std::nullopt;
  }

  /// Lexicographically least signature of a node at vertex t: context
  /// indices of the LFP strict ancestors, followed by the entry rank if t
  /// is itself LFP. Empty optional if the node is in no record of t.
  template <class Set, class Contains>
  std::optional<std::vector<int>> signature(const solve_result<Set>& res, int t,
                                            Contains&& contains)
  {
    std::optional<std::vector<int>> out;
    std::vector<int> ctx;
    for_each_record(res.root, ctx, [&](const call_record<Set>& r, const std::vector<int>& c) {
      if (r.vertex != t || !contains(r.value()))
        return false;
      std::vector<int> sig = c;
      if (r.lfp)
        sig.push_back(*entry_rank(r, contains));
      out = std::move(sig);
      return true;
    });
    return out;
  }

  /// Sets over the nodes of an explicit arena.
  class explicit_backend
  {
  public:
    using set_type = node_set;

    explicit explicit_backend(const arena& a) : a_(a) {}

    node_set bottom() const { return node_set::empty(a_.size()); }
    node_set top() const { return node_set::full(a_.size()); }
    node_set unite(const node_set& x, const node_set& y) const { return x | y; }
    node_set intersect(const node_set& x, const node_set& y) const { return x & y; }
    bool equal(const node_set& x, const node_set& y) const { return x == y; }
    node_set cpre(const node_set& x) const { return elgames::cpre(a_, x); }
    node_set guard(const anc_guard& g) const;

  private:
    const arena& a_;
  };

  /// Solves an explicit EL game; tree must be built from its objective.
  solve_result<node_set> solve_game(const el_game& game, const zielonka_tree& tree);

  /// sig[v][t] for all nodes and vertices (nullopt where undefined).
  std::vector<std::vector<std::optional<std::vector<int>>>>
  signature_table(const solve_result<node_set>& res, int num_nodes, int tree_size);
}
