#include "elgames/bdd.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace elgames
{
  bdd bdd::operator&(const bdd& o) const
  {
    return mgr_->ite(*this, o, mgr_->ff());
  }

  bdd bdd::operator|(const bdd& o) const
  {
    return mgr_->ite(*this, mgr_->tt(), o);
  }

  bdd bdd::operator^(const bdd& o) const
  {
    return mgr_->ite(*this, !o, o);
  }

  bdd bdd::operator!() const
  {
    return mgr_->ite(*this, mgr_->ff(), mgr_->tt());
  }

  bdd bdd::implies(const bdd& o) const
  {
    return mgr_->ite(*this, o, mgr_->tt());
  }

  bdd bdd::iff(const bdd& o) const
  {
    return mgr_->ite(*this, o, !o);
  }

  bdd_manager::bdd_manager()
  {
    nodes_.push_back({terminal_var, 0, 0});
    nodes_.push_back({terminal_var, 1, 1});
  }

  int bdd_manager::add_var(const std::string& name, var_block block)
  {
    vars_.push_back({name, block, -1});
    return num_vars() - 1;
  }

  int bdd_manager::add_pair(const std::string& name, var_block unprimed_block)
  {
    var_block primed = static_cast<var_block>(static_cast<int>(unprimed_block) + 1);
    int v = add_var(name, unprimed_block);
    int p = add_var(name + "'", primed);
    vars_[v].partner = p;
    vars_[p].partner = v;
    return v;
  }

  std::vector<int> bdd_manager::block_vars(var_block b) const
  {
    std::vector<int> out;
    for (int v = 0; v < num_vars(); ++v)
      if (vars_[v].block == b)
        out.push_back(v);
    return out;
  }

  void bdd_manager::check(const bdd& f) const
  {
    if (f.mgr_ != this)
      throw invalid_input("decision diagram belongs to another manager");
  }

  std::uint32_t bdd_manager::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi)
  {
    if (lo == hi)
      return lo;
    key3 k{var, lo, hi};
    auto it = unique_.find(k);
    if (it != unique_.end())
      return it->second;
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({var, lo, hi});
    unique_.emplace(k, id);
    return id;
  }

  bdd bdd_manager::var(int v)
  {
    if (v < 0 || v >= num_vars())
      throw invalid_input("variable out of range");
    return {this, mk(static_cast<std::uint32_t>(v), 0, 1)};
  }

  bdd bdd_manager::nvar(int v)
  {
    if (v < 0 || v >= num_vars())
      throw invalid_input("variable out of range");
    return {this, mk(static_cast<std::uint32_t>(v), 1, 0)};
  }

  bdd bdd_manager::cube(const std::vector<int>& vars, const std::vector<bool>& values)
  {
    bdd c = tt();
    for (std::size_t i = 0; i < vars.size(); ++i)
      c &= values[i] ? var(vars[i]) : nvar(vars[i]);
    return c;
  }

  std::uint32_t bdd_manager::ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h)
  {
    if (f == 1)
      return g;
    if (f == 0)
      return h;
    if (g == h)
      return g;
    if (g == 1 && h == 0)
      return f;
    key3 k{f, g, h};
    auto it = ite_memo_.find(k);
    if (it != ite_memo_.end())
      return it->second;
    std::uint32_t v = std::min({top(f), top(g), top(h)});
    auto cof = [&](std::uint32_t x, bool hi) {
      if (top(x) != v)
        return x;
      return hi ? nodes_[x].hi : nodes_[x].lo;
    };
    std::uint32_t lo = ite_rec(cof(f, false), cof(g, false), cof(h, false));
    std::uint32_t hi = ite_rec(cof(f, true), cof(g, true), cof(h, true));
    std::uint32_t r = mk(v, lo, hi);
    ite_memo_.emplace(k, r);
    return r;
  }

  bdd bdd_manager::ite(const bdd& f, const bdd& g, const bdd& h)
  {
    check(f);
    check(g);
    check(h);
    return {this, ite_rec(f.id_, g.id_, h.id_)};
  }

  std::vector<char> bdd_manager::var_mask(const std::vector<int>& vars) const
  {
    std::vector<char> q(num_vars(), 0);
    for (int v : vars)
      {
        if (v < 0 || v >= num_vars())
          throw invalid_input("variable out of range");
        q[v] = 1;
      }
    return q;
  }

  std::uint32_t bdd_manager::exists_rec(std::uint32_t f, const std::vector<char>& q,
                                        memo1& memo)
  {
    if (f <= 1)
      return f;
    auto it = memo.find(f);
    if (it != memo.end())
      return it->second;
    node n = nodes_[f];
    std::uint32_t lo = exists_rec(n.lo, q, memo);
    std::uint32_t r;
    if (q[n.var])
      r = lo == 1 ? 1 : ite_rec(lo, 1, exists_rec(n.hi, q, memo));
    else
      r = mk(n.var, lo, exists_rec(n.hi, q, memo));
    memo.emplace(f, r);
    return r;
  }

  bdd bdd_manager::exists(const std::vector<int>& vars, const bdd& f)
  {
    check(f);
    memo1 memo;
    return {this, exists_rec(f.id_, var_mask(vars), memo)};
  }

  bdd bdd_manager::forall(const std::vector<int>& vars, const bdd& f)
  {
    return !exists(vars, !f);
  }

  std::uint32_t bdd_manager::and_exists_rec(std::uint32_t f, std::uint32_t g,
                                            const std::vector<char>& q, memo3& memo)
  {
    if (f == 0 || g == 0)
      return 0;
    if (f == 1 && g == 1)
      return 1;
    if (f > g)
      std::swap(f, g);
    key3 k{f, g, 0};
    auto it = memo.find(k);
    if (it != memo.end())
      return it->second;
    std::uint32_t v = std::min(top(f), top(g));
    auto cof = [&](std::uint32_t x, bool hi) {
      if (top(x) != v)
        return x;
      return hi ? nodes_[x].hi : nodes_[x].lo;
    };
    std::uint32_t lo = and_exists_rec(cof(f, false), cof(g, false), q, memo);
    std::uint32_t r;
    if (q[v])
      r = lo == 1 ? 1 : ite_rec(lo, 1, and_exists_rec(cof(f, true), cof(g, true), q, memo));
    else
      r = mk(v, lo, and_exists_rec(cof(f, true), cof(g, true), q, memo));
    memo.emplace(k, r);
    return r;
  }

  bdd bdd_manager::and_exists(const bdd& f, const bdd& g, const std::vector<int>& vars)
  {
    check(f);
    check(g);
    memo3 memo;
    return {this, and_exists_rec(f.id_, g.id_, var_mask(vars), memo)};
  }

  std::uint32_t bdd_manager::rename_rec(std::uint32_t f, memo1& memo)
  {
    if (f <= 1)
      return f;
    auto it = memo.find(f);
    if (it != memo.end())
      return it->second;
    node n = nodes_[f];
    int p = vars_[n.var].partner;
    if (p < 0)
      throw invalid_input("variable '" + vars_[n.var].name + "' has no partner");
    std::uint32_t lo = rename_rec(n.lo, memo);
    std::uint32_t hi = rename_rec(n.hi, memo);
    std::uint32_t r = ite_rec(mk(static_cast<std::uint32_t>(p), 0, 1), hi, lo);
    memo.emplace(f, r);
    return r;
  }

  bdd bdd_manager::rename(const bdd& f)
  {
    check(f);
    memo1 memo;
    return {this, rename_rec(f.id_, memo)};
  }

  std::uint32_t bdd_manager::restrict_rec(std::uint32_t f, std::uint32_t v, bool value,
                                          memo1& memo)
  {
    if (f <= 1 || top(f) > v)
      return f;
    if (top(f) == v)
      return value ? nodes_[f].hi : nodes_[f].lo;
    auto it = memo.find(f);
    if (it != memo.end())
      return it->second;
    node n = nodes_[f];
    std::uint32_t r =
      mk(n.var, restrict_rec(n.lo, v, value, memo), restrict_rec(n.hi, v, value, memo));
    memo.emplace(f, r);
    return r;
  }

  bdd bdd_manager::restrict(const bdd& f, int v, bool value)
  {
    check(f);
    memo1 memo;
    return {this, restrict_rec(f.id_, static_cast<std::uint32_t>(v), value, memo)};
  }

  bool bdd_manager::eval(const bdd& f, const std::vector<bool>& assignment) const
  {
    check(f);
    std::uint32_t x = f.id_;
    while (x > 1)
      x = assignment[nodes_[x].var] ? nodes_[x].hi : nodes_[x].lo;
    return x == 1;
  }

  namespace
  {
    std::vector<int> complement_vars(int n, const std::vector<int>& vars)
    {
      std::vector<char> in(n, 0);
      for (int v : vars)
        in[v] = 1;
      std::vector<int> out;
      for (int v = 0; v < n; ++v)
        if (!in[v])
          out.push_back(v);
      return out;
    }
  }

  std::vector<bool> bdd_manager::pick_witness(const bdd& f, const std::vector<int>& vars)
  {
    bdd e = exists(complement_vars(num_vars(), vars), f);
    if (e.is_false())
      throw invalid_input("no witness for an unsatisfiable assertion");
    std::vector<bool> value(num_vars(), false);
    std::uint32_t x = e.id_;
    while (x > 1)
      {
        const node& n = nodes_[x];
        if (n.lo != 0)
          x = n.lo;
        else
          {
            value[n.var] = true;
            x = n.hi;
          }
      }
    std::vector<bool> out;
    for (int v : vars)
      out.push_back(value[v]);
    return out;
  }

  std::uint64_t bdd_manager::count_sat(const bdd& f, const std::vector<int>& vars)
  {
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() > 62)
      throw budget_exceeded("count_sat supports at most 62 variables");
    bdd e = exists(complement_vars(num_vars(), sorted), f);
    const int m = static_cast<int>(sorted.size());
    std::vector<int> pos(num_vars(), -1);
    for (int i = 0; i < m; ++i)
      pos[sorted[i]] = i;
    auto pos_of = [&](std::uint32_t x) { return x <= 1 ? m : pos[nodes_[x].var]; };
    std::unordered_map<std::uint32_t, std::uint64_t> memo;
    std::function<std::uint64_t(std::uint32_t)> count = [&](std::uint32_t x) -> std::uint64_t {
      if (x <= 1)
        return x;
      auto it = memo.find(x);
      if (it != memo.end())
        return it->second;
      const node& n = nodes_[x];
      int p = pos_of(x);
      std::uint64_t c = (count(n.lo) << (pos_of(n.lo) - p - 1))
                        + (count(n.hi) << (pos_of(n.hi) - p - 1));
      memo.emplace(x, c);
      return c;
    };
    return count(e.id_) << pos_of(e.id_);
  }

  std::vector<int> bdd_manager::support(const bdd& f) const
  {
    check(f);
    std::set<int> vars;
    std::set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{f.id_};
    while (!stack.empty())
      {
        std::uint32_t x = stack.back();
        stack.pop_back();
        if (x <= 1 || !seen.insert(x).second)
          continue;
        vars.insert(static_cast<int>(nodes_[x].var));
        stack.push_back(nodes_[x].lo);
        stack.push_back(nodes_[x].hi);
      }
    return {vars.begin(), vars.end()};
  }

  int bdd_manager::top_var(const bdd& f) const
  {
    check(f);
    return f.id_ <= 1 ? -1 : static_cast<int>(nodes_[f.id_].var);
  }

  std::string bdd_manager::to_dot(const bdd& f) const
  {
    check(f);
    std::ostringstream os;
    os << "digraph bdd {\n  f0 [shape=box, label=\"0\"];\n  f1 [shape=box, label=\"1\"];\n";
    std::set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{f.id_};
    while (!stack.empty())
      {
        std::uint32_t x = stack.back();
        stack.pop_back();
        if (x <= 1 || !seen.insert(x).second)
          continue;
        const node& n = nodes_[x];
        os << "  f" << x << " [label=\"" << vars_[n.var].name << "\"];\n"
           << "  f" << x << " -> f" << n.lo << " [style=dashed];\n"
           << "  f" << x << " -> f" << n.hi << ";\n";
        stack.push_back(n.lo);
        stack.push_back(n.hi);
      }
    os << "}\n";
    return os.str();
  }
}
