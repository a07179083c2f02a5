#include "elgames/truth_table.hpp"

#include "elgames/errors.hpp"

#include <algorithm>

namespace elgames
{
  truth_table truth_table::constant(int n, bool value)
  {
    if (n < 0 || n > max_vars)
      throw budget_exceeded("truth tables support at most 14 variables");
    truth_table t;
    t.n_ = n;
    std::uint32_t size = 1u << n;
    t.bits_.assign((size + 63) / 64, 0);
    if (value)
      for (std::uint32_t a = 0; a < size; ++a)
        t.assign(a, true);
    return t;
  }

  truth_table truth_table::var(int n, int v)
  {
    truth_table t = constant(n, false);
    for (std::uint32_t a = 0; a < (1u << n); ++a)
      if ((a >> v) & 1u)
        t.assign(a, true);
    return t;
  }

  void truth_table::assign(std::uint32_t a, bool value)
  {
    if (value)
      bits_[a >> 6] |= std::uint64_t{1} << (a & 63);
    else
      bits_[a >> 6] &= ~(std::uint64_t{1} << (a & 63));
  }

  truth_table truth_table::operator&(const truth_table& o) const
  {
    truth_table r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      r.bits_[i] &= o.bits_[i];
    return r;
  }

  truth_table truth_table::operator|(const truth_table& o) const
  {
    truth_table r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      r.bits_[i] |= o.bits_[i];
    return r;
  }

  truth_table truth_table::operator^(const truth_table& o) const
  {
    truth_table r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      r.bits_[i] ^= o.bits_[i];
    return r;
  }

  truth_table truth_table::operator!() const
  {
    return *this ^ constant(n_, true);
  }

  truth_table truth_table::ite(const truth_table& f, const truth_table& g,
                               const truth_table& h)
  {
    return (f & g) | ((!f) & h);
  }

  truth_table truth_table::exists(const std::vector<int>& vars) const
  {
    truth_table r = *this;
    for (int v : vars)
      {
        truth_table next = constant(n_, false);
        for (std::uint32_t a = 0; a < (1u << n_); ++a)
          next.assign(a, r.at(a) || r.at(a ^ (1u << v)));
        r = next;
      }
    return r;
  }

  truth_table truth_table::forall(const std::vector<int>& vars) const
  {
    return !(!*this).exists(vars);
  }

  truth_table truth_table::rename(const std::vector<int>& partner) const
  {
    truth_table r = constant(n_, false);
    for (std::uint32_t a = 0; a < (1u << n_); ++a)
      {
        // value of the renamed function at a is f at the swapped assignment
        std::uint32_t b = 0;
        for (int v = 0; v < n_; ++v)
          {
            int src = partner[v] >= 0 ? partner[v] : v;
            if ((a >> src) & 1u)
              b |= 1u << v;
          }
        r.assign(a, at(b));
      }
    return r;
  }

  std::uint64_t truth_table::count_sat(const std::vector<int>& vars) const
  {
    std::vector<int> others;
    for (int v = 0; v < n_; ++v)
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        others.push_back(v);
    truth_table e = exists(others);
    std::uint64_t c = 0;
    std::uint32_t mask = 0;
    for (int v : vars)
      mask |= 1u << v;
    for (std::uint32_t a = 0; a < (1u << n_); ++a)
      if ((a & ~mask) == 0 && e.at(a))
        ++c;
    return c;
  }

  bool truth_table::is_false() const
  {
    return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
  }
}
