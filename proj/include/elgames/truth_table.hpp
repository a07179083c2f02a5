#pragma once

#include <cstdint>
#include <vector>

namespace elgames
{
  /// Boolean function over n <= 14 variables stored as its full truth
  /// table. Bit a is the value under the assignment whose i-th bit is
  /// variable i. Twin of bdd_manager for differential testing.
  class truth_table
  {
  public:
    static constexpr int max_vars = 14;

    truth_table() = default;
    static truth_table constant(int n, bool value);
    static truth_table var(int n, int v);

    int num_vars() const { return n_; }
    bool at(std::uint32_t assignment) const
    {
      return (bits_[assignment >> 6] >> (assignment & 63)) & 1u;
    }

    void assign(std::uint32_t assignment, bool value);

    truth_table operator&(const truth_table& o) const;
    truth_table operator|(const truth_table& o) const;
    truth_table operator^(const truth_table& o) const;
    truth_table operator!() const;
    static truth_table ite(const truth_table& f, const truth_table& g, const truth_table& h);

    truth_table exists(const std::vector<int>& vars) const;
    truth_table forall(const std::vector<int>& vars) const;
    /// partner[v] is the variable v is swapped with (-1: unchanged).
    truth_table rename(const std::vector<int>& partner) const;
    std::uint64_t count_sat(const std::vector<int>& vars) const;

    bool is_false() const;
    bool operator==(const truth_table& o) const = default;

  private:
    int n_ = 0;
    std::vector<std::uint64_t> bits_;
  };
}
