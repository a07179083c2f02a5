#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace elgames
{
  enum class var_block
  {
    state,
    state_next,
    input,
    input_next,
    output,
    output_next
  };

  class bdd_manager;

  /// Handle to a node of a bdd_manager. Equal handles of one manager
  /// denote equal Boolean functions.
  class bdd
  {
  public:
    bdd() = default;

    bool is_false() const { return id_ == 0; }
    bool is_true() const { return id_ == 1; }
    std::uint32_t id() const { return id_; }
    const bdd_manager* manager() const { return mgr_; }

    bdd operator&(const bdd& o) const;
    bdd operator|(const bdd& o) const;
    bdd operator^(const bdd& o) const;
    bdd operator!() const;
    bdd implies(const bdd& o) const;
    bdd iff(const bdd& o) const;
    bdd& operator&=(const bdd& o) { return *this = *this & o; }
    bdd& operator|=(const bdd& o) { return *this = *this | o; }

    bool operator==(const bdd& o) const { return mgr_ == o.mgr_ && id_ == o.id_; }
    bool operator!=(const bdd& o) const { return !(*this == o); }

  private:
    friend class bdd_manager;
    bdd(bdd_manager* m, std::uint32_t id) : mgr_(m), id_(id) {}
    bdd_manager* mgr_ = nullptr;
    std::uint32_t id_ = 0;
  };

  /// Reduced ordered decision diagrams with hash-consing and an ITE cache.
  /// The variable order is the creation order. No complement edges, no
  /// reordering, no garbage collection.
  class bdd_manager
  {
  public:
    bdd_manager();
    bdd_manager(const bdd_manager&) = delete;
    bdd_manager& operator=(const bdd_manager&) = delete;

    /// Adds one variable at the bottom of the order.
    int add_var(const std::string& name, var_block block);
    /// Adds an unprimed/primed partner pair (adjacent in the order);
    /// returns the unprimed id, the primed one is id + 1.
    int add_pair(const std::string& name, var_block unprimed_block);

    int num_vars() const { return static_cast<int>(vars_.size()); }
    const std::string& var_name(int v) const { return vars_[v].name; }
    var_block block_of(int v) const { return vars_[v].block; }
    int partner(int v) const { return vars_[v].partner; }
    std::vector<int> block_vars(var_block b) const;

    bdd tt() { return {this, 1}; }
    bdd ff() { return {this, 0}; }
    bdd var(int v);
    bdd nvar(int v);
    /// Conjunction of literals: values[i] is the polarity of vars[i].
    bdd cube(const std::vector<int>& vars, const std::vector<bool>& values);

    bdd ite(const bdd& f, const bdd& g, const bdd& h);
    bdd exists(const std::vector<int>& vars, const bdd& f);
    bdd forall(const std::vector<int>& vars, const bdd& f);
    /// exists(vars, f & g) without building f & g.
    bdd and_exists(const bdd& f, const bdd& g, const std::vector<int>& vars);
    /// Swaps every variable with its partner; throws invalid_input on a
    /// variable without partner.
    bdd rename(const bdd& f);
    bdd restrict(const bdd& f, int v, bool value);

    /// Full assignment indexed by variable id.
    bool eval(const bdd& f, const std::vector<bool>& assignment) const;
    /// Satisfying values for `vars` in exists(others, f), preferring 0.
    /// Throws invalid_input if f is false.
    std::vector<bool> pick_witness(const bdd& f, const std::vector<int>& vars);
    /// Number of assignments to `vars` satisfying exists(others, f).
    std::uint64_t count_sat(const bdd& f, const std::vector<int>& vars);
    /// Variables f depends on, ascending.
    std::vector<int> support(const bdd& f) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::string to_dot(const bdd& f) const;

    // node inspection
    int top_var(const bdd& f) const;
    bdd low(const bdd& f) { return {this, nodes_[f.id_].lo}; }
    bdd high(const bdd& f) { return {this, nodes_[f.id_].hi}; }

  private:
    friend class bdd;

    struct node
    {
      std::uint32_t var, lo, hi;
    };
    struct var_info
    {
      std::string name;
      var_block block;
      int partner;
    };
    struct key3
    {
      std::uint32_t a, b, c;
      bool operator==(const key3&) const = default;
    };
    struct key3_hash
    {
      std::size_t operator()(const key3& k) const noexcept
      {
        std::uint64_t h = k.a;
        h = h * 0x9e3779b97f4a7c15ull + k.b;
        h = h * 0x9e3779b97f4a7c15ull + k.c;
        return static_cast<std::size_t>(h ^ (h >> 29));
      }
    };
    using memo3 = std::unordered_map<key3, std::uint32_t, key3_hash>;
    using memo1 = std::unordered_map<std::uint32_t, std::uint32_t>;

    static constexpr std::uint32_t terminal_var = 0xffffffffu;

    std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);
    std::uint32_t ite_rec(std::uint32_t f, std::uint32_t g, std::uint32_t h);
    std::uint32_t exists_rec(std::uint32_t f, const std::vector<char>& q, memo1& memo);
    std::uint32_t and_exists_rec(std::uint32_t f, std::uint32_t g,
                                 const std::vector<char>& q, memo3& memo);
    std::uint32_t rename_rec(std::uint32_t f, memo1& memo);
    std::uint32_t restrict_rec(std::uint32_t f, std::uint32_t v, bool value, memo1& memo);
    std::uint32_t top(std::uint32_t f) const { return nodes_[f].var; }
    void check(const bdd& f) const;
    std::vector<char> var_mask(const std::vector<int>& vars) const;

    std::vector<node> nodes_;
    std::vector<var_info> vars_;
    memo3 unique_;
    memo3 ite_memo_;
  };
}
