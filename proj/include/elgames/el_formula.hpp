#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace elgames
{
  /// Maximum number of colors in one color table (width of ColorSet).
  inline constexpr int max_colors = 30;

  /// A set of colors as a bit mask over a color table.
  class color_set
  {
  public:
    constexpr color_set() = default;
    constexpr explicit color_set(std::uint32_t bits) : bits_(bits) {}

    static constexpr color_set singleton(int c) { return color_set(1u << c); }
    static constexpr color_set full(int k)
    {
      return color_set(k >= 32 ? ~0u : ((1u << k) - 1u));
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(int c) const { return (bits_ >> c) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcount(bits_); }

    constexpr bool subset_of(color_set o) const
    {
      return (bits_ & ~o.bits_) == 0;
    }

    constexpr color_set with(int c) const
    {
      return color_set(bits_ | (1u << c));
    }
    constexpr color_set without(int c) const
    {
      return color_set(bits_ & ~(1u << c));
    }

    constexpr color_set operator|(color_set o) const
    {
      return color_set(bits_ | o.bits_);
    }
    constexpr color_set operator&(color_set o) const
    {
      return color_set(bits_ & o.bits_);
    }
    constexpr color_set minus(color_set o) const
    {
      return color_set(bits_ & ~o.bits_);
    }
    color_set& operator|=(color_set o)
    {
      bits_ |= o.bits_;
      return *this;
    }

    constexpr bool operator==(const color_set&) const = default;

    /// Member ids in increasing order.
    std::vector<int> members() const;

  private:
    std::uint32_t bits_ = 0;
  };

  /// Dense interning of color names to ids 0..size()-1.
  class color_table
  {
  public:
    color_table() = default;
    explicit color_table(const std::vector<std::string>& names);

    /// Adds a color; throws invalid_input on duplicates or
    /// budget_exceeded beyond max_colors.
    int add(const std::string& name);
    std::optional<int> find(std::string_view name) const;
    /// Like find() but throws unknown_color.
    int at(std::string_view name) const;

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const { return names_[id]; }
    const std::vector<std::string>& names() const { return names_; }
    color_set all() const { return color_set::full(size()); }

    /// "{a,b}" style rendering.
    std::string format(color_set s) const;

    bool operator==(const color_table& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
  };

  /// Immutable Emerson-Lei formula over Inf atoms. Fin c is Not(Inf c).
  class el_formula
  {
  public:
    enum class kind
    {
      true_,
      false_,
      inf,
      not_,
      and_,
      or_
    };

    el_formula();  // true

    static el_formula tt();
    static el_formula ff();
    static el_formula inf(int color);
    static el_formula fin(int color);
    static el_formula negate(el_formula f);
    static el_formula conj(el_formula a, el_formula b);
    static el_formula disj(el_formula a, el_formula b);
    static el_formula implies(el_formula a, el_formula b);
    /// n-ary helpers; empty conjunction is true, empty disjunction false.
    static el_formula conj(const std::vector<el_formula>& fs);
    static el_formula disj(const std::vector<el_formula>& fs);

    kind type() const;
    int color() const;
    const el_formula& lhs() const;
    const el_formula& rhs() const;
    const el_formula& operand() const { return lhs(); }

    bool eval(color_set d) const;

    /// Colors mentioned anywhere in the formula.
    color_set colors() const;
    int depth() const;

    bool operator==(const el_formula& o) const;

  private:
    struct node;
    el_formula(std::shared_ptr<const node> n) : n_(std::move(n)) {}
    std::shared_ptr<const node> n_;
  };

  /// Parses the surface grammar (Inf, Fin, !, &, |, ->, parentheses,
  /// true, false). Throws parse_error or unknown_color.
  el_formula parse_el(std::string_view text, const color_table& colors);

  /// Fully parenthesized text that parse_el reads back to an equal formula.
  std::string to_string(const el_formula& f, const color_table& colors);

  /// Standard objective families, built over color ids.
  namespace objectives
  {
    el_formula buchi(int f);
    el_formula generalized_buchi(const std::vector<int>& fs);
    /// Max-even parity over priorities p_1..p_m given as colors in
    /// increasing priority order (colors[i] is priority i+1).
    el_formula parity(const std::vector<int>& colors);
    el_formula rabin(const std::vector<std::pair<int, int>>& pairs);
    el_formula streett(const std::vector<std::pair<int, int>>& pairs);
    /// Muller condition: inf-set must be exactly one of `family`.
    el_formula muller(const std::vector<color_set>& family, int num_colors);
    /// "number of infinitely visited colors is even".
    el_formula even_cardinality(int num_colors);
  }
}
