#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace elgames
{
  /// Immutable LTL formula over named atomic propositions.
  class ltl
  {
  public:
    enum class kind
    {
      true_,
      false_,
      atom,
      not_,
      and_,
      or_,
      implies,
      next,
      globally,
      eventually,
      until,
      release
    };

    ltl();  // true

    static ltl tt();
    static ltl ff();
    static ltl atom(const std::string& name);
    static ltl negate(ltl f);
    static ltl conj(ltl a, ltl b);
    static ltl disj(ltl a, ltl b);
    static ltl implies(ltl a, ltl b);
    static ltl next(ltl f);
    static ltl globally(ltl f);
    static ltl eventually(ltl f);
    static ltl until(ltl a, ltl b);
    static ltl release(ltl a, ltl b);

    kind type() const;
    const std::string& name() const;
    const ltl& lhs() const;
    const ltl& rhs() const;
    const ltl& operand() const { return lhs(); }

    /// Number of AST nodes.
    int size() const;
    /// No temporal operator anywhere below.
    bool is_propositional() const;

    bool operator==(const ltl& o) const;

  private:
    struct node;
    ltl(std::shared_ptr<const node> n) : n_(std::move(n)) {}
    std::shared_ptr<const node> n_;
  };

  /// Precedence from weakest: `->` (right), `|`, `&`, `U`/`R` (right),
  /// then the prefix operators `!`, `X`, `G`, `F`. Operator letters are
  /// keywords only as whole words, so `X X b` or `X(X b)`, not `XXb`.
  ltl parse_ltl(std::string_view text);

  /// Text that parse_ltl reads back to an equal formula.
  std::string to_string(const ltl& f);

  /// Atom names in order of first occurrence.
  std::vector<std::string> atoms_of(const ltl& f);

  /// Negations pushed to atoms. Implications become !a | (a & b) when the
  /// antecedent is propositional and !a | b otherwise.
  ltl to_nnf(const ltl& f);

  /// NNF using only X, G and R; throws not_safety naming the first U or F.
  ltl check_safety(const ltl& f);
  bool is_safety(const ltl& f);

  /// Ultimately periodic word prefix·loop^ω. Letters are bit masks over an
  /// atom list (bit i set = atom i holds).
  struct lasso_word
  {
    std::vector<std::uint32_t> prefix;
    std::vector<std::uint32_t> loop;
  };

  /// Exact LTL semantics on a lasso. Throws invalid_input on an empty
  /// loop or an atom missing from `atoms`.
  bool holds_on_lasso(const ltl& f, const std::vector<std::string>& atoms,
                      const lasso_word& w);

  /// Random formula of the safety fragment over atoms a, b, c, ... built
  /// from literals, &, |, X, G, R and implications with a propositional
  /// antecedent.
  ltl random_safety_formula(std::mt19937_64& rng, int num_atoms, int depth);

  lasso_word random_lasso_word(std::mt19937_64& rng, int num_atoms, int max_prefix,
                               int max_loop);
}
