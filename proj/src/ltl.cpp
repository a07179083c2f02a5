#include "elgames/ltl.hpp"

#include "elgames/errors.hpp"

#include <algorithm>
#include <cctype>

namespace elgames
{
  struct ltl::node
  {
    kind k;
    std::string name;
    ltl a, b;
  };

  namespace
  {
    using k = ltl::kind;

    bool is_binary(k t)
    {
      return t == k::and_ || t == k::or_ || t == k::implies || t == k::until
             || t == k::release;
    }

    bool is_unary(k t)
    {
      return t == k::not_ || t == k::next || t == k::globally || t == k::eventually;
    }
  }

  ltl::ltl() : ltl(tt()) {}

  ltl ltl::tt()
  {
    static const auto n = std::make_shared<const node>(node{kind::true_, {}, {nullptr}, {nullptr}});
    return ltl(n);
  }

  ltl ltl::ff()
  {
    static const auto n = std::make_shared<const node>(node{kind::false_, {}, {nullptr}, {nullptr}});
    return ltl(n);
  }

  ltl ltl::atom(const std::string& name)
  {
    return ltl(std::make_shared<const node>(node{kind::atom, name, {nullptr}, {nullptr}}));
  }

  ltl ltl::negate(ltl f)
  {
    return ltl(std::make_shared<const node>(node{kind::not_, {}, std::move(f), {nullptr}}));
  }

  ltl ltl::next(ltl f)
  {
    return ltl(std::make_shared<const node>(node{kind::next, {}, std::move(f), {nullptr}}));
  }

  ltl ltl::globally(ltl f)
  {
    return ltl(std::make_shared<const node>(node{kind::globally, {}, std::move(f), {nullptr}}));
  }

  ltl ltl::eventually(ltl f)
  {
    return ltl(std::make_shared<const node>(node{kind::eventually, {}, std::move(f), {nullptr}}));
  }

  ltl ltl::conj(ltl a, ltl b)
  {
    return ltl(std::make_shared<const node>(node{kind::and_, {}, std::move(a), std::move(b)}));
  }

  ltl ltl::disj(ltl a, ltl b)
  {
    return ltl(std::make_shared<const node>(node{kind::or_, {}, std::move(a), std::move(b)}));
  }

  ltl ltl::implies(ltl a, ltl b)
  {
    return ltl(std::make_shared<const node>(node{kind::implies, {}, std::move(a), std::move(b)}));
  }

  ltl ltl::until(ltl a, ltl b)
  {
    return ltl(std::make_shared<const node>(node{kind::until, {}, std::move(a), std::move(b)}));
  }

  ltl ltl::release(ltl a, ltl b)
  {
    return ltl(std::make_shared<const node>(node{kind::release, {}, std::move(a), std::move(b)}));
  }

  ltl::kind ltl::type() const { return n_->k; }
  const std::string& ltl::name() const { return n_->name; }
  const ltl& ltl::lhs() const { return n_->a; }
  const ltl& ltl::rhs() const { return n_->b; }

  int ltl::size() const
  {
    int s = 1;
    if (is_unary(type()) || is_binary(type()))
      s += lhs().size();
    if (is_binary(type()))
      s += rhs().size();
    return s;
  }

  bool ltl::is_propositional() const
  {
    switch (type())
      {
      case k::true_:
      case k::false_:
      case k::atom:
        return true;
      case k::not_:
        return lhs().is_propositional();
      case k::and_:
      case k::or_:
      case k::implies:
        return lhs().is_propositional() && rhs().is_propositional();
      default:
        return false;
      }
  }

  bool ltl::operator==(const ltl& o) const
  {
    if (n_ == o.n_)
      return true;
    if (type() != o.type())
      return false;
    if (type() == k::atom)
      return name() == o.name();
    if (is_unary(type()))
      return lhs() == o.lhs();
    if (is_binary(type()))
      return lhs() == o.lhs() && rhs() == o.rhs();
    return true;
  }

  namespace
  {
    class ltl_parser
    {
    public:
      explicit ltl_parser(std::string_view text) : s_(text) {}

      ltl run()
      {
        ltl f = implication();
        skip_ws();
        if (pos_ != s_.size())
          throw parse_error("unexpected trailing input", pos_);
        return f;
      }

    private:
      void skip_ws()
      {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      }

      bool eat(std::string_view tok)
      {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok)
          {
            pos_ += tok.size();
            return true;
          }
        return false;
      }

      std::string peek_word()
      {
        skip_ws();
        std::size_t end = pos_;
        if (end < s_.size()
            && (std::isalpha(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
          {
            ++end;
            while (end < s_.size()
                   && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_'))
              ++end;
          }
        return std::string(s_.substr(pos_, end - pos_));
      }

      bool eat_word(std::string_view w)
      {
        if (peek_word() != w)
          return false;
        pos_ += w.size();
        return true;
      }

      ltl implication()
      {
        ltl lhs = disjunction();
        if (eat("->"))
          return ltl::implies(lhs, implication());
        return lhs;
      }

      ltl disjunction()
      {
        ltl acc = conjunction();
        while (eat("|"))
          acc = ltl::disj(acc, conjunction());
        return acc;
      }

      ltl conjunction()
      {
        ltl acc = binary_temporal();
        while (eat("&"))
          acc = ltl::conj(acc, binary_temporal());
        return acc;
      }

      ltl binary_temporal()
      {
        ltl lhs = unary();
        if (eat_word("U"))
          return ltl::until(lhs, binary_temporal());
        if (eat_word("R"))
          return ltl::release(lhs, binary_temporal());
        return lhs;
      }

      ltl unary()
      {
        if (eat("!"))
          return ltl::negate(unary());
        if (eat_word("X"))
          return ltl::next(unary());
        if (eat_word("G"))
          return ltl::globally(unary());
        if (eat_word("F"))
          return ltl::eventually(unary());
        return primary();
      }

      ltl primary()
      {
        skip_ws();
        std::size_t at = pos_;
        if (eat("("))
          {
            ltl f = implication();
            if (!eat(")"))
              throw parse_error("expected ')'", pos_);
            return f;
          }
        std::string word = peek_word();
        if (word.empty())
          throw parse_error("expected formula", at);
        if (word == "U" || word == "R")
          throw parse_error("unexpected '" + word + "'", at);
        pos_ += word.size();
        if (word == "true")
          return ltl::tt();
        if (word == "false")
          return ltl::ff();
        return ltl::atom(word);
      }

      std::string_view s_;
      std::size_t pos_ = 0;
    };

    void print(const ltl& f, std::string& out)
    {
      switch (f.type())
        {
        case k::true_:
          out += "true";
          return;
        case k::false_:
          out += "false";
          return;
        case k::atom:
          out += f.name();
          return;
        case k::not_:
          out += '!';
          print(f.operand(), out);
          return;
        case k::next:
        case k::globally:
        case k::eventually:
          out += f.type() == k::next ? "X " : f.type() == k::globally ? "G " : "F ";
          print(f.operand(), out);
          return;
        default:
          break;
        }
      const char* op = f.type() == k::and_       ? " & "
                       : f.type() == k::or_      ? " | "
                       : f.type() == k::implies  ? " -> "
                       : f.type() == k::until    ? " U "
                                                 : " R ";
      out += '(';
      print(f.lhs(), out);
      out += op;
      print(f.rhs(), out);
      out += ')';
    }

    void collect_atoms(const ltl& f, std::vector<std::string>& out)
    {
      if (f.type() == k::atom)
        {
          if (std::find(out.begin(), out.end(), f.name()) == out.end())
            out.push_back(f.name());
          return;
        }
      if (is_unary(f.type()) || is_binary(f.type()))
        collect_atoms(f.lhs(), out);
      if (is_binary(f.type()))
        collect_atoms(f.rhs(), out);
    }

    ltl nnf(const ltl& f, bool neg)
    {
      switch (f.type())
        {
        case k::true_:
          return neg ? ltl::ff() : ltl::tt();
        case k::false_:
          return neg ? ltl::tt() : ltl::ff();
        case k::atom:
          return neg ? ltl::negate(f) : f;
        case k::not_:
          return nnf(f.operand(), !neg);
        case k::and_:
          return neg ? ltl::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : ltl::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
        case k::or_:
          return neg ? ltl::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : ltl::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
        case k::implies:
          if (neg)
            return ltl::conj(nnf(f.lhs(), false), nnf(f.rhs(), true));
          if (f.lhs().is_propositional())
            return ltl::disj(nnf(f.lhs(), true),
                             ltl::conj(nnf(f.lhs(), false), nnf(f.rhs(), false)));
          return ltl::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
        case k::next:
          return ltl::next(nnf(f.operand(), neg));
        case k::globally:
          return neg ? ltl::eventually(nnf(f.operand(), true))
                     : ltl::globally(nnf(f.operand(), false));
        case k::eventually:
          return neg ? ltl::globally(nnf(f.operand(), true))
                     : ltl::eventually(nnf(f.operand(), false));
        case k::until:
          return neg ? ltl::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : ltl::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
        case k::release:
          return neg ? ltl::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : ltl::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
        }
      return f;
    }

    // first offending operator in an NNF formula, or empty
    std::string non_safety_op(const ltl& f)
    {
      if (f.type() == k::until)
        return "U";
      if (f.type() == k::eventually)
        return "F";
      std::string r;
      if (is_unary(f.type()) || is_binary(f.type()))
        r = non_safety_op(f.lhs());
      if (r.empty() && is_binary(f.type()))
        r = non_safety_op(f.rhs());
      return r;
    }

    using sat_vector = std::vector<char>;

    sat_vector evaluate(const ltl& f, const std::vector<std::string>& atoms,
                        const std::vector<std::uint32_t>& letters, int loop_start)
    {
      int n = static_cast<int>(letters.size());
      auto nxt = [&](int i) { return i + 1 < n ? i + 1 : loop_start; };
      sat_vector r(n, 0);
      switch (f.type())
        {
        case k::true_:
          std::fill(r.begin(), r.end(), 1);
          return r;
        case k::false_:
          return r;
        case k::atom:
          {
            auto it = std::find(atoms.begin(), atoms.end(), f.name());
            if (it == atoms.end())
              throw invalid_input("atom '" + f.name() + "' missing from the letter alphabet");
            int bit = static_cast<int>(it - atoms.begin());
            for (int i = 0; i < n; ++i)
              r[i] = (letters[i] >> bit) & 1u;
            return r;
          }
        default:
          break;
        }
      sat_vector a = evaluate(f.lhs(), atoms, letters, loop_start);
      sat_vector b;
      if (is_binary(f.type()))
        b = evaluate(f.rhs(), atoms, letters, loop_start);
      switch (f.type())
        {
        case k::not_:
          for (int i = 0; i < n; ++i)
            r[i] = !a[i];
          return r;
        case k::and_:
          for (int i = 0; i < n; ++i)
            r[i] = a[i] && b[i];
          return r;
        case k::or_:
          for (int i = 0; i < n; ++i)
            r[i] = a[i] || b[i];
          return r;
        case k::implies:
          for (int i = 0; i < n; ++i)
            r[i] = !a[i] || b[i];
          return r;
        case k::next:
          for (int i = 0; i < n; ++i)
            r[i] = a[nxt(i)];
          return r;
        default:
          break;
        }
      // Fixpoints over the position graph; n + 1 rounds reach them.
      bool greatest = f.type() == k::globally || f.type() == k::release;
      std::fill(r.begin(), r.end(), greatest);
      for (int round = 0; round <= n; ++round)
        {
          sat_vector s(n);
          for (int i = 0; i < n; ++i)
            {
              bool later = r[nxt(i)];
              switch (f.type())
                {
                case k::globally:
                  s[i] = a[i] && later;
                  break;
                case k::eventually:
                  s[i] = a[i] || later;
                  break;
                case k::until:
                  s[i] = b[i] || (a[i] && later);
                  break;
                default:  // release
                  s[i] = b[i] && (a[i] || later);
                  break;
                }
            }
          if (s == r)
            break;
          r = std::move(s);
        }
      return r;
    }

    ltl random_literal(std::mt19937_64& rng, int num_atoms)
    {
      std::uniform_int_distribution<int> pick(0, num_atoms - 1);
      ltl a = ltl::atom(std::string(1, static_cast<char>('a' + pick(rng))));
      return std::bernoulli_distribution(0.35)(rng) ? ltl::negate(a) : a;
    }

    ltl random_propositional(std::mt19937_64& rng, int num_atoms, int depth)
    {
      if (depth <= 0 || std::bernoulli_distribution(0.5)(rng))
        return random_literal(rng, num_atoms);
      ltl l = random_propositional(rng, num_atoms, depth - 1);
      ltl r = random_propositional(rng, num_atoms, depth - 1);
      return std::bernoulli_distribution(0.5)(rng) ? ltl::conj(l, r) : ltl::disj(l, r);
    }
  }

  ltl parse_ltl(std::string_view text)
  {
    return ltl_parser(text).run();
  }

  std::string to_string(const ltl& f)
  {
    std::string out;
    print(f, out);
    return out;
  }

  std::vector<std::string> atoms_of(const ltl& f)
  {
    std::vector<std::string> out;
    collect_atoms(f, out);
    return out;
  }

  ltl to_nnf(const ltl& f)
  {
    return nnf(f, false);
  }

  ltl check_safety(const ltl& f)
  {
    ltl g = to_nnf(f);
    std::string op = non_safety_op(g);
    if (!op.empty())
      throw not_safety(op);
    return g;
  }

  bool is_safety(const ltl& f)
  {
    return non_safety_op(to_nnf(f)).empty();
  }

  bool holds_on_lasso(const ltl& f, const std::vector<std::string>& atoms,
                      const lasso_word& w)
  {
    if (w.loop.empty())
      throw invalid_input("lasso word with empty loop");
    std::vector<std::uint32_t> letters = w.prefix;
    letters.insert(letters.end(), w.loop.begin(), w.loop.end());
    return evaluate(f, atoms, letters, static_cast<int>(w.prefix.size()))[0];
  }

  ltl random_safety_formula(std::mt19937_64& rng, int num_atoms, int depth)
  {
    if (depth <= 0)
      return random_literal(rng, num_atoms);
    std::uniform_int_distribution<int> op(0, 9);
    switch (op(rng))
      {
      case 0:
        return random_literal(rng, num_atoms);
      case 1:
      case 2:
        return ltl::conj(random_safety_formula(rng, num_atoms, depth - 1),
                         random_safety_formula(rng, num_atoms, depth - 1));
      case 3:
        return ltl::disj(random_safety_formula(rng, num_atoms, depth - 1),
                         random_safety_formula(rng, num_atoms, depth - 1));
      case 4:
      case 5:
        return ltl::next(random_safety_formula(rng, num_atoms, depth - 1));
      case 6:
        return ltl::globally(random_safety_formula(rng, num_atoms, depth - 1));
      case 7:
        return ltl::release(random_safety_formula(rng, num_atoms, depth - 1),
                            random_safety_formula(rng, num_atoms, depth - 1));
      default:
        return ltl::implies(random_propositional(rng, num_atoms, 1),
                            random_safety_formula(rng, num_atoms, depth - 1));
      }
  }

  lasso_word random_lasso_word(std::mt19937_64& rng, int num_atoms, int max_prefix,
                               int max_loop)
  {
    std::uniform_int_distribution<std::uint32_t> letter(0, (1u << num_atoms) - 1);
    lasso_word w;
    int p = std::uniform_int_distribution<int>(0, max_prefix)(rng);
    int l = std::uniform_int_distribution<int>(1, max_loop)(rng);
    for (int i = 0; i < p; ++i)
      w.prefix.push_back(letter(rng));
    for (int i = 0; i < l; ++i)
      w.loop.push_back(letter(rng));
    return w;
  }
}
