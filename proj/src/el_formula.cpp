#include "elgames/el_formula.hpp"

#include "elgames/errors.hpp"

#include <cctype>
#include <set>

namespace elgames
{
  std::vector<int> color_set::members() const
  {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b; b &= b - 1)
      out.push_back(__builtin_ctz(b));
    return out;
  }

  color_table::color_table(const std::vector<std::string>& names)
  {
    for (auto& n : names)
      add(n);
  }

  int color_table::add(const std::string& name)
  {
    if (index_.count(name))
      throw invalid_input("duplicate color '" + name + "'");
    if (size() >= max_colors)
      throw budget_exceeded("more than " + std::to_string(max_colors)
                            + " colors");
    int id = size();
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  std::optional<int> color_table::find(std::string_view name) const
  {
    auto it = index_.find(std::string(name));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  int color_table::at(std::string_view name) const
  {
    if (auto id = find(name))
      return *id;
    throw unknown_color(std::string(name));
  }

  std::string color_table::format(color_set s) const
  {
    std::string out = "{";
    bool first = true;
    for (int c : s.members())
      {
        if (!first)
          out += ',';
        first = false;
        out += c < size() ? names_[c] : "#" + std::to_string(c);
      }
    return out + "}";
  }

  struct el_formula::node
  {
    kind k;
    int color = -1;
    el_formula a, b;
  };

  el_formula::el_formula() : el_formula(tt()) {}

  el_formula el_formula::tt()
  {
    static const auto n =
      std::make_shared<const node>(node{kind::true_, -1, {nullptr}, {nullptr}});
    return el_formula(n);
  }

  el_formula el_formula::ff()
  {
    static const auto n = std::make_shared<const node>(
      node{kind::false_, -1, {nullptr}, {nullptr}});
    return el_formula(n);
  }

  el_formula el_formula::inf(int color)
  {
    if (color < 0 || color >= max_colors)
      throw invalid_input("color id out of range");
    return el_formula(std::make_shared<const node>(
      node{kind::inf, color, {nullptr}, {nullptr}}));
  }

  el_formula el_formula::fin(int color)
  {
    return negate(inf(color));
  }

  el_formula el_formula::negate(el_formula f)
  {
    return el_formula(std::make_shared<const node>(
      node{kind::not_, -1, std::move(f), {nullptr}}));
  }

  el_formula el_formula::conj(el_formula a, el_formula b)
  {
    return el_formula(std::make_shared<const node>(
      node{kind::and_, -1, std::move(a), std::move(b)}));
  }

  el_formula el_formula::disj(el_formula a, el_formula b)
  {
    return el_formula(std::make_shared<const node>(
      node{kind::or_, -1, std::move(a), std::move(b)}));
  }

  el_formula el_formula::implies(el_formula a, el_formula b)
  {
    return disj(negate(std::move(a)), std::move(b));
  }

  el_formula el_formula::conj(const std::vector<el_formula>& fs)
  {
    if (fs.empty())
      return tt();
    el_formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
      acc = conj(acc, fs[i]);
    return acc;
  }

  el_formula el_formula::disj(const std::vector<el_formula>& fs)
  {
    if (fs.empty())
      return ff();
    el_formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
      acc = disj(acc, fs[i]);
    return acc;
  }

  el_formula::kind el_formula::type() const { return n_->k; }
  int el_formula::color() const { return n_->color; }
  const el_formula& el_formula::lhs() const { return n_->a; }
  const el_formula& el_formula::rhs() const { return n_->b; }

  bool el_formula::eval(color_set d) const
  {
    switch (n_->k)
      {
      case kind::true_:
        return true;
      case kind::false_:
        return false;
      case kind::inf:
        return d.contains(n_->color);
      case kind::not_:
        return !n_->a.eval(d);
      case kind::and_:
        return n_->a.eval(d) && n_->b.eval(d);
      case kind::or_:
        return n_->a.eval(d) || n_->b.eval(d);
      }
    return false;
  }

  color_set el_formula::colors() const
  {
    switch (n_->k)
      {
      case kind::inf:
        return color_set::singleton(n_->color);
      case kind::not_:
        return n_->a.colors();
      case kind::and_:
      case kind::or_:
        return n_->a.colors() | n_->b.colors();
      default:
        return {};
      }
  }

  int el_formula::depth() const
  {
    switch (n_->k)
      {
      case kind::not_:
        return 1 + n_->a.depth();
      case kind::and_:
      case kind::or_:
        return 1 + std::max(n_->a.depth(), n_->b.depth());
      default:
        return 0;
      }
  }

  bool el_formula::operator==(const el_formula& o) const
  {
    if (n_ == o.n_)
      return true;
    if (n_->k != o.n_->k || n_->color != o.n_->color)
      return false;
    switch (n_->k)
      {
      case kind::not_:
        return n_->a == o.n_->a;
      case kind::and_:
      case kind::or_:
        return n_->a == o.n_->a && n_->b == o.n_->b;
      default:
        return true;
      }
  }

  namespace
  {
    class el_parser
    {
    public:
      el_parser(std::string_view text, const color_table& colors)
        : s_(text), colors_(colors)
      {
      }

      el_formula run()
      {
        el_formula f = implication();
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

      std::string ident()
      {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size()
            && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          {
            ++pos_;
            while (pos_ < s_.size()
                   && (std::isalnum(static_cast<unsigned char>(s_[pos_]))
                       || s_[pos_] == '_'))
              ++pos_;
          }
        return std::string(s_.substr(start, pos_ - start));
      }

      el_formula implication()
      {
        el_formula lhs = disjunction();
        if (eat("->"))
          return el_formula::implies(lhs, implication());
        return lhs;
      }

      el_formula disjunction()
      {
        el_formula acc = conjunction();
        while (eat("|"))
          acc = el_formula::disj(acc, conjunction());
        return acc;
      }

      el_formula conjunction()
      {
        el_formula acc = unary();
        while (eat("&"))
          acc = el_formula::conj(acc, unary());
        return acc;
      }

      el_formula unary()
      {
        if (eat("!"))
          return el_formula::negate(unary());
        return atom();
      }

      el_formula atom()
      {
        skip_ws();
        std::size_t at = pos_;
        if (eat("("))
          {
            el_formula f = implication();
            if (!eat(")"))
              throw parse_error("expected ')'", pos_);
            return f;
          }
        std::string word = ident();
        if (word == "true")
          return el_formula::tt();
        if (word == "false")
          return el_formula::ff();
        if (word == "Inf" || word == "Fin")
          {
            std::size_t name_at = (skip_ws(), pos_);
            std::string name = ident();
            if (name.empty())
              throw parse_error("expected color name", name_at);
            int c = colors_.at(name);
            return word == "Inf" ? el_formula::inf(c) : el_formula::fin(c);
          }
        throw parse_error(word.empty() ? "expected formula"
                                       : "unexpected '" + word + "'",
                          at);
      }

      std::string_view s_;
      const color_table& colors_;
      std::size_t pos_ = 0;
    };

    void print(const el_formula& f, const color_table& colors, std::string& out)
    {
      using k = el_formula::kind;
      switch (f.type())
        {
        case k::true_:
          out += "true";
          return;
        case k::false_:
          out += "false";
          return;
        case k::inf:
          out += "Inf " + colors.name(f.color());
          return;
        case k::not_:
          if (f.operand().type() == k::inf)
            {
              out += "Fin " + colors.name(f.operand().color());
              return;
            }
          out += "!";
          print(f.operand(), colors, out);
          return;
        case k::and_:
        case k::or_:
          out += "(";
          print(f.lhs(), colors, out);
          out += f.type() == k::and_ ? " & " : " | ";
          print(f.rhs(), colors, out);
          out += ")";
          return;
        }
    }

    void require_distinct(const std::vector<int>& cs)
    {
      std::set<int> seen;
      for (int c : cs)
        if (!seen.insert(c).second)
          throw invalid_input("duplicate color in objective parameters");
    }
  }

  el_formula parse_el(std::string_view text, const color_table& colors)
  {
    return el_parser(text, colors).run();
  }

  std::string to_string(const el_formula& f, const color_table& colors)
  {
    std::string out;
    print(f, colors, out);
    return out;
  }

  namespace objectives
  {
    el_formula buchi(int f)
    {
      return el_formula::inf(f);
    }

    el_formula generalized_buchi(const std::vector<int>& fs)
    {
      if (fs.empty())
        throw invalid_input("generalized Buchi needs at least one color");
      require_distinct(fs);
      std::vector<el_formula> parts;
      for (int f : fs)
        parts.push_back(el_formula::inf(f));
      return el_formula::conj(parts);
    }

    el_formula parity(const std::vector<int>& colors)
    {
      if (colors.empty())
        throw invalid_input("parity needs at least one priority");
      require_distinct(colors);
      // priority of colors[i] is i+1
      std::vector<el_formula> disjuncts;
      for (std::size_t i = 1; i < colors.size(); i += 2)
        {
          std::vector<el_formula> parts{el_formula::inf(colors[i])};
          for (std::size_t j = i + 1; j < colors.size(); ++j)
            parts.push_back(el_formula::fin(colors[j]));
          disjuncts.push_back(el_formula::conj(parts));
        }
      return el_formula::disj(disjuncts);
    }

    el_formula rabin(const std::vector<std::pair<int, int>>& pairs)
    {
      if (pairs.empty())
        throw invalid_input("empty Rabin pair list");
      std::vector<int> all;
      std::vector<el_formula> parts;
      for (auto [e, f] : pairs)
        {
          all.push_back(e);
          all.push_back(f);
          parts.push_back(el_formula::conj(el_formula::inf(e), el_formula::fin(f)));
        }
      require_distinct(all);
      return el_formula::disj(parts);
    }

    el_formula streett(const std::vector<std::pair<int, int>>& pairs)
    {
      if (pairs.empty())
        throw invalid_input("empty Streett pair list");
      std::vector<int> all;
      std::vector<el_formula> parts;
      for (auto [r, g] : pairs)
        {
          all.push_back(r);
          all.push_back(g);
          parts.push_back(el_formula::implies(el_formula::inf(r), el_formula::inf(g)));
        }
      require_distinct(all);
      return el_formula::conj(parts);
    }

    el_formula muller(const std::vector<color_set>& family, int num_colors)
    {
      color_set universe = color_set::full(num_colors);
      std::set<std::uint32_t> seen;
      std::vector<el_formula> disjuncts;
      for (color_set d : family)
        {
          if (!d.subset_of(universe))
            throw invalid_input("Muller set mentions unknown color");
          if (!seen.insert(d.bits()).second)
            throw invalid_input("duplicate set in Muller family");
          std::vector<el_formula> parts;
          for (int c = 0; c < num_colors; ++c)
            parts.push_back(d.contains(c) ? el_formula::inf(c) : el_formula::fin(c));
          disjuncts.push_back(el_formula::conj(parts));
        }
      return el_formula::disj(disjuncts);
    }

    el_formula even_cardinality(int num_colors)
    {
      std::vector<color_set> family;
      for (std::uint32_t m = 0; m < (1u << num_colors); ++m)
        if (__builtin_popcount(m) % 2 == 0)
          family.emplace_back(m);
      return muller(family, num_colors);
    }
  }
}
