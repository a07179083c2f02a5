#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elgames
{
  /// Malformed textual input (formulas, game files, strategy files).
  /// `position` is a character offset for formula parsers and a 1-based
  /// line number for line-oriented file formats.
  class parse_error : public std::runtime_error
  {
  public:
    parse_error(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at " + std::to_string(position) + ")"),
        position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
  };

  class unknown_color : public std::runtime_error
  {
  public:
    explicit unknown_color(const std::string& name)
      : std::runtime_error("unknown color '" + name + "'"), name_(name)
    {
    }

    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
  };

  /// Input is well-formed but violates a structural requirement
  /// (non-total arena, bad parameters, mismatched tree).
  class invalid_input : public std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  /// A size limit was hit (color budget, variable budget).
  class budget_exceeded : public std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };

  /// An LTL formula leaves the safety fragment after negation normal form.
  class not_safety : public std::runtime_error
  {
  public:
    explicit not_safety(const std::string& op)
      : std::runtime_error("not a safety formula: operator " + op), op_(op)
    {
    }

    const std::string& op() const noexcept { return op_; }

  private:
    std::string op_;
  };

  /// An LTL formula is not a Boolean combination of G F psi and F G psi
  /// with propositional psi.
  class not_el_fragment : public std::runtime_error
  {
    using std::runtime_error::runtime_error;
  };
}
