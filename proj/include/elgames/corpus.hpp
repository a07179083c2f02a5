#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace elgames
{
  struct corpus_options
  {
    std::uint64_t seed = 1;
    int count = 100;
    int max_nodes = 8;
    int max_colors = 4;
  };

  struct corpus_check
  {
    std::string name;
    int pass = 0;
    int fail = 0;
    /// Instance indices of the first few failures.
    std::vector<int> failures;
  };

  struct corpus_report
  {
    int count = 0;
    /// Instances on which every check passed.
    int agree = 0;
    std::vector<corpus_check> checks;
    int max_tree_size = 0;
    int max_memory = 0;
    /// Games where both players win somewhere.
    int split = 0;

    bool ok() const { return agree == count; }
    std::string table() const;
  };

  /// Runs the regression suite on `count` random games derived from the
  /// seed: fixpoint solver vs parity reduction, dual complement, strategy
  /// verification with the memory bound, and direct Buchi / parity solvers
  /// on the same arena.
  corpus_report run_corpus(const corpus_options& options);

  /// ceil(e * k!), the bound on Zielonka tree size for k colors.
  long tree_size_bound(int k);
}
