#pragma once

// Reports behind the command-line front end: one function per subcommand,
// the acceptance grid as a list of criteria, and the JSON/text renderings.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tamegal/gmod.hpp"

namespace tamegal::report {

struct TimedCheck {
  CheckOutcome outcome;
  double seconds = 0;
};

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::vector<TimedCheck> checks;
  std::uint64_t seed = 0;
  nlohmann::json precision = nullptr;

  bool pass() const;
  void add(CheckOutcome outcome, double seconds = 0);
  void add_all(const std::vector<CheckOutcome>& outcomes, const std::string& prefix = "");
  /// Timing fields only appear when requested, so default output is byte-stable.
  nlohmann::json to_json(bool timing = false) const;
  std::string to_text(bool timing = false) const;
};

/// Least f >= 1 with (p^a)^f = 1 mod e; ParameterError when p | e.
unsigned minimal_f(std::uint32_t p, unsigned a, std::uint64_t e);

Report bseq(std::uint32_t p, std::uint64_t count);
Report census(std::uint32_t p, std::uint64_t e, std::uint64_t m, std::uint64_t g_override);
Report orbits(std::uint32_t p, std::uint64_t e);
/// f = 0 selects minimal_f.
Report module_iso(std::uint32_t p, unsigned a, unsigned f, std::uint64_t e, std::int64_t r, std::int64_t s,
                  std::uint64_t seed);
Report verify_lemma(std::uint32_t p, unsigned a, unsigned f, std::uint64_t e, std::uint64_t m, std::uint64_t seed);
Report eqchar_structure(std::uint32_t p, unsigned a, unsigned f, std::uint64_t e, std::uint64_t m,
                        std::uint64_t seed);
/// An empty eisenstein string means "+p", i.e. K = Q_p.
Report mixed_structure(std::uint32_t p, unsigned f_K, const std::string& eisenstein, std::uint64_t e, unsigned f,
                       unsigned N, std::uint64_t oracle_limit, std::uint64_t seed);

/// A configuration (p, a, f, e) of the module grid.
struct GridConfig {
  std::uint32_t p;
  unsigned a;
  unsigned f;
  std::uint64_t e;
};
/// p in {2, 3}, a in {1, 2}, p not dividing e, q^f = 1 mod e, e f a <= max_efa; sorted by (p, a, e, f).
std::vector<GridConfig> module_grid(std::uint64_t max_efa = 36);

struct Criterion {
  int id;
  std::string name;
  std::optional<double> budget_seconds;
  std::function<std::vector<CheckOutcome>(std::uint64_t seed)> run;
};

/// The seven acceptance criteria; each returns one outcome per configuration.
const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion and aggregates to one check per criterion.
Report suite(std::uint64_t seed, std::uint64_t trials = 1000);

/// Seeded property trials per configuration: reductions are well defined and equivariant.
std::vector<CheckOutcome> well_definedness(std::uint64_t seed, std::uint64_t trials);

}  // namespace tamegal::report
