// Command-line front end: one JSON (or text) report per invocation.
// Exit codes: 0 all checks pass, 1 a check failed, 2 parameter error, 3 precision error.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "tamegal/error.hpp"
#include "tamegal/report.hpp"

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string format = "json";
  bool timing = false;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_flag("--timing", common.timing, "Include per-check timings (output no longer byte-stable)");
}

int emit(const tamegal::report::Report& rep, const Common& common) {
  if (common.format == "text")
    std::cout << rep.to_text(common.timing);
  else
    std::cout << rep.to_json(common.timing).dump(2) << '\n';
  return rep.pass() ? 0 : 1;
}

int error_report(const std::string& command, const std::string& kind, const std::string& message, int code) {
  nlohmann::json j = {{"schema", 1}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
  std::cout << j.dump(2) << '\n';
  std::cerr << kind << ": " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace rp = tamegal::report;
  CLI::App app{"Galois-module structure of tame local extensions: finite verifications"};
  app.require_subcommand(1);
  Common common;

  std::uint32_t p = 2;
  unsigned a = 1, f = 0, f_K = 1, N = 0;
  std::uint64_t e = 1, m = 1, g = 0, count = 20, trials = 1000, oracle_limit = 100000;
  std::int64_t r = 0, s = 0;
  std::string eisenstein;

  auto* bseq = app.add_subcommand("bseq", "Integers prime to p: b(1), ..., b(count)");
  bseq->add_option("--p", p)->required();
  bseq->add_option("--count", count)->capture_default_str();

  auto* census = app.add_subcommand("census", "Fibre census of (i, j) -> b(i) p^j mod e");
  census->add_option("--p", p)->required();
  census->add_option("--e", e)->required();
  census->add_option("--m", m, "n = m lcm(p-1, e)")->capture_default_str();
  census->add_option("--g", g, "Multiple of the order of p mod e (0: the order itself)")->capture_default_str();

  auto* orbits = app.add_subcommand("orbits", "Orbits of multiplication by p on Z/eZ");
  orbits->add_option("--p", p)->required();
  orbits->add_option("--e", e)->required();

  auto* iso = app.add_subcommand("module-iso", "Decide l(r) = l(s) by the hom-space oracle");
  iso->add_option("--p", p)->required();
  iso->add_option("--a", a)->capture_default_str();
  iso->add_option("--f", f, "0: least f with q^f = 1 mod e")->capture_default_str();
  iso->add_option("--e", e)->required();
  iso->add_option("--r", r)->required();
  iso->add_option("--s", s)->required();

  auto* lemma = app.add_subcommand("verify-lemma", "Sum of l(b(i)), i <= n, against k[G]^d");
  lemma->add_option("--p", p)->required();
  lemma->add_option("--a", a)->capture_default_str();
  lemma->add_option("--f", f, "0: least f with q^f = 1 mod e")->capture_default_str();
  lemma->add_option("--e", e)->required();
  lemma->add_option("--m", m)->capture_default_str();

  auto* eq = app.add_subcommand("eqchar-structure", "Finite-level additive and unit modules of l((pi))");
  eq->add_option("--p", p)->required();
  eq->add_option("--a", a)->capture_default_str();
  eq->add_option("--f", f, "0: least f with q^f = 1 mod e")->capture_default_str();
  eq->add_option("--e", e)->required();
  eq->add_option("--m", m)->capture_default_str();

  auto* mixed = app.add_subcommand("mixed-structure", "U^1 / (U^1)^p of a tame extension of a p-adic field");
  mixed->add_option("--p", p)->required();
  mixed->add_option("--fK", f_K, "Residue degree of K over Q_p")->capture_default_str();
  mixed->add_option("--eisenstein", eisenstein, "E(z) over W(k): +c, -c or JSON coefficient lists (default +p)");
  mixed->add_option("--e", e)->required();
  mixed->add_option("--f", f)->required();
  mixed->add_option("--N", N, "Working precision p^N (0: the floor)")->capture_default_str();
  mixed->add_option("--oracle-limit", oracle_limit, "Largest U^1/U^{cp+1} to enumerate")->capture_default_str();

  auto* suite = app.add_subcommand("suite", "Run the full acceptance grid");
  suite->add_option("--trials", trials, "Property trials per configuration")->capture_default_str();

  for (auto* cmd : {bseq, census, orbits, iso, lemma, eq, mixed, suite}) add_common(cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*bseq) return emit(rp::bseq(p, count), common);
    if (*census) return emit(rp::census(p, e, m, g), common);
    if (*orbits) return emit(rp::orbits(p, e), common);
    if (*iso) return emit(rp::module_iso(p, a, f, e, r, s, common.seed), common);
    if (*lemma) return emit(rp::verify_lemma(p, a, f, e, m, common.seed), common);
    if (*eq) return emit(rp::eqchar_structure(p, a, f, e, m, common.seed), common);
    if (*mixed) return emit(rp::mixed_structure(p, f_K, eisenstein, e, f, N, oracle_limit, common.seed), common);
    if (*suite) return emit(rp::suite(common.seed, trials), common);
  } catch (const tamegal::PrecisionError& err) {
    return error_report(name, "precision_error", err.what(), 3);
  } catch (const tamegal::ParameterError& err) {
    return error_report(name, "parameter_error", err.what(), 2);
  }
  return 2;
}
