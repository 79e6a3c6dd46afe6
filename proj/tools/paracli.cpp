// paracli: verification and analysis front end for the order-p
// parabose/parafermi oscillator pair.
//
// Exit codes: 0 pass, 1 verification failure, 2 no valid convention,
// 64 usage error, 65 truncation guard.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "parasusy/algebra.hpp"
#include "parasusy/basis.hpp"
#include "parasusy/conventions.hpp"
#include "parasusy/errors.hpp"
#include "parasusy/report.hpp"
#include "parasusy/rewrite.hpp"
#include "parasusy/susy.hpp"

namespace {

using namespace parasusy;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitNoConvention = 2;
constexpr int kExitUsage = 64;
constexpr int kExitTruncation = 65;

struct Options {
  RunConfig config;
  std::string format = "text";
  std::string convention;
  std::string word;
};

void add_common(CLI::App& cmd, Options& opts) {
  cmd.add_option("--p", opts.config.p, "parastatistics order")->capture_default_str();
  cmd.add_option("--cutoff", opts.config.cutoff, "per-component boson occupation cap")
      ->capture_default_str();
  cmd.add_option("--levels", opts.config.level_cap,
                 "highest reported level m+n (default min(5, cutoff - 1))");
  cmd.add_option("--tolerance", opts.config.tolerance, "pass threshold for residuals")
      ->capture_default_str();
  cmd.add_option("--probes", opts.config.probes, "random probe vectors per identity")
      ->capture_default_str();
  cmd.add_option("--seed", opts.config.seed, "probe seed")->capture_default_str();
  cmd.add_option("--format", opts.format, "text|json|csv")->capture_default_str();
  cmd.add_option("--convention", opts.convention,
                 "pinned Klein dressing <boson>/<fermion>, e.g. combined/boson");
}

GreenConvention resolve_convention(const RunConfig& config) {
  if (config.convention) return *config.convention;
  return discover_convention(ParaOrder(config.p));
}

ParaRep make_rep(const RunConfig& config, const GreenConvention& convention) {
  return build_rep(ParaOrder(config.p), Cutoff(config.cutoff, config.level_cap), convention);
}

Json envelope(const RunConfig& config, const ParaRep& rep, const Tolerances& tol) {
  Json j;
  j["config"] = to_json(config);
  j["rep"] = rep_metadata(rep, tol);
  return j;
}

Tolerances tolerances_for(const RunConfig& config) {
  Tolerances tol;
  tol.identity = config.tolerance;
  tol.normalization = config.tolerance;
  return tol;
}

int run_conventions(const RunConfig& config) {
  const auto result = convention_search(ParaOrder(config.p), config.cutoff, config.tolerance,
                                        config.probes, config.seed);
  const auto valid = result.valid();
  switch (config.format) {
    case OutputFormat::kJson: {
      Json j;
      j["config"] = to_json(config);
      j["search"] = to_json(result);
      j["pinned"] = valid.empty() ? Json(nullptr) : Json(valid.front().convention.to_string());
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: std::cout << render_conventions_csv(result); break;
    case OutputFormat::kText:
      if (valid.empty()) {
        std::cout << "no valid convention among " << result.candidates.size()
                  << " Klein dressings (p = " << result.p << ", cutoff " << result.cutoff
                  << ")\n";
      } else if (result.p == 1) {
        // no spectator components: every dressing is the same operator set
        std::cout << "pinned " << valid.front().convention.to_string() << "  worst residual "
                  << format_residual(valid.front().worst_residual) << "  (p = 1, cutoff "
                  << result.cutoff << ", all " << valid.size() << " dressings coincide)\n";
      } else {
        std::cout << render_conventions_text(result);
      }
      break;
  }
  return valid.empty() ? kExitNoConvention : kExitPass;
}

int run_verify(const RunConfig& config) {
  const auto convention = resolve_convention(config);
  const ParaRep rep = make_rep(config, convention);
  SuiteOptions options;
  options.probes = config.probes;
  options.seed = config.seed;
  options.tolerance = config.tolerance;
  const auto checks = verify_suite(rep, options);
  switch (config.format) {
    case OutputFormat::kJson: {
      Json j = envelope(config, rep, tolerances_for(config));
      Json arr = Json::array();
      for (const auto& c : checks) arr.push_back(to_json(c));
      j["checks"] = std::move(arr);
      j["passed"] = all_passed(checks);
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: std::cout << render_checks_csv(checks, config, convention); break;
    case OutputFormat::kText:
      std::cout << "p = " << rep.p() << ", cutoff " << rep.cutoff().per_component()
                << ", convention " << convention.to_string() << ", dim " << rep.dim() << "\n";
      std::cout << render_checks_text(checks);
      break;
  }
  return all_passed(checks) ? kExitPass : kExitFail;
}

int run_basis(const RunConfig& config) {
  const auto convention = resolve_convention(config);
  const ParaRep rep = make_rep(config, convention);
  const auto fock = cyclic_basis(rep, config.level_cap);
  const auto rows = sector_table(rep, fock, config.level_cap);
  const auto completeness = basis_completeness(rep, fock, config.level_cap);

  bool ok = completeness.count == completeness.cyclic_count &&
            completeness.gram_residual <= config.tolerance &&
            completeness.span_residual <= config.tolerance;
  for (const auto& row : rows) {
    const auto& r = row.report;
    ok = ok && r.dim == row.expected_dim && r.gram_residual <= config.tolerance &&
         r.grading_residual <= config.tolerance &&
         std::abs(r.closed_form_overlap - 1.0) <= config.tolerance;
    if (row.transitions) ok = ok && row.transitions->worst() <= config.tolerance;
  }

  switch (config.format) {
    case OutputFormat::kJson: {
      Json j = envelope(config, rep, tolerances_for(config));
      Json arr = Json::array();
      for (const auto& row : rows) arr.push_back(to_json(row));
      j["sectors"] = std::move(arr);
      j["completeness"] = {{"closed_form_states", completeness.count},
                           {"cyclic_states", completeness.cyclic_count},
                           {"gram_residual", completeness.gram_residual},
                           {"span_residual", completeness.span_residual}};
      j["passed"] = ok;
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: std::cout << render_sectors_csv(rows, config, convention); break;
    case OutputFormat::kText:
      std::cout << render_sectors_text(rows);
      std::cout << completeness.count << " closed-form states, " << completeness.cyclic_count
                << " cyclic states; gram residual " << format_residual(completeness.gram_residual)
                << ", span residual " << format_residual(completeness.span_residual) << '\n';
      break;
  }
  return ok ? kExitPass : kExitFail;
}

int run_spectrum(const RunConfig& config) {
  const auto convention = resolve_convention(config);
  const ParaRep rep = make_rep(config, convention);
  const auto table = spectrum(rep, config.level_cap);
  const auto witten = witten_check(table);
  bool ok = witten.cancels && witten.half_split;
  for (const auto& row : table.levels)
    ok = ok && row.degeneracy == expected_degeneracy(row.energy, rep.order());

  switch (config.format) {
    case OutputFormat::kJson: {
      Json j = envelope(config, rep, tolerances_for(config));
      j["spectrum"] = to_json(table);
      j["witten"] = to_json(witten);
      j["passed"] = ok;
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: std::cout << render_spectrum_csv(table, config, convention); break;
    case OutputFormat::kText: std::cout << render_spectrum_text(table, witten); break;
  }
  return ok ? kExitPass : kExitFail;
}

int run_reduce(const RunConfig& config, const std::string& text) {
  const CreationWord word = parse_word(text);
  const auto form = semantic_vanishing(reduce(word), ParaOrder(config.p));
  std::optional<double> residual;
  std::optional<ParaRep> rep;
  if (config.check) {
    rep.emplace(make_rep(config, resolve_convention(config)));
    residual = validate_reduction(*rep, word, form.form);
  }
  const bool ok = !residual || *residual <= config.tolerance;
  switch (config.format) {
    case OutputFormat::kJson: {
      Json j;
      j["config"] = to_json(config);
      if (rep) j["rep"] = rep_metadata(*rep, tolerances_for(config));
      j["word"] = format_word(word);
      Json body = to_json(form);
      for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
      if (residual) j["residual"] = *residual;
      std::cout << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: {
      std::string flags;
      if (form.vanishes) flags += "vanishes";
      if (form.beta_dependent) flags += flags.empty() ? "beta_dependent" : " beta_dependent";
      std::cout << csv_row({"word", "alpha", "beta", "m", "n", "flags", "residual"})
                << csv_row({format_word(word), form.form.alpha.str(), form.form.beta.str(),
                            std::to_string(form.form.m), std::to_string(form.form.n), flags,
                            residual ? format_residual(*residual) : ""});
      break;
    }
    case OutputFormat::kText:
      std::cout << render_normal_form_text(word, form);
      if (residual) std::cout << "matrix residual " << format_residual(*residual) << '\n';
      break;
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-p parabose/parafermi Fock space toolkit"};
  app.require_subcommand(1);
  Options opts;

  auto* conventions = app.add_subcommand("conventions", "search the Klein dressing grid");
  auto* verify = app.add_subcommand("verify", "run the operator relation suite");
  auto* basis = app.add_subcommand("basis", "sector dimensions, orthonormal basis, transitions");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "energy levels, degeneracies, Witten sums");
  auto* reduce_cmd = app.add_subcommand("reduce", "normal-order a creation word");
  for (auto* cmd : {conventions, verify, basis, spectrum_cmd, reduce_cmd}) add_common(*cmd, opts);
  reduce_cmd->add_option("word", opts.word, "tokens a+ / f+, leftmost acts last")->required();
  reduce_cmd->add_flag("--check", opts.config.check, "cross-check against the matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    opts.config.format = parse_format(opts.format);
    auto* active = app.get_subcommands().front();
    if (active->count("--levels") == 0)
      opts.config.level_cap = std::min(opts.config.level_cap, opts.config.cutoff - 1);
    if (!opts.convention.empty()) opts.config.convention = GreenConvention::parse(opts.convention);
    opts.config.validate();

    if (conventions->parsed()) return run_conventions(opts.config);
    if (verify->parsed()) return run_verify(opts.config);
    if (basis->parsed()) return run_basis(opts.config);
    if (spectrum_cmd->parsed()) return run_spectrum(opts.config);
    if (reduce_cmd->parsed()) return run_reduce(opts.config, opts.word);
  } catch (const TruncationError& e) {
    std::cerr << "truncation guard: " << e.what() << '\n';
    return kExitTruncation;
  } catch (const ConventionError& e) {
    std::cerr << "convention: " << e.what() << '\n';
    return kExitNoConvention;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
