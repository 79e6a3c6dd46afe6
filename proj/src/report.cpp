#include "parasusy/report.hpp"

#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parasusy/errors.hpp"

namespace parasusy {

OutputFormat parse_format(std::string_view text) {
  if (text == "text") return OutputFormat::kText;
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (text|json|csv)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kText: return "text";
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
  }
  return "?";
}

void RunConfig::validate() const {
  if (p < 1) throw std::invalid_argument("--p must be >= 1");
  if (cutoff < 2) throw std::invalid_argument("--cutoff must be >= 2");
  if (level_cap < 1) throw std::invalid_argument("--levels must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");
  if (probes < 1) throw std::invalid_argument("--probes must be >= 1");
  if (level_cap > cutoff - Cutoff::kGuard)
    throw TruncationError("--levels " + std::to_string(level_cap) + " needs --cutoff >= " +
                          std::to_string(level_cap + Cutoff::kGuard) + " (got " +
                          std::to_string(cutoff) + ")");
}

Json to_json(const RunConfig& config) {
  Json j;
  j["p"] = config.p;
  j["cutoff"] = config.cutoff;
  j["level_cap"] = config.level_cap;
  j["tolerance"] = config.tolerance;
  j["probes"] = config.probes;
  j["seed"] = config.seed;
  j["convention"] = config.convention ? Json(config.convention->to_string()) : Json(nullptr);
  j["format"] = std::string(to_string(config.format));
  return j;
}

Json rep_metadata(const ParaRep& rep, const Tolerances& tolerances) {
  Json j;
  j["p"] = rep.p();
  j["cutoff"] = rep.cutoff().per_component();
  j["level_cap"] = rep.cutoff().level_cap();
  j["convention"] = rep.convention().to_string();
  j["convention_index"] = rep.convention().canonical_index();
  j["dim"] = rep.dim();
  j["tolerances"] = {{"identity", tolerances.identity},
                     {"normalization", tolerances.normalization}};
  return j;
}

Json big_int_json(const BigInt& value) {
  if (value >= std::numeric_limits<long long>::min() &&
      value <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(value));
  return Json(value.str());
}

Json to_json(const IdentityCheck& check) {
  Json j;
  j["name"] = check.name;
  j["group"] = check.group;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["domain"] = std::string(to_string(check.domain));
  j["residual"] = check.residual;
  j["passed"] = check.passed;
  j["probes"] = check.probes;
  return j;
}

Json to_json(const ConventionSearchResult& result) {
  Json j;
  j["p"] = result.p;
  j["cutoff"] = result.cutoff;
  j["tolerance"] = result.tolerance;
  Json valid = Json::array();
  Json all = Json::array();
  for (const auto& c : result.candidates) {
    Json entry;
    entry["convention"] = c.convention.to_string();
    entry["index"] = c.convention.canonical_index();
    entry["valid"] = c.valid;
    entry["failed"] = c.failed;
    entry["worst_residual"] = c.worst_residual;
    entry["worst_identity"] = c.worst_identity;
    if (c.valid) valid.push_back(entry);
    all.push_back(std::move(entry));
  }
  j["valid"] = std::move(valid);
  j["candidates"] = std::move(all);
  return j;
}

Json to_json(const SectorRow& row) {
  const auto& r = row.report;
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["dim"] = r.dim;
  j["expected_dim"] = row.expected_dim;
  Json labels = Json::array();
  for (const auto& v : r.vectors) labels.push_back(v.label.s());
  j["ns_labels"] = std::move(labels);
  j["gram_residual"] = r.gram_residual;
  j["grading_residual"] = r.grading_residual;
  j["closed_form_overlap"] = r.closed_form_overlap;
  if (row.transitions) {
    const auto& t = *row.transitions;
    j["transition"] = {{"expected", t.expected},
                       {"measured", t.measured},
                       {"t_raise", t.t_raise_residual},
                       {"t_lower", t.t_lower_residual},
                       {"ladder_plus", t.ladder_plus_residual},
                       {"ladder_minus", t.ladder_minus_residual},
                       {"ladder_dag_plus", t.ladder_dag_plus_residual},
                       {"ladder_dag_minus", t.ladder_dag_minus_residual},
                       {"charge_sector", t.charge_sector_residual},
                       {"charge_dag_sector", t.charge_dag_sector_residual}};
  } else {
    j["transition"] = nullptr;
  }
  return j;
}

Json to_json(const SpectrumTable& table) {
  Json j;
  j["p"] = table.p;
  j["level_cap"] = table.level_cap;
  Json levels = Json::array();
  for (const auto& row : table.levels) {
    Json l;
    l["energy"] = row.energy;
    l["degeneracy"] = row.degeneracy;
    l["expected_degeneracy"] = expected_degeneracy(row.energy, ParaOrder(table.p));
    l["even_n"] = row.even_n_count;
    l["odd_n"] = row.odd_n_count;
    l["witten_sum"] = row.witten_sum;
    Json states = Json::array();
    for (const auto& s : row.states) states.push_back({{"m", s.m}, {"n", s.n}, {"s", s.s()}});
    l["states"] = std::move(states);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

Json to_json(const WittenReport& report) {
  Json j;
  j["level_sums"] = report.level_sums;
  j["cumulative"] = report.cumulative;
  j["cancels"] = report.cancels;
  j["half_split"] = report.half_split;
  return j;
}

Json to_json(const AnnotatedNormalForm& form) {
  Json j;
  j["alpha"] = big_int_json(form.form.alpha);
  j["beta"] = big_int_json(form.form.beta);
  j["m"] = form.form.m;
  j["n"] = form.form.n;
  Json flags = Json::array();
  if (form.vanishes) flags.push_back("vanishes");
  if (form.beta_dependent) flags.push_back("beta_dependent");
  j["flags"] = std::move(flags);
  return j;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string format_residual(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

namespace {

std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

std::vector<std::string> meta_fields(const RunConfig& config, const GreenConvention& convention) {
  return {std::to_string(config.p), std::to_string(config.cutoff),
          std::to_string(config.level_cap), convention.to_string(), std::to_string(config.seed)};
}

std::vector<std::string> meta_header() { return {"p", "cutoff", "level_cap", "convention", "seed"}; }

std::vector<std::string> join(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

std::string ns_labels(const SubspaceReport& r) {
  std::string out;
  for (const auto& v : r.vectors) {
    if (!out.empty()) out += ' ';
    out += v.label.two_s > 0 ? "+1/2" : "-1/2";
  }
  return out;
}

}  // namespace

std::string render_checks_text(const std::vector<IdentityCheck>& checks) {
  std::ostringstream out;
  std::size_t width = 8;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  out << std::left << std::setw(6) << "status" << "  " << std::setw(10) << "group" << "  "
      << std::setw(8) << "domain" << "  " << std::setw(9) << "residual" << "  identity\n";
  for (const auto& c : checks) {
    out << std::left << std::setw(6) << (c.passed ? "PASS" : "FAIL") << "  " << std::setw(10)
        << c.group << "  " << std::setw(8) << to_string(c.domain) << "  " << std::setw(9)
        << format_residual(c.residual) << "  " << c.name << '\n';
  }
  int failed = 0;
  for (const auto& c : checks) failed += c.passed ? 0 : 1;
  out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size()
      << " identities pass; worst residual " << format_residual(worst_residual(checks)) << '\n';
  return out.str();
}

std::string render_checks_csv(const std::vector<IdentityCheck>& checks, const RunConfig& config,
                              const GreenConvention& convention) {
  std::string out = csv_row(join(
      meta_header(), {"group", "domain", "identity", "lhs", "rhs", "residual", "passed", "probes"}));
  for (const auto& c : checks)
    out += csv_row(join(meta_fields(config, convention),
                        {c.group, std::string(to_string(c.domain)), c.name, c.lhs, c.rhs,
                         format_residual(c.residual), c.passed ? "true" : "false",
                         std::to_string(c.probes)}));
  return out;
}

std::string render_conventions_text(const ConventionSearchResult& result) {
  std::ostringstream out;
  const auto valid = result.valid();
  out << "p = " << result.p << ", cutoff " << result.cutoff << ": " << valid.size() << " of "
      << result.candidates.size() << " Klein dressings realize the defining relations\n";
  for (const auto& c : valid)
    out << "  " << std::left << std::setw(20) << c.convention.to_string() << "worst residual "
        << format_residual(c.worst_residual) << '\n';
  if (!valid.empty()) out << "pinned: " << valid.front().convention.to_string() << '\n';
  return out.str();
}

std::string render_conventions_csv(const ConventionSearchResult& result) {
  std::string out = csv_row(
      {"p", "cutoff", "convention", "index", "valid", "failed", "worst_residual", "worst_identity"});
  for (const auto& c : result.candidates)
    out += csv_row({std::to_string(result.p), std::to_string(result.cutoff),
                    c.convention.to_string(), std::to_string(c.convention.canonical_index()),
                    c.valid ? "true" : "false", std::to_string(c.failed),
                    format_residual(c.worst_residual), c.worst_identity});
  return out;
}

std::string render_sectors_text(const std::vector<SectorRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(5) << "dim"
      << std::setw(12) << "N_s" << std::setw(11) << "gram" << std::setw(11) << "overlap"
      << std::setw(13) << "T coeff" << "transitions\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << std::left << std::setw(4) << r.m << std::setw(4) << r.n << std::setw(5) << r.dim
        << std::setw(12) << ns_labels(r) << std::setw(11) << format_residual(r.gram_residual)
        << std::setw(11) << fixed(r.closed_form_overlap, 8);
    if (row.transitions)
      out << std::setw(13) << fixed(row.transitions->expected, 8)
          << format_residual(row.transitions->worst());
    else
      out << std::setw(13) << "-" << "-";
    if (r.dim != row.expected_dim) out << "  (expected dim " << row.expected_dim << ")";
    out << '\n';
  }
  return out.str();
}

std::string render_sectors_csv(const std::vector<SectorRow>& rows, const RunConfig& config,
                               const GreenConvention& convention) {
  std::string out = csv_row(join(meta_header(),
                                 {"m", "n", "dim", "expected_dim", "ns_labels", "gram_residual",
                                  "grading_residual", "closed_form_overlap", "transition_coeff",
                                  "transition_residual"}));
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += csv_row(join(
        meta_fields(config, convention),
        {std::to_string(r.m), std::to_string(r.n), std::to_string(r.dim),
         std::to_string(row.expected_dim), ns_labels(r), format_residual(r.gram_residual),
         format_residual(r.grading_residual), fixed(r.closed_form_overlap, 12),
         row.transitions ? fixed(row.transitions->expected, 12) : "",
         row.transitions ? format_residual(row.transitions->worst()) : ""}));
  }
  return out;
}

std::string render_spectrum_text(const SpectrumTable& table, const WittenReport& witten) {
  std::ostringstream out;
  out << "p = " << table.p << "\n";
  for (auto it = table.levels.rbegin(); it != table.levels.rend(); ++it) {
    const auto& row = *it;
    out << "E_" << row.energy << " = " << std::left << std::setw(3) << row.energy << " deg "
        << std::setw(3) << row.degeneracy << " witten " << std::setw(3) << std::right
        << row.witten_sum << std::left << " |";
    for (const auto& s : row.states) out << ' ' << s.str();
    out << '\n';
  }
  out << "Tr(-1)^N_f over levels 1.." << table.level_cap << " = " << witten.cumulative
      << (witten.cancels ? " (cancels level by level)" : " (DOES NOT CANCEL)") << '\n';
  return out.str();
}

std::string render_spectrum_csv(const SpectrumTable& table, const RunConfig& config,
                                const GreenConvention& convention) {
  std::string out = csv_row(join(meta_header(), {"energy", "degeneracy", "expected_degeneracy",
                                                 "even_n", "odd_n", "witten_sum", "states"}));
  for (const auto& row : table.levels) {
    std::string states;
    for (const auto& s : row.states) {
      if (!states.empty()) states += ' ';
      states += s.str();
    }
    out += csv_row(join(meta_fields(config, convention),
                        {std::to_string(row.energy), std::to_string(row.degeneracy),
                         std::to_string(expected_degeneracy(row.energy, ParaOrder(table.p))),
                         std::to_string(row.even_n_count), std::to_string(row.odd_n_count),
                         std::to_string(row.witten_sum), states}));
  }
  return out;
}

std::string render_normal_form_text(const CreationWord& word, const AnnotatedNormalForm& form) {
  std::ostringstream out;
  const auto& nf = form.form;
  auto monomial = [](int fs, int as, bool pair) {
    std::string s;
    if (fs > 0) s += fs == 1 ? "f+ " : "f+^" + std::to_string(fs) + " ";
    if (as > 0) s += as == 1 ? "a+ " : "a+^" + std::to_string(as) + " ";
    if (pair) s += "F+ ";
    return s + "|0>";
  };
  out << (word.empty() ? std::string("1") : format_word(word)) << " |0> = " << nf.alpha << " "
      << monomial(nf.n, nf.m, false);
  if (nf.m >= 1 && nf.n >= 1)
    out << (nf.beta < 0 ? " - " : " + ") << abs(nf.beta) << " " << monomial(nf.n - 1, nf.m - 1, true);
  out << "\nalpha = " << nf.alpha << "\nbeta = " << nf.beta << "\n(m, n) = (" << nf.m << ", "
      << nf.n << ")\n";
  if (form.vanishes) out << "flag: vanishes (n > p)\n";
  if (form.beta_dependent) out << "flag: beta_dependent (n = p)\n";
  return out.str();
}

}  // namespace parasusy
