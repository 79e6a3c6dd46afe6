#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "parasusy/algebra.hpp"
#include "parasusy/basis.hpp"
#include "parasusy/conventions.hpp"
#include "parasusy/rep.hpp"
#include "parasusy/rewrite.hpp"
#include "parasusy/susy.hpp"

namespace parasusy {

using Json = nlohmann::ordered_json;

enum class OutputFormat { kText, kJson, kCsv };

OutputFormat parse_format(std::string_view text);
std::string_view to_string(OutputFormat format);

/// Tolerances recorded alongside every report.
struct Tolerances {
  double identity = 1e-10;
  double normalization = 1e-8;
};

struct RunConfig {
  int p = 1;
  int cutoff = 6;
  int level_cap = 5;
  double tolerance = 1e-8;
  int probes = 8;
  std::uint64_t seed = 42;
  std::optional<GreenConvention> convention;
  OutputFormat format = OutputFormat::kText;
  bool check = false;

  /// Throws std::invalid_argument for non-positive fields and
  /// TruncationError for level_cap > cutoff - 1.
  void validate() const;
};

Json to_json(const RunConfig& config);
Json rep_metadata(const ParaRep& rep, const Tolerances& tolerances = {});
Json big_int_json(const BigInt& value);

Json to_json(const IdentityCheck& check);
Json to_json(const ConventionSearchResult& result);
Json to_json(const SectorRow& row);
Json to_json(const SpectrumTable& table);
Json to_json(const WittenReport& report);
Json to_json(const AnnotatedNormalForm& form);

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted and
/// embedded quotes doubled.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

/// Fixed-format residual, e.g. "3.2e-15".
std::string format_residual(double value);

std::string render_checks_text(const std::vector<IdentityCheck>& checks);
std::string render_checks_csv(const std::vector<IdentityCheck>& checks, const RunConfig& config,
                              const GreenConvention& convention);

std::string render_conventions_text(const ConventionSearchResult& result);
std::string render_conventions_csv(const ConventionSearchResult& result);

std::string render_sectors_text(const std::vector<SectorRow>& rows);
std::string render_sectors_csv(const std::vector<SectorRow>& rows, const RunConfig& config,
                               const GreenConvention& convention);

/// One row per level listing the state labels, degeneracy and Witten sum.
std::string render_spectrum_text(const SpectrumTable& table, const WittenReport& witten);
std::string render_spectrum_csv(const SpectrumTable& table, const RunConfig& config,
                                const GreenConvention& convention);

std::string render_normal_form_text(const CreationWord& word, const AnnotatedNormalForm& form);

}  // namespace parasusy
