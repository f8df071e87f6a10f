// Copyright 2026 The nsdensity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>
#include "nsdensity/constants.hpp"
#include "nsdensity/enumeration.hpp"
#include "nsdensity/errors.hpp"
#include "nsdensity/limits.hpp"
#include "nsdensity/verify.hpp"

namespace nsdensity::cli {
namespace {

using json = nlohmann::ordered_json;

enum class Format { kText, kCsv, kJson };

struct RunConfig {
  std::string subcommand;
  int f = 0;
  std::string d;
  int l = 0;
  int k = 0;
  int n = 0;
  int bound = 0;
  int depth = kDefaultLimitDepth;
  int max_t = 4;
  int max_f = 20;
  std::string suite = "all";
  std::string kind;
  Format format = Format::kText;
  std::string cache_path;
  bool no_save = false;
  int workers = 0;
  int budget = kDefaultEnumerationBudget;
  int depth_budget = kDefaultDepthBudget;
};

constexpr int kDecimalPlaces = 5;

std::string resolve_cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("NSDENSITY_CACHE"); env && *env) {
    return env;
  }
  return "nsdensity.cache";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out << ',';
    out << csv_field(cells[i]);
  }
  out << '\n';
}

// Left-aligned text table.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& out) const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows_) {
      widths.resize(std::max(widths.size(), row.size()));
      for (std::size_t i = 0; i < row.size(); ++i) {
        widths[i] = std::max(widths[i], display_width(row[i]));
      }
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) {
          line += std::string(widths[i] - display_width(row[i]) + 2, ' ');
        }
      }
      out << line << '\n';
    }
  }

 private:
  // Counts code points, so "∅" is one column.
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
      if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
  }
  std::vector<std::vector<std::string>> rows_;
};

std::string bound_text(const DSet& d) {
  const auto bound = gamma_lower_bound(d);
  return bound ? format_decimal(*bound, kDecimalPlaces) : "none";
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const RunConfig& cfg, const SweepOptions& sweep,
                  std::ostream& out) {
  const DensityTable table = density_table(cfg.f, sweep);
  struct Row {
    DSet d;
    int m;
    int r;
    std::uint64_t p;
    Dyadic mu;
  };
  std::vector<Row> rows;
  for (const auto& [s, p] : table.entries()) {
    rows.push_back({d_of(s), multiplicity(s), r_value(s), p, table.mu(s)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.p != b.p) return a.p > b.p;
    return a.d < b.d;
  });
  const BigInt total = table.total();
  const BigInt expected = BigInt(1) << (cfg.f - 1);
  const bool ok = total == expected;

  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"d", "m", "r", "p", "mu", "mu_decimal"});
      for (const auto& row : rows) {
        write_csv(out, {row.d.key(), std::to_string(row.m),
                        std::to_string(row.r), std::to_string(row.p),
                        row.mu.fraction(), row.mu.decimal(kDecimalPlaces)});
      }
      write_csv(out, {"total", "", "", total.str(), ok ? "1" : "mismatch",
                      ok ? Dyadic(1).decimal(kDecimalPlaces) : ""});
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "enumerate";
      doc["f"] = cfg.f;
      json list = json::array();
      for (const auto& row : rows) {
        list.push_back({{"d", row.d.key()},
                        {"m", row.m},
                        {"r", row.r},
                        {"p", row.p},
                        {"mu", row.mu.fraction()},
                        {"mu_decimal", row.mu.decimal(kDecimalPlaces)}});
      }
      doc["semigroups"] = std::move(list);
      doc["total"] = {{"p", total.str()}, {"expected", expected.str()},
                      {"ok", ok}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText: {
      out << "f = " << cfg.f << ": " << rows.size() << " semigroups, "
          << expected << " numerical sets\n";
      TextTable text({"D", "m", "R", "P", "mu", "mu_decimal"});
      for (const auto& row : rows) {
        text.add({row.d.key(), std::to_string(row.m), std::to_string(row.r),
                  std::to_string(row.p), row.mu.fraction(),
                  row.mu.decimal(kDecimalPlaces)});
      }
      text.print(out);
      out << "total P = " << total << (ok ? " = " : " != ") << "2^"
          << cfg.f - 1 << '\n';
      break;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

json gamma_json(const GammaEstimate& g) {
  json doc;
  doc["d"] = g.d.key();
  doc["depth"] = g.depth;
  doc["value"] = g.value.fraction();
  doc["value_decimal"] = g.value.decimal(kDecimalPlaces);
  doc["tail_bound"] = g.tail_bound.fraction();
  doc["interval"] = {g.lower().decimal(kDecimalPlaces),
                     g.upper().decimal(kDecimalPlaces)};
  doc["positivity_bound"] = bound_text(g.d);
  return doc;
}

int cmd_gamma(const RunConfig& cfg, ConstantProvider& constants,
              std::ostream& out) {
  const DSet d = DSet::parse(cfg.d);
  const GammaEstimate g = gamma(constants, d, cfg.depth);
  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"d", "depth", "value", "value_decimal", "tail_bound",
                      "lower_decimal", "upper_decimal", "positivity_bound"});
      write_csv(out, {d.key(), std::to_string(g.depth), g.value.fraction(),
                      g.value.decimal(kDecimalPlaces), g.tail_bound.fraction(),
                      g.lower().decimal(kDecimalPlaces),
                      g.upper().decimal(kDecimalPlaces), bound_text(d)});
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "gamma";
      doc["estimate"] = gamma_json(g);
      json used = json::array();
      for (const auto& [dk, a] : g.constants_used) {
        used.push_back({{"d", dk.key()}, {"a", a}});
      }
      doc["constants"] = std::move(used);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText: {
      out << "D = " << d.key() << ", depth " << g.depth << '\n';
      out << "value     " << g.value.fraction() << " ~ "
          << g.value.decimal(kDecimalPlaces) << '\n';
      out << "tail      " << g.tail_bound.fraction() << " ~ "
          << g.tail_bound.decimal(kDecimalPlaces) << '\n';
      out << "interval  [" << g.lower().decimal(kDecimalPlaces) << ", "
          << g.upper().decimal(kDecimalPlaces) << "]\n";
      out << "positivity bound  " << bound_text(d) << '\n';
      out << "constants";
      for (const auto& [dk, a] : g.constants_used) {
        out << "  A[" << dk.key() << "]=" << a;
      }
      out << '\n';
      break;
    }
  }
  return kExitOk;
}

int cmd_table(const RunConfig& cfg, ConstantProvider& constants,
              std::ostream& out) {
  const GammaTable table = gamma_table(constants, cfg.max_t, cfg.depth);
  const Rational tolerance = parse_decimal(kReferenceGammaError);
  std::map<DSet, std::string_view> refs;
  for (const auto& r : reference_gammas()) refs.emplace(r.d, r.value);

  std::size_t ref_checked = 0;
  std::size_t ref_ok = 0;
  struct Line {
    const GammaEstimate* g;
    std::string reference;
    std::string status;
  };
  std::vector<Line> lines;
  for (const auto& g : table.rows) {
    Line line{&g, "", ""};
    if (auto it = refs.find(g.d); it != refs.end()) {
      ++ref_checked;
      const bool hit =
          interval_meets(g.lower().to_rational(), g.upper().to_rational(),
                         parse_decimal(it->second), tolerance);
      if (hit) ++ref_ok;
      line.reference = std::string(it->second);
      line.status = hit ? "ok" : "MISS";
    }
    lines.push_back(std::move(line));
  }
  const bool ok = ref_ok == ref_checked;

  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"rank", "d", "value_decimal", "lower_decimal",
                      "upper_decimal", "positivity_bound", "reference",
                      "reference_status"});
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& g = *lines[i].g;
        write_csv(out, {std::to_string(i + 1), g.d.key(),
                        g.value.decimal(kDecimalPlaces),
                        g.lower().decimal(kDecimalPlaces),
                        g.upper().decimal(kDecimalPlaces), bound_text(g.d),
                        lines[i].reference, lines[i].status});
      }
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "table";
      doc["max_t"] = table.max_t;
      doc["depth"] = table.depth;
      json rows = json::array();
      for (const auto& line : lines) {
        json row = gamma_json(*line.g);
        if (!line.reference.empty()) {
          row["reference"] = line.reference;
          row["reference_status"] = line.status;
        }
        rows.push_back(std::move(row));
      }
      doc["rows"] = std::move(rows);
      doc["reference_rows"] = {{"checked", ref_checked}, {"matched", ref_ok}};
      json pairs = json::array();
      for (const auto& [a, b] : table.overlapping_pairs) {
        pairs.push_back({a.key(), b.key()});
      }
      doc["distinctness"] = {{"overlapping_pairs", std::move(pairs)},
                             {"disjoint_pairs", table.disjoint_pairs}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText: {
      out << "limit densities, Max(D) <= " << table.max_t << ", depth "
          << table.depth << ", tail "
          << three_quarters_pow(table.depth).decimal(kDecimalPlaces) << '\n';
      TextTable text({"rank", "D", "value", "interval", "bound", "reference"});
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& g = *lines[i].g;
        text.add({std::to_string(i + 1), g.d.key(),
                  g.value.decimal(kDecimalPlaces),
                  "[" + g.lower().decimal(kDecimalPlaces) + ", " +
                      g.upper().decimal(kDecimalPlaces) + "]",
                  bound_text(g.d),
                  lines[i].reference.empty()
                      ? ""
                      : lines[i].reference + " " + lines[i].status});
      }
      text.print(out);
      out << "reference rows matched: " << ref_ok << "/" << ref_checked
          << '\n';
      out << "distinctness: " << table.disjoint_pairs
          << " disjoint pairs, " << table.overlapping_pairs.size()
          << " overlapping (inconclusive)\n";
      break;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_alpha(const RunConfig& cfg, ConstantProvider& constants,
              std::ostream& out) {
  const AlphaEstimate a = alpha_limit(constants, cfg.n, cfg.depth);
  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"n", "depth", "terms", "value", "value_decimal",
                      "tail_bound", "lower_decimal", "upper_decimal"});
      write_csv(out, {std::to_string(a.n), std::to_string(a.depth),
                      std::to_string(a.terms.size()), a.value.fraction(),
                      a.value.decimal(kDecimalPlaces), a.tail_bound.fraction(),
                      a.lower().decimal(kDecimalPlaces),
                      a.upper().decimal(kDecimalPlaces)});
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "alpha";
      doc["n"] = a.n;
      doc["depth"] = a.depth;
      doc["value"] = a.value.fraction();
      doc["value_decimal"] = a.value.decimal(kDecimalPlaces);
      doc["tail_bound"] = a.tail_bound.fraction();
      doc["interval"] = {a.lower().decimal(kDecimalPlaces),
                         a.upper().decimal(kDecimalPlaces)};
      json terms = json::array();
      for (const auto& g : a.terms) terms.push_back(gamma_json(g));
      doc["terms"] = std::move(terms);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText:
      out << "alpha_" << a.n << ", depth " << a.depth << ", "
          << a.terms.size() << " terms\n";
      out << "value     " << a.value.fraction() << " ~ "
          << a.value.decimal(kDecimalPlaces) << '\n';
      out << "interval  [" << a.lower().decimal(kDecimalPlaces) << ", "
          << a.upper().decimal(kDecimalPlaces) << "]\n";
      for (const auto& g : a.terms) {
        out << "  gamma[" << g.d.key() << "] = "
            << g.value.decimal(kDecimalPlaces) << '\n';
      }
      break;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, ConstantProvider& constants,
               std::ostream& out) {
  const auto results =
      run_verify(cfg.suite, VerifyOptions{cfg.max_f, cfg.depth}, constants);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const CheckResult& r) { return r.passed; });
  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"suite", "check", "anchor", "status", "detail"});
      for (const auto& r : results) {
        write_csv(out, {r.suite, r.name, r.anchor, r.passed ? "pass" : "fail",
                        r.detail});
      }
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "verify";
      doc["suite"] = cfg.suite;
      doc["max_f"] = cfg.max_f;
      doc["depth"] = cfg.depth;
      json checks = json::array();
      for (const auto& r : results) {
        checks.push_back({{"suite", r.suite},
                          {"check", r.name},
                          {"anchor", r.anchor},
                          {"passed", r.passed},
                          {"detail", r.detail}});
      }
      doc["checks"] = std::move(checks);
      doc["passed"] = ok;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText:
      for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name
            << " (" << r.anchor << ") " << r.detail << '\n';
      }
      out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
      break;
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_count(const RunConfig& cfg, const SweepOptions& sweep,
              std::ostream& out) {
  CountQuery query;
  if (cfg.kind == "B") {
    query = CountB{DSet::parse(cfg.d), cfg.f};
  } else if (cfg.kind == "B_l") {
    query = CountBl{cfg.l, cfg.k, cfg.f};
  } else if (cfg.kind == "G_l") {
    query = CountGl{cfg.l, cfg.f};
  } else if (cfg.kind == "S") {
    query = CountS{DSet::parse(cfg.d), cfg.f};
  } else {
    query = CountSmallMultiplicity{cfg.f, cfg.bound};
  }
  const std::uint64_t value = evaluate(query, sweep);
  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"kind", "f", "d", "l", "k", "bound", "count"});
      write_csv(out, {cfg.kind, std::to_string(cfg.f), DSet::parse(cfg.d).key(),
                      std::to_string(cfg.l), std::to_string(cfg.k),
                      std::to_string(cfg.bound), std::to_string(value)});
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "count";
      doc["kind"] = cfg.kind;
      doc["f"] = cfg.f;
      doc["d"] = DSet::parse(cfg.d).key();
      doc["l"] = cfg.l;
      doc["k"] = cfg.k;
      doc["bound"] = cfg.bound;
      doc["count"] = value;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText:
      out << value << '\n';
      break;
  }
  return kExitOk;
}

int cmd_constants(const RunConfig& cfg, ConstantProvider& constants,
                  std::ostream& out) {
  struct Summary {
    int t;
    std::size_t count;
    BigInt sum;
    std::uint64_t max;
  };
  std::vector<Summary> rows;
  for (int t = 0; t <= cfg.depth; ++t) {
    const auto batch = constants.a_consts_batch(t);
    Summary s{t, batch.size(), 0, 0};
    for (const auto& [d, a] : batch) {
      s.sum += a;
      s.max = std::max(s.max, a);
    }
    rows.push_back(s);
  }
  switch (cfg.format) {
    case Format::kCsv:
      write_csv(out, {"t", "count", "sum", "max"});
      for (const auto& s : rows) {
        write_csv(out, {std::to_string(s.t), std::to_string(s.count),
                        s.sum.str(), std::to_string(s.max)});
      }
      break;
    case Format::kJson: {
      json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = "constants";
      doc["depth"] = cfg.depth;
      json list = json::array();
      for (const auto& s : rows) {
        list.push_back({{"t", s.t},
                        {"count", s.count},
                        {"sum", s.sum.str()},
                        {"max", s.max}});
      }
      doc["depths"] = std::move(list);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kText: {
      TextTable text({"t", "constants", "sum A_D", "max A_D"});
      for (const auto& s : rows) {
        text.add({std::to_string(s.t), std::to_string(s.count), s.sum.str(),
                  std::to_string(s.max)});
      }
      text.print(out);
      break;
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact densities of numerical semigroups under A(T)",
               "nsdensity"};
  app.require_subcommand(1);
  app.fallthrough();

  const std::map<std::string, Format> formats{
      {"text", Format::kText}, {"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--format", cfg.format, "Output format: text, csv, json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--cache", cfg.cache_path,
                 "Constant cache file (default $NSDENSITY_CACHE, then "
                 "./nsdensity.cache)");
  app.add_flag("--no-save", cfg.no_save, "Do not write computed constants");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--budget", cfg.budget,
                 "Largest Frobenius number for exhaustive sweeps")
      ->check(CLI::Range(1, kWordFrobenius));
  app.add_option("--depth-budget", cfg.depth_budget,
                 "Largest Max(D) whose constants may be computed")
      ->check(CLI::Range(0, kMaxDepth));

  auto* enumerate = app.add_subcommand("enumerate", "Exact density table");
  enumerate->add_option("--f", cfg.f, "Frobenius number")->required();

  auto* gamma_cmd = app.add_subcommand("gamma", "Limit density of N(D, f)");
  gamma_cmd->add_option("--d", cfg.d, "D as ascending list, e.g. 1,3");
  gamma_cmd->add_option("--depth", cfg.depth, "Truncation depth");

  auto* table = app.add_subcommand("table", "All limit densities up to Max(D)");
  table->add_option("--max-t", cfg.max_t, "Largest Max(D)");
  table->add_option("--depth", cfg.depth, "Truncation depth");

  auto* alpha = app.add_subcommand("alpha", "Limit mass with R(S) = n");
  alpha->add_option("--n", cfg.n, "n = -1 or n >= 1")->required();
  alpha->add_option("--depth", cfg.depth, "Truncation depth");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", cfg.suite,
                     "core, counting, constants, limits, or all");
  verify->add_option("--max-f", cfg.max_f, "Largest swept Frobenius number");
  verify->add_option("--depth", cfg.depth, "Truncation depth");

  auto* count = app.add_subcommand("count", "Direct counting query");
  count->add_option("--kind", cfg.kind, "B, B_l, G_l, S, small_multiplicity")
      ->required()
      ->check(CLI::IsMember({"B", "B_l", "G_l", "S", "small_multiplicity"}));
  count->add_option("--f", cfg.f, "Frobenius number")->required();
  count->add_option("--d", cfg.d, "D for B and S");
  count->add_option("--l", cfg.l, "l for B_l and G_l");
  count->add_option("--k", cfg.k, "k for B_l");
  count->add_option("--bound", cfg.bound, "bound for small_multiplicity");

  auto* constants_cmd =
      app.add_subcommand("constants", "Compute and cache A_D up to a depth");
  constants_cmd->add_option("--depth", cfg.depth, "Largest Max(D)");

  std::vector<std::string> argv_rest(args.size() > 1 ? args.begin() + 1
                                                      : args.end(),
                                     args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const SweepOptions sweep{cfg.workers, cfg.budget};
  try {
    if (enumerate->parsed()) return cmd_enumerate(cfg, sweep, out);
    if (count->parsed()) return cmd_count(cfg, sweep, out);

    const std::filesystem::path cache_path = resolve_cache_path(cfg.cache_path);
    ConstantCache cache;
    if (std::filesystem::exists(cache_path)) cache = cache_load(cache_path);
    ConstantProvider constants(std::move(cache), sweep, cfg.depth_budget);

    int code = kExitOk;
    if (gamma_cmd->parsed()) code = cmd_gamma(cfg, constants, out);
    if (table->parsed()) code = cmd_table(cfg, constants, out);
    if (alpha->parsed()) code = cmd_alpha(cfg, constants, out);
    if (verify->parsed()) code = cmd_verify(cfg, constants, out);
    if (constants_cmd->parsed()) code = cmd_constants(cfg, constants, out);

    if (constants.dirty() && !cfg.no_save) {
      cache_store(constants.snapshot(), cache_path);
    }
    return code;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheError& e) {
    err << "cache: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace nsdensity::cli
