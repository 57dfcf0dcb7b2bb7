#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpm/codes.hpp"
#include "kpm/moments.hpp"
#include "kpm/verify.hpp"

using ojson = nlohmann::ordered_json;
using namespace kpm;

namespace {

constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv, Text };

struct Common {
  std::string field_spec;
  std::string format = "json";
  bool no_timing = false;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw PreconditionError("unknown format '" + s + "'");
}

// --field takes "r" or "r:modulus" with the modulus in hex (0x optional).
FieldCtx parse_field(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string rpart = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
  unsigned r = 0;
  std::uint32_t modulus = 0;
  try {
    std::size_t used = 0;
    const unsigned long rv = std::stoul(rpart, &used, 10);
    if (used != rpart.size() || rv > 64) throw std::invalid_argument("r");
    r = static_cast<unsigned>(rv);
    if (colon != std::string::npos) {
      std::string mpart = spec.substr(colon + 1);
      if (mpart.rfind("0x", 0) == 0 || mpart.rfind("0X", 0) == 0) mpart = mpart.substr(2);
      const unsigned long mv = std::stoul(mpart, &used, 16);
      if (used != mpart.size() || mv > 0xffffffffull || mpart.empty()) {
        throw std::invalid_argument("modulus");
      }
      modulus = static_cast<std::uint32_t>(mv);
    }
  } catch (const std::exception&) {
    throw PreconditionError("bad --field '" + spec + "'; expected r or r:hexmodulus");
  }
  return FieldCtx::build(r, modulus);
}

std::string hex_of(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

ojson field_block(const FieldCtx& f) {
  return ojson{{"r", f.r()}, {"q", f.q()}, {"modulus", hex_of(f.modulus())}};
}

ojson header(const char* command, const FieldCtx& f) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["field"] = field_block(f);
  return j;
}

void print_json(const ojson& j) { std::printf("%s\n", j.dump(2).c_str()); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Renders {"columns": [...], "rows": [[...], ...]} shaped data.
void print_csv(const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  std::string line;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(columns[i]);
  }
  std::printf("%s\n", line.c_str());
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += csv_escape(row[i]);
    }
    std::printf("%s\n", line.c_str());
  }
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void attach_timing(ojson& j, const Common& common, const Timer& timer) {
  if (!common.no_timing) j["elapsed_ms"] = timer.ms();
}

FqElem parse_element(const FieldCtx& f, std::uint64_t raw, const char* what) {
  if (raw >= f.q()) {
    throw PreconditionError(std::string(what) + "=" + std::to_string(raw) +
                            " is not an element code below q=" + std::to_string(f.q()));
  }
  return static_cast<FqElem>(raw);
}

CodeSpec spec_from_flags(const FieldCtx& f, const std::string& kind, unsigned n, unsigned m,
                         bool allow_any_n) {
  if (kind == "md") return CodeSpec::md(f, n, allow_any_n);
  if (kind == "pow") return CodeSpec::pow(f, m);
  throw PreconditionError("kind '" + kind + "' does not name a code family");
}

int cmd_field(const Common& common) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  ojson j = header("field", f);
  j["generator"] = f.generator();
  j["trace_zero_count"] = f.trace_zero_count();
  j["default_modulus"] = hex_of(FieldCtx::default_modulus(f.r()));
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"key", "value"}, {{"r", std::to_string(f.r())},
                                   {"q", std::to_string(f.q())},
                                   {"modulus", hex_of(f.modulus())},
                                   {"generator", std::to_string(f.generator())},
                                   {"trace_zero_count", std::to_string(f.trace_zero_count())}});
      break;
    case Format::Text:
      std::printf("GF(2^%u): q=%u modulus=%s generator=%u trace-zero=%u\n", f.r(), f.q(),
                  hex_of(f.modulus()).c_str(), f.generator(), f.trace_zero_count());
      break;
  }
  return 0;
}

int cmd_ksum(const Common& common, unsigned m, std::uint64_t a_raw, std::uint64_t twist_raw,
             bool check, std::uint64_t budget) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  const FqElem a = parse_element(f, a_raw, "a");
  const FqElem twist = parse_element(f, twist_raw, "twist");
  if (a == 0) throw ZeroParameter("a must be nonzero");
  if (twist == 0) throw ZeroParameter("twist must be nonzero");
  if (twist != 1 && m != 1) throw PreconditionError("twists only apply to the m=1 sum");

  std::int64_t value = 0;
  if (m == 1) {
    value = kloosterman(f, a, twist);
  } else {
    value = kloosterman_md_all(f, m).values[a];
  }

  bool checked = false;
  if (check) {
    const std::int64_t direct = kloosterman_md_direct(f, m, a, budget);
    checked = true;
    if (twist == 1 && direct != value) {
      throw IdentityViolation(m, std::to_string(value), std::to_string(direct));
    }
  }

  ojson j = header("ksum", f);
  j["a"] = a;
  j["m"] = m;
  j["twist"] = twist;
  j["value"] = std::to_string(value);
  j["checked"] = checked;
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"a", "m", "twist", "value"},
                {{std::to_string(a), std::to_string(m), std::to_string(twist),
                  std::to_string(value)}});
      break;
    case Format::Text:
      std::printf("K_%u(a=%u%s) = %lld\n", m, a,
                  twist == 1 ? "" : (", twist=" + std::to_string(twist)).c_str(),
                  static_cast<long long>(value));
      break;
  }
  return 0;
}

int cmd_ksum_table(const Common& common, unsigned m) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  const auto table = kloosterman_md_all(f, m);

  ojson j = header("ksum-table", f);
  j["m"] = m;
  ojson values = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (FqElem a = 1; a < f.q(); ++a) {
    values.push_back(ojson{{"a", a}, {"value", std::to_string(table.values[a])}});
    rows.push_back({std::to_string(a), std::to_string(table.values[a])});
  }
  j["values"] = std::move(values);
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"a", "value"}, rows);
      break;
    case Format::Text:
      for (const auto& row : rows) {
        std::printf("K_%u(%s) = %s\n", m, row[0].c_str(), row[1].c_str());
      }
      break;
  }
  return 0;
}

int cmd_value_range(const Common& common) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  const auto vr = value_range(f);

  ojson j = header("value-range", f);
  j["predicted"] = vr.predicted;
  ojson observed = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& e : vr.observed) {
    observed.push_back(ojson{{"t", e.t},
                             {"multiplicity", e.multiplicity},
                             {"disc_q", e.disc_q},
                             {"disc_4q", e.disc_4q}});
    rows.push_back({std::to_string(e.t), std::to_string(e.multiplicity),
                    std::to_string(e.disc_q), std::to_string(e.disc_4q)});
  }
  j["observed"] = std::move(observed);
  j["missing"] = vr.missing;
  j["unexpected"] = vr.unexpected;
  j["ok"] = vr.exact_match();
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"t", "multiplicity", "disc_q", "disc_4q"}, rows);
      break;
    case Format::Text:
      std::printf("q=%u predicted:", f.q());
      for (auto t : vr.predicted) std::printf(" %lld", t);
      std::printf("\nobserved (t: multiplicity):");
      for (const auto& e : vr.observed) {
        std::printf(" %lld:%llu", e.t, static_cast<unsigned long long>(e.multiplicity));
      }
      std::printf("\nmatch: %s\n", vr.exact_match() ? "yes" : "NO");
      break;
  }
  return vr.exact_match() ? 0 : 1;
}

int cmd_counts(const Common& common, const std::string& kind, unsigned n, unsigned m,
               bool check, std::uint64_t budget) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);

  unsigned param = 0;
  if (kind == "md") {
    if (n < 2) throw ZeroParameter("MD counts need --n >= 2");
    param = n - 1;
  } else if (kind == "pow") {
    if (m == 0) throw ZeroParameter("POW counts need --m >= 1");
    param = m;
  } else {
    throw PreconditionError("kind '" + kind + "' does not name a count family");
  }

  const auto formula =
      kind == "md" ? delta_formula(f, param) : sigma_formula(f, param);

  bool checked = false;
  bool ok = true;
  std::vector<std::uint32_t> mismatches;
  if (check) {
    const auto direct =
        kind == "md" ? delta_direct(f, param, budget) : sigma_direct(f, param, budget);
    checked = true;
    for (std::uint32_t beta = 0; beta < f.q(); ++beta) {
      if (direct.counts[beta] != formula.counts[beta]) {
        ok = false;
        mismatches.push_back(beta);
      }
    }
  }

  ojson j = header("counts", f);
  j["kind"] = kind;
  if (kind == "md") j["n"] = n; else j["m"] = m;
  j["param"] = param;
  j["length"] = formula.total().str();
  ojson counts = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (std::uint32_t beta = 0; beta < f.q(); ++beta) {
    counts.push_back(ojson{{"beta", beta}, {"count", formula.counts[beta].str()}});
    rows.push_back({std::to_string(beta), formula.counts[beta].str()});
  }
  j["counts"] = std::move(counts);
  j["checked"] = checked;
  j["ok"] = ok;
  if (!mismatches.empty()) j["mismatched_beta"] = mismatches;
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"beta", "count"}, rows);
      break;
    case Format::Text:
      for (const auto& row : rows) {
        std::printf("count(beta=%s) = %s\n", row[0].c_str(), row[1].c_str());
      }
      std::printf("total = %s%s\n", formula.total().str().c_str(),
                  checked ? (ok ? " (checked)" : " (MISMATCH)") : "");
      break;
  }
  return ok ? 0 : 1;
}

ojson enum_block(const WeightEnumerator& e) {
  ojson j;
  j["n"] = e.n.str();
  j["truncated"] = e.truncated;
  ojson freq = ojson::array();
  for (const auto& v : e.freq) freq.push_back(v.str());
  j["freq"] = std::move(freq);
  j["total"] = e.total().str();
  return j;
}

int cmd_weights(const Common& common, const std::string& kind, unsigned n, unsigned m,
                std::optional<std::uint64_t> max_weight, bool dual_only, bool check,
                bool allow_r2, bool allow_any_n, std::uint64_t budget) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  const auto spec = spec_from_flags(f, kind, n, m, allow_any_n);

  const auto dual = dual_weight_enumerator(spec, allow_r2, false, budget);

  std::optional<WeightEnumerator> code;
  if (!dual_only) {
    const auto table =
        spec.kind == CodeKind::MD ? delta_formula(f, spec.param) : sigma_formula(f, spec.param);
    code = weight_distribution(f, table, max_weight, budget);
  }

  bool checked = false;
  bool ok = true;
  if (check) {
    if (!code) throw PreconditionError("--check needs the code distribution (drop --dual)");
    const auto mw = macwilliams_transform(dual, spec.length(), f.q());
    checked = true;
    for (std::size_t w = 0; w < code->freq.size(); ++w) {
      if (code->freq[w] != mw.freq[w]) ok = false;
    }
  }

  ojson j = header("weights", f);
  j["kind"] = kind;
  if (kind == "md") j["n"] = n; else j["m"] = m;
  j["param"] = spec.param;
  j["dual"] = enum_block(dual);
  if (code) j["code"] = enum_block(*code);
  j["checked"] = checked;
  j["ok"] = ok;
  attach_timing(j, common, timer);

  const auto& table = dual_only ? dual : *code;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t w = 0; w < table.freq.size(); ++w) {
    if (table.freq[w] != 0) rows.push_back({std::to_string(w), table.freq[w].str()});
  }

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"weight", "frequency"}, rows);
      break;
    case Format::Text:
      std::printf("%s distribution, N=%s%s:\n", dual_only ? "dual" : "code",
                  table.n.str().c_str(), table.truncated ? " (truncated)" : "");
      for (const auto& row : rows) {
        std::printf("  w=%s : %s\n", row[0].c_str(), row[1].c_str());
      }
      if (checked) std::printf("MacWilliams cross-check: %s\n", ok ? "pass" : "FAIL");
      break;
  }
  return ok ? 0 : 1;
}

int cmd_moments(const Common& common, const std::string& kind, unsigned n, unsigned m,
                unsigned hmax, bool check, std::uint64_t budget) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);

  MomentSequence seq;
  MomentKind mk;
  unsigned oracle_param = 0;
  if (kind == "md") {
    seq = recursive_moments_md(f, n, hmax);
    mk = MomentKind::MD;
    oracle_param = n;
  } else if (kind == "pow") {
    seq = recursive_moments_power(f, m, hmax);
    mk = MomentKind::POW;
    oracle_param = m;
  } else if (kind == "k2") {
    seq = recursive_moments_k2(f, hmax);
    mk = MomentKind::K2;
    oracle_param = 2;
  } else {
    throw PreconditionError("kind '" + kind + "' does not name a moment family");
  }

  bool checked = false;
  bool ok = true;
  std::vector<unsigned> bad_orders;
  if (check) {
    if (static_cast<std::uint64_t>(f.q()) * f.q() > budget) {
      throw BudgetExceeded("oracle tables need q^2 work beyond the budget");
    }
    checked = true;
    for (unsigned h = 0; h <= hmax; ++h) {
      if (seq.values[h] != moment_oracle(f, mk, oracle_param, h)) {
        ok = false;
        bad_orders.push_back(h);
      }
    }
    if (kind == "k2") {
      const auto bridged = k2_from_power_moments(recursive_moments_power(f, 2, hmax), f.q());
      for (unsigned h = 0; h <= hmax; ++h) {
        if (bridged.values[h] != seq.values[h]) {
          ok = false;
          bad_orders.push_back(h);
        }
      }
    }
  }

  ojson j = header("moments", f);
  j["kind"] = kind;
  if (kind == "md") j["n"] = n;
  if (kind == "pow") j["m"] = m;
  j["hmax"] = hmax;
  ojson values = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (unsigned h = 0; h <= hmax; ++h) {
    values.push_back(seq.values[h].str());
    rows.push_back({std::to_string(h), seq.values[h].str()});
  }
  j["values"] = std::move(values);
  j["checked"] = checked;
  j["ok"] = ok;
  if (!bad_orders.empty()) j["mismatched_orders"] = bad_orders;
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"h", "value"}, rows);
      break;
    case Format::Text:
      for (const auto& row : rows) {
        std::printf("h=%s : %s\n", row[0].c_str(), row[1].c_str());
      }
      if (checked) std::printf("oracle cross-check: %s\n", ok ? "pass" : "FAIL");
      break;
  }
  return ok ? 0 : 1;
}

int cmd_verify(const Common& common, const std::string& level_name, std::uint64_t budget) {
  const Timer timer;
  const auto f = parse_field(common.field_spec);
  VerifyLevel level;
  if (level_name == "fast") {
    level = VerifyLevel::Fast;
  } else if (level_name == "full") {
    level = VerifyLevel::Full;
  } else {
    throw PreconditionError("level '" + level_name + "' is neither fast nor full");
  }

  const auto report = run_verification(f, level, budget);

  ojson j = header("verify", f);
  j["level"] = to_string(level);
  ojson checks = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : report.checks) {
    ojson cj{{"name", c.name}, {"status", to_string(c.status)}};
    if (!common.no_timing) cj["elapsed_ms"] = c.elapsed_ms;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
    rows.push_back({c.name, to_string(c.status), c.detail});
  }
  j["checks"] = std::move(checks);
  j["ok"] = report.ok();
  attach_timing(j, common, timer);

  switch (parse_format(common.format)) {
    case Format::Json:
      print_json(j);
      break;
    case Format::Csv:
      print_csv({"name", "status", "detail"}, rows);
      break;
    case Format::Text:
      for (const auto& c : report.checks) {
        std::printf("%-22s %-8s %s\n", c.name.c_str(), to_string(c.status), c.detail.c_str());
      }
      std::printf("verify: %s\n", report.ok() ? "ok" : "FAILED");
      break;
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact power moments of multi-dimensional Kloosterman sums over GF(2^r)"};
  app.require_subcommand(1);

  Common common;
  unsigned m_flag = 1, n_flag = 2, hmax = 5;
  std::uint64_t a_raw = 0, twist_raw = 1;
  std::uint64_t budget = kDefaultEnumBudget;
  std::uint64_t dp_budget = kDefaultDpBudget;
  std::uint64_t max_weight_raw = 0;
  bool check = false, dual_only = false, allow_r2 = false, allow_any_n = false;
  std::string kind = "md", level = "fast";

  const auto add_common = [&](CLI::App* sub, bool field_required = true) {
    auto* opt = sub->add_option("--field", common.field_spec, "field degree r, or r:hexmodulus");
    if (field_required) opt->required();
    sub->add_option("--format", common.format, "output format: json, csv, or text");
    sub->add_flag("--no-timing", common.no_timing, "omit elapsed_ms from output");
  };

  auto* sub_field = app.add_subcommand("field", "show the field tables' summary");
  add_common(sub_field);

  auto* sub_ksum = app.add_subcommand("ksum", "one Kloosterman value");
  add_common(sub_ksum);
  sub_ksum->add_option("--a", a_raw, "evaluation point (nonzero element code)")->required();
  sub_ksum->add_option("--m", m_flag, "dimension (default 1)");
  sub_ksum->add_option("--twist", twist_raw, "twist the character by c (m=1 only)");
  sub_ksum->add_flag("--check", check, "re-derive by direct tuple enumeration");
  sub_ksum->add_option("--budget", budget, "tuple budget for --check");

  auto* sub_table = app.add_subcommand("ksum-table", "all Kloosterman values of one dimension");
  add_common(sub_table);
  sub_table->add_option("--m", m_flag, "dimension (default 1)");

  auto* sub_range = app.add_subcommand("value-range", "attained values vs the congruence prediction");
  add_common(sub_range);

  auto* sub_counts = app.add_subcommand("counts", "fiber counts of a defining vector");
  add_common(sub_counts);
  sub_counts->add_option("--kind", kind, "family: md or pow")->required();
  sub_counts->add_option("--n", n_flag, "MD dimension (entry width n-1)");
  sub_counts->add_option("--m", m_flag, "POW width");
  sub_counts->add_flag("--check", check, "compare against direct enumeration");
  sub_counts->add_option("--budget", budget, "tuple budget for --check");

  auto* sub_weights = app.add_subcommand("weights", "weight distributions of a code pair");
  add_common(sub_weights);
  sub_weights->add_option("--kind", kind, "family: md or pow")->required();
  sub_weights->add_option("--n", n_flag, "MD dimension");
  sub_weights->add_option("--m", m_flag, "POW width");
  auto* mw_opt = sub_weights->add_option("--max-weight", max_weight_raw,
                                         "truncate the table at this weight");
  sub_weights->add_flag("--dual", dual_only, "only the closed-form dual distribution");
  sub_weights->add_flag("--check", check, "cross-check the DP against MacWilliams");
  sub_weights->add_flag("--allow-r2", allow_r2, "permit GF(4) diagnostics");
  sub_weights->add_flag("--allow-any-n", allow_any_n, "permit MD dimensions not a power of two");
  sub_weights->add_option("--budget", dp_budget, "dense table cap (default 5000)");

  auto* sub_moments = app.add_subcommand("moments", "power moments via the recursions");
  add_common(sub_moments);
  sub_moments->add_option("--kind", kind, "family: md, pow, or k2")->required();
  sub_moments->add_option("--n", n_flag, "MD dimension");
  sub_moments->add_option("--m", m_flag, "POW width");
  sub_moments->add_option("--hmax", hmax, "highest moment order (default 5)");
  sub_moments->add_flag("--check", check, "compare against the table oracle");
  sub_moments->add_option("--budget", budget, "work budget for --check");

  auto* sub_verify = app.add_subcommand("verify", "run the identity suite against one field");
  add_common(sub_verify);
  sub_verify->add_option("--level", level, "fast or full");
  sub_verify->add_option("--budget", budget, "enumeration budget for oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sub_field) return cmd_field(common);
    if (*sub_ksum) return cmd_ksum(common, m_flag, a_raw, twist_raw, check, budget);
    if (*sub_table) return cmd_ksum_table(common, m_flag);
    if (*sub_range) return cmd_value_range(common);
    if (*sub_counts) return cmd_counts(common, kind, n_flag, m_flag, check, budget);
    if (*sub_weights) {
      std::optional<std::uint64_t> max_weight;
      if (mw_opt->count() > 0) max_weight = max_weight_raw;
      return cmd_weights(common, kind, n_flag, m_flag, max_weight, dual_only, check, allow_r2,
                         allow_any_n, dp_budget);
    }
    if (*sub_moments) return cmd_moments(common, kind, n_flag, m_flag, hmax, check, budget);
    if (*sub_verify) return cmd_verify(common, level, budget);
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "invariant violated: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
