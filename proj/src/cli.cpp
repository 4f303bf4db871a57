#include "redei/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "redei/error.hpp"
#include "redei/harness.hpp"
#include "redei/io.hpp"

namespace redei::cli {

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("REDEI_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultBudget;
  const std::string_view text(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "REDEI_BUDGET must be a non-negative integer");
  }
  return v;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// Flattens a JSON object into aligned "key  value" rows; nested objects use
// dotted keys, arrays of scalars are space-joined.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    return;
  }
  if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
    if (scalars) {
      std::string joined;
      for (const Json& v : j) {
        if (!joined.empty()) joined += ' ';
        joined += scalar_text(v);
      }
      rows.emplace_back(prefix, joined.empty() ? "(none)" : joined);
      return;
    }
    const bool tuples = std::all_of(j.begin(), j.end(), [](const Json& v) {
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    });
    if (tuples) {
      std::string joined;
      for (const Json& v : j) {
        if (!joined.empty()) joined += ' ';
        joined += '(';
        for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + scalar_text(v[i]);
        joined += ')';
      }
      rows.emplace_back(prefix, joined);
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, scalar_text(j));
}

std::string table(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) {
    // Multi-line values (set files embedded in violations) keep their shape.
    std::string value = v;
    std::string indent(width + 2, ' ');
    for (std::size_t pos = 0; (pos = value.find('\n', pos)) != std::string::npos; pos += indent.size() + 1) {
      if (pos + 1 == value.size()) {
        value.erase(pos);
        break;
      }
      value.insert(pos + 1, indent);
    }
    os << k << std::string(width - k.size() + 2, ' ') << value << '\n';
  }
  return os.str();
}

struct Emitter {
  bool json = false;
  std::string out_path;

  void emit(const Json& j, std::ostream& out) const {
    const std::string text = json ? j.dump(2) + "\n" : table(j);
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(out_path);
    if (!file || !(file << text)) throw Error(ErrorCode::IoError, "cannot write " + out_path);
  }
};

void add_output_flags(CLI::App* cmd, Emitter& emitter) {
  cmd->add_flag("--json", emitter.json, "Emit JSON instead of a table");
  cmd->add_option("--out", emitter.out_path, "Write output to this file");
}

int verify_exit(const CampaignReport& report) { return report.violations.empty() ? kExitVerified : kExitViolation; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Direction counting over finite planes and growth in Aff(F_q)", "redei"};
  app.require_subcommand(1);
  Emitter emitter;

  std::uint64_t field_p = 0, field_e = 0;
  auto* field_cmd = app.add_subcommand("field", "Print the canonical field of order p^e");
  field_cmd->add_option("p", field_p, "Characteristic")->required();
  field_cmd->add_option("e", field_e, "Extension degree")->required();
  add_output_flags(field_cmd, emitter);

  std::string set_path;
  auto* directions_cmd = app.add_subcommand("directions", "Directions determined by a point set");
  directions_cmd->add_option("setfile", set_path, "Point-set file ('-' for stdin)")->required();
  add_output_flags(directions_cmd, emitter);

  std::string slope_text;
  auto* redei_cmd = app.add_subcommand("redei", "Redei polynomial decomposition at one slope");
  redei_cmd->add_option("setfile", set_path, "Point-set file ('-' for stdin)")->required();
  redei_cmd->add_option("--slope", slope_text, "Finite slope code")->required();
  add_output_flags(redei_cmd, emitter);

  auto* bounds_cmd = app.add_subcommand("bounds", "Direction-count bounds for a point set");
  bounds_cmd->add_option("setfile", set_path, "Point-set file ('-' for stdin)")->required();
  add_output_flags(bounds_cmd, emitter);

  auto* classify_cmd = app.add_subcommand("classify", "Classify a symmetric subset of Aff(F_q)");
  classify_cmd->add_option("affsetfile", set_path, "Affine-set file ('-' for stdin)")->required();
  add_output_flags(classify_cmd, emitter);

  std::string target_name, sizes_text, counterexample_dir = "counterexamples";
  std::uint64_t q = 0, seed = 0;
  std::optional<std::uint64_t> samples, only_index;
  bool exhaustive = false, timing = false;
  unsigned jobs = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification campaign");
  verify_cmd->add_option("--target", target_name,
                         "szonyi|maindir|qbounds|moreq|classify|vinh|kneser|ruzsa|ghost|lemma_phipi")
      ->required();
  verify_cmd->add_option("--q", q, "Field order")->required();
  auto* exhaustive_flag = verify_cmd->add_flag("--exhaustive", exhaustive, "Enumerate every candidate");
  auto* samples_opt = verify_cmd->add_option("--samples", samples, "Number of seeded random trials");
  exhaustive_flag->excludes(samples_opt);
  verify_cmd->add_option("--seed", seed, "Campaign seed (default 0)");
  verify_cmd->add_option("--sizes", sizes_text, "Size range a..b");
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--index", only_index, "Replay a single trial index");
  verify_cmd->add_option("--counterexamples", counterexample_dir, "Directory for violation records");
  verify_cmd->add_flag("--timing", timing, "Include wall-clock seconds in the report");
  add_output_flags(verify_cmd, emitter);

  std::uint64_t search_size = 0, search_samples = 10000;
  auto* search_cmd = app.add_subcommand("search", "Minimum direction count at one size");
  search_cmd->add_option("--q", q, "Field order")->required();
  search_cmd->add_option("--size", search_size, "Set size")->required();
  search_cmd->add_option("--seed", seed, "Seed for the sampling fallback (default 0)");
  search_cmd->add_option("--samples", search_samples, "Samples for the sampling fallback");
  search_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_output_flags(search_cmd, emitter);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (field_cmd->parsed()) {
      const FieldSpec field = FieldSpec::construct(field_p, field_e);
      if (emitter.json) {
        emitter.emit(Json{{"p", field.p()},
                          {"e", field.e()},
                          {"q", field.q()},
                          {"modulus", field.modulus_string()},
                          {"modulus_code", field.modulus_code()}},
                     out);
      } else {
        const std::string line = "p=" + std::to_string(field.p()) + " e=" + std::to_string(field.e()) +
                                 " q=" + std::to_string(field.q()) + " modulus=" + field.modulus_string() + "\n";
        if (emitter.out_path.empty()) {
          out << line;
        } else {
          std::ofstream file(emitter.out_path);
          if (!file || !(file << line)) throw Error(ErrorCode::IoError, "cannot write " + emitter.out_path);
        }
      }
      return kExitVerified;
    }
    if (directions_cmd->parsed()) {
      emitter.emit(direction_json(parse_point_set(read_input(set_path))), out);
      return kExitVerified;
    }
    if (redei_cmd->parsed()) {
      const PlanePointSet A = parse_point_set(read_input(set_path));
      const Slope s = parse_slope(A.field(), slope_text);
      if (s.is_infinite()) throw Error(ErrorCode::InvalidArgument, "--slope must be a finite slope code");
      emitter.emit(redei_json(A, s.value()), out);
      return kExitVerified;
    }
    if (bounds_cmd->parsed()) {
      emitter.emit(bounds_json(parse_point_set(read_input(set_path))), out);
      return kExitVerified;
    }
    if (classify_cmd->parsed()) {
      const AffSet A = parse_aff_set(read_input(set_path));
      emitter.emit(classification_json(A, classify(A)), out);
      return kExitVerified;
    }
    if (verify_cmd->parsed()) {
      if (!exhaustive && !samples) throw Error(ErrorCode::InvalidArgument, "verify needs --exhaustive or --samples N");
      const FieldSpec field = field_for_order(q);
      const Target target = parse_target(target_name);
      const Campaign c{target,
                       field,
                       sizes_text.empty() ? default_sizes(target, field) : parse_size_range(sizes_text),
                       exhaustive ? Mode::Exhaustive : Mode::Randomized,
                       samples.value_or(0),
                       seed,
                       jobs,
                       budget_from_env(),
                       only_index};
      const CampaignReport report = run_campaign(c);
      emitter.emit(report_json(report, timing), out);
      for (const Violation& v : report.violations) {
        err << "violation recorded at " << persist_counterexample(c, v, counterexample_dir).string() << '\n';
      }
      return verify_exit(report);
    }
    if (search_cmd->parsed()) {
      const FieldSpec field = field_for_order(q);
      const ExtremalResult r = extremal_search(field, search_size, budget_from_env(), seed, search_samples, jobs);
      emitter.emit(extremal_json(field, search_size, r), out);
      return kExitVerified;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace redei::cli
