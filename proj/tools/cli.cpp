#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kapteyn/coeffs.hpp"
#include "kapteyn/domain.hpp"
#include "kapteyn/series.hpp"

namespace kapteyn::cli {
namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<OutputRecord> rows;
};

std::string format_int(long long value) { return std::to_string(value); }

// Log-spaced grid with exact endpoints.
std::vector<double> log_grid(double lo, double hi, int samples) {
  if (!(lo > 0.0) || !(hi >= lo) || samples < 1) {
    throw Error(ErrorKind::invalid_argument,
                "range must satisfy 0 < lo <= hi and samples >= 1");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(samples));
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  for (int i = 0; i < samples; ++i) {
    if (i == 0) {
      grid.push_back(lo);
    } else if (i == samples - 1) {
      grid.push_back(hi);
    } else {
      const double s = static_cast<double>(i) / (samples - 1);
      grid.push_back(std::exp(log_lo + s * (log_hi - log_lo)));
    }
  }
  return grid;
}

std::string radius_cell(int order, double t) {
  try {
    return format_decimal(coeff_radius_estimate(order, t));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::zero_coefficient) return "inf";
    throw;
  }
}

// ---------------------------------------------------------------- coeff

Table cmd_coeff(int n, std::optional<int> k, bool exact) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
  if (k && (*k < 0 || *k > n)) {
    throw Error(ErrorKind::invalid_argument, "k must satisfy 0 <= k <= n");
  }
  Table table{{"n", "k", "value"}, {}};
  auto emit = [&](int kk, const BigRational& c) {
    OutputRecord r;
    r.add("n", format_int(n));
    r.add("k", format_int(kk));
    r.add("value", exact ? to_string(c) : format_decimal(c.get_d()));
    table.rows.push_back(std::move(r));
  };
  if (k) {
    emit(*k, coeff_closed_form(n, *k));
    return table;
  }
  const APoly poly = a_poly(n);
  for (int kk = 0; kk <= n; ++kk) {
    const auto& c = poly.coeffs[static_cast<std::size_t>(kk)];
    if (c != 0) emit(kk, c);
  }
  return table;
}

// ----------------------------------------------------------------- eval

void add_report(OutputRecord& r, const std::string& prefix,
                const SeriesEvalReport& rep) {
  r.add(prefix + "re", format_decimal(rep.value.real()));
  r.add(prefix + "im", format_decimal(rep.value.imag()));
  r.add(prefix + "terms", format_int(static_cast<long long>(rep.terms_used)));
  r.add(prefix + "tail_bound", format_decimal(rep.tail_bound));
}

Table cmd_eval(double z_re, double z_im, double t, const std::string& method,
               double tol) {
  const ComplexValue z{z_re, z_im};
  OutputRecord r;
  if (method == "direct") {
    add_report(r, "direct_", eval_direct(z, t, tol));
  } else if (method == "power") {
    add_report(r, "power_", eval_power(z, t, tol));
  } else {
    const SeriesEvalReport direct = eval_direct(z, t, tol);
    const SeriesEvalReport power = eval_power(z, t, tol);
    add_report(r, "direct_", direct);
    add_report(r, "power_", power);
    r.add("abs_diff", format_decimal(std::abs(direct.value - power.value)));
  }
  Table table;
  table.rows.push_back(std::move(r));
  return table;
}

// --------------------------------------------------------------- radius

OutputRecord radius_record(const std::string& which, const RadiusResult& res) {
  OutputRecord r;
  r.add("which", which);
  r.add("t", format_decimal(res.t));
  r.add("radius", format_decimal(res.radius));
  r.add("branch", to_string(res.branch));
  r.add("residual", format_decimal(res.residual));
  r.add("iterations", format_int(static_cast<long long>(res.iterations)));
  return r;
}

Table cmd_radius(double t, const std::string& which) {
  if (t == 0.0) throw Error(ErrorKind::invalid_argument, "t must be nonzero");
  const double abs_t = std::abs(t);
  Table table;
  if (which == "R" || which == "both") {
    table.rows.push_back(radius_record("R", solve_R(abs_t)));
  }
  if (which == "r" || which == "both") {
    table.rows.push_back(radius_record("r", solve_r(abs_t)));
  }
  return table;
}

// --------------------------------------------------------------- figure

struct FigureOptions {
  int id = 0;
  int samples = 100;
  std::vector<double> range;  // empty: per-figure default
  int order = 500;
  double fig2_t = 0.1;
};

Table cmd_figure(const FigureOptions& opt) {
  Table table;
  if (opt.id == 2) {
    int lo = 1;
    int hi = 300;
    if (!opt.range.empty()) {
      lo = static_cast<int>(opt.range[0]);
      hi = static_cast<int>(opt.range[1]);
    }
    if (lo < 1 || hi < lo) {
      throw Error(ErrorKind::invalid_argument, "figure 2 needs 1 <= lo <= hi");
    }
    table.header = {"n", "ln_abs_A_n", "sign"};
    for (int n = lo; n <= hi; ++n) {
      const LogAbs a = a_eval_logabs(n, opt.fig2_t);
      OutputRecord r;
      r.add("n", format_int(n));
      r.add("ln_abs_A_n", a.sign == 0 ? "-inf" : format_decimal(a.log_abs));
      r.add("sign", format_int(a.sign));
      table.rows.push_back(std::move(r));
    }
    return table;
  }

  double lo = 0.05;
  double hi = 20.0;
  if (!opt.range.empty()) {
    lo = opt.range[0];
    hi = opt.range[1];
  }
  const auto grid = log_grid(lo, hi, opt.samples);
  const std::string estimate_name = "estimate_" + std::to_string(opt.order);
  switch (opt.id) {
    case 1: table.header = {"t", "estimate"}; break;
    case 3: table.header = {"t", "R_solved", estimate_name}; break;
    case 4: table.header = {"t", "r", "R"}; break;
    default:
      throw Error(ErrorKind::invalid_argument, "figure id must be 1, 2, 3 or 4");
  }
  for (double t : grid) {
    OutputRecord r;
    r.add("t", format_decimal(t));
    if (opt.id == 1) {
      r.add("estimate", radius_cell(opt.order, t));
    } else if (opt.id == 3) {
      r.add("R_solved", format_decimal(solve_R(t).radius));
      r.add(estimate_name, radius_cell(opt.order, t));
    } else {
      r.add("r", format_decimal(solve_r(t).radius));
      r.add("R", format_decimal(solve_R(t).radius));
    }
    table.rows.push_back(std::move(r));
  }
  return table;
}

// --------------------------------------------------------------- expand

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Reads "index,value" lines. Blank lines and lines starting with '#' are
// skipped; the first data line may instead be the header "index,value".
std::map<int, double> read_indexed_csv(std::istream& in) {
  std::map<int, double> values;
  std::string line;
  int line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const bool first = !seen_content;
    seen_content = true;
    if (first && text == "index,value") continue;

    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::parse,
                  "line " + std::to_string(line_no) + ": " + why);
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) fail("expected 'index,value'");
    const std::string index_text = trim(text.substr(0, comma));
    const std::string value_text = trim(text.substr(comma + 1));

    std::size_t used = 0;
    long index = 0;
    double value = 0.0;
    try {
      index = std::stol(index_text, &used);
      if (used != index_text.size()) fail("bad index '" + index_text + "'");
      value = std::stod(value_text, &used);
      if (used != value_text.size()) fail("bad value '" + value_text + "'");
    } catch (const std::logic_error&) {
      fail("cannot parse '" + text + "'");
    }
    if (index < 1 || index > 100000) fail("index must be in [1, 100000]");
    if (!std::isfinite(value)) fail("value must be finite");
    if (!values.emplace(static_cast<int>(index), value).second) {
      fail("duplicate index " + std::to_string(index));
    }
  }
  return values;
}

Table cmd_expand(const std::string& direction, const std::string& input,
                 std::optional<int> count) {
  std::map<int, double> indexed;
  if (input == "-") {
    indexed = read_indexed_csv(std::cin);
  } else {
    std::ifstream file(input);
    if (!file) throw Error(ErrorKind::io, "cannot open " + input);
    indexed = read_indexed_csv(file);
  }
  const int n = count ? *count : (indexed.empty() ? 0 : indexed.rbegin()->first);
  if (n < 0) throw Error(ErrorKind::invalid_argument, "--n must be >= 0");

  CoeffSequence seq;
  seq.values.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& [index, value] : indexed) {
    if (index <= n) seq.values[static_cast<std::size_t>(index - 1)] = value;
  }
  CoeffSequence mapped;
  if (direction == "to-kapteyn") {
    seq.convention = SequenceConvention::taylor_a;
    mapped = taylor_to_kapteyn(seq, static_cast<std::size_t>(n));
  } else {
    seq.convention = SequenceConvention::kapteyn_alpha;
    mapped = kapteyn_to_taylor(seq, static_cast<std::size_t>(n));
  }

  Table table{{"index", "value"}, {}};
  for (std::size_t i = 0; i < mapped.values.size(); ++i) {
    OutputRecord r;
    r.add("index", format_int(static_cast<long long>(i + 1)));
    r.add("value", format_decimal(mapped.values[i]));
    table.rows.push_back(std::move(r));
  }
  return table;
}

void emit(const Table& table, bool json, std::ostream& out) {
  if (json) {
    write_json(out, table.rows);
  } else {
    write_csv(out, table.rows, table.header);
  }
}

}  // namespace

std::string format_decimal(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<OutputRecord>& records,
               const std::vector<std::string>& header) {
  std::vector<std::string> names = header;
  if (!records.empty()) {
    names.clear();
    for (const auto& [name, value] : records.front().columns) {
      names.push_back(name);
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i ? "," : "") << names[i];
  }
  out << '\n';
  for (const auto& record : records) {
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
      out << (i ? "," : "") << record.columns[i].second;
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<OutputRecord>& records) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& record : records) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (const auto& [name, value] : record.columns) object[name] = value;
    array.push_back(std::move(object));
  }
  out << array.dump(2) << '\n';
}

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::not_in_domain:
    case ErrorKind::outside_radius:
      return kDomainViolation;
    case ErrorKind::invalid_argument:
    case ErrorKind::parse:
      return kUsage;
    default:
      return kFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Kapteyn series F(z,t) = sum t^n J_n(nz): evaluation, exact "
               "coefficients, convergence radii and figure tables"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit JSON instead of CSV");

  // coeff
  int coeff_n = 0;
  std::optional<int> coeff_k;
  bool coeff_exact = false;
  auto* coeff = app.add_subcommand("coeff", "Coefficients C_k^n of A_n(t)");
  coeff->add_option("n", coeff_n, "Order n >= 1")->required();
  coeff->add_option("k", coeff_k, "Single power k (default: whole row)");
  coeff->add_flag("--exact", coeff_exact, "Print exact p/q values");

  // eval
  double z_re = 0.0, z_im = 0.0, eval_t = 0.0, tol = 1e-12;
  std::string method = "both";
  auto* eval = app.add_subcommand("eval", "Evaluate F(z, t)");
  eval->add_option("z_re", z_re)->required();
  eval->add_option("z_im", z_im)->required();
  eval->add_option("t", eval_t)->required();
  eval->add_option("--method", method)
      ->check(CLI::IsMember({"direct", "power", "both"}));
  eval->add_option("--tol", tol)->check(CLI::PositiveNumber);

  // radius
  double radius_t = 0.0;
  std::string which = "both";
  auto* radius = app.add_subcommand("radius", "Solve for R(t) and/or r(t)");
  radius->add_option("t", radius_t)->required();
  radius->add_option("--which", which)->check(CLI::IsMember({"R", "r", "both"}));

  // figure
  FigureOptions fig;
  std::string out_path;
  auto* figure = app.add_subcommand("figure", "Emit figure data as CSV");
  figure->add_option("id", fig.id)->required()->check(CLI::Range(1, 4));
  figure->add_option("--out", out_path, "Output file (default: stdout)");
  figure->add_option("--samples", fig.samples, "Number of t samples")
      ->check(CLI::PositiveNumber);
  figure->add_option("--range", fig.range,
                     "lo,hi (t range; n range for figure 2)")
      ->expected(2)
      ->delimiter(',');
  figure->add_option("--order", fig.order, "Coefficient order for figures 1 and 3")
      ->check(CLI::PositiveNumber);
  figure->add_option("--t", fig.fig2_t, "t for figure 2");

  // expand
  std::string direction;
  std::string input;
  std::optional<int> expand_n;
  auto* expand = app.add_subcommand("expand", "Map Taylor <-> Kapteyn coefficients");
  expand->add_option("--direction", direction)
      ->required()
      ->check(CLI::IsMember({"to-kapteyn", "to-taylor"}));
  expand->add_option("--input", input, "CSV of index,value ('-' for stdin)")
      ->required();
  expand->add_option("--n", expand_n, "Output length (default: largest index)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    Table table;
    if (*coeff) {
      table = cmd_coeff(coeff_n, coeff_k, coeff_exact);
    } else if (*eval) {
      table = cmd_eval(z_re, z_im, eval_t, method, tol);
    } else if (*radius) {
      table = cmd_radius(radius_t, which);
    } else if (*figure) {
      table = cmd_figure(fig);
      if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw Error(ErrorKind::io, "cannot open " + out_path);
        emit(table, json, file);
        file.flush();
        if (!file) throw Error(ErrorKind::io, "write failed: " + out_path);
        return kSuccess;
      }
    } else if (*expand) {
      table = cmd_expand(direction, input, expand_n);
    }
    emit(table, json, out);
    return kSuccess;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace kapteyn::cli
