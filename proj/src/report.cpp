#include "netshare/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace netshare {

namespace {

std::vector<std::vector<std::string>> split_csv(std::string_view csv, std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != header) throw std::invalid_argument("unexpected CSV header: " + line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  if (first) throw std::invalid_argument("empty CSV");
  return rows;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw std::invalid_argument("bad CSV number: " + s);
  return d;
}

void expect_width(const std::vector<std::string>& row, std::size_t n) {
  if (row.size() != n) throw std::invalid_argument("CSV row has wrong field count");
}

std::string fixed1(double d) {
  if (std::isnan(d)) return "ERR";
  std::ostringstream o;
  o << std::fixed << std::setprecision(1) << d;
  return o.str();
}

constexpr std::string_view kRateHeader =
    "r_bar_1,r_bar_2,r_tilde_1,r_tilde_2,r_nsh,r_sh,err_r_bar_1,err_r_bar_2,err_r_tilde_1,err_r_tilde_2";
constexpr std::string_view kProfileHeader = "lambda,rate_bit_s";
constexpr std::string_view kTableHeader = "w_ratio,p_ratio,r_nsh_mbit_s,r_sh_mbit_s,ratio";
constexpr std::string_view kComparisonHeader =
    "quantity,analytic,mc_mean,mc_stderr,rel_gap,no_coverage_fraction";

}  // namespace

std::string format_double(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

std::string rate_report_csv(const RateReport& r) {
  std::string out(kRateHeader);
  out += '\n';
  for (double v : {r.r_bar_1, r.r_bar_2, r.r_tilde_1, r.r_tilde_2, r.r_nsh, r.r_sh, r.err_r_bar_1,
                   r.err_r_bar_2, r.err_r_tilde_1, r.err_r_tilde_2}) {
    out += format_double(v);
    out += ',';
  }
  out.back() = '\n';
  return out;
}

RateReport parse_rate_report_csv(std::string_view csv) {
  const auto rows = split_csv(csv, kRateHeader);
  if (rows.size() != 1) throw std::invalid_argument("rate report CSV must have one data row");
  expect_width(rows[0], 10);
  RateReport r;
  double* fields[] = {&r.r_bar_1,     &r.r_bar_2,     &r.r_tilde_1,     &r.r_tilde_2,
                      &r.r_nsh,       &r.r_sh,        &r.err_r_bar_1,   &r.err_r_bar_2,
                      &r.err_r_tilde_1, &r.err_r_tilde_2};
  for (std::size_t i = 0; i < 10; ++i) *fields[i] = parse_double(rows[0][i]);
  return r;
}

std::string profile_csv(const std::vector<ProfilePoint>& profile) {
  std::string out(kProfileHeader);
  out += '\n';
  for (const auto& p : profile) out += format_double(p.lambda) + ',' + format_double(p.rate) + '\n';
  return out;
}

std::vector<ProfilePoint> parse_profile_csv(std::string_view csv) {
  std::vector<ProfilePoint> out;
  for (const auto& row : split_csv(csv, kProfileHeader)) {
    expect_width(row, 2);
    out.push_back({parse_double(row[0]), parse_double(row[1])});
  }
  return out;
}

std::string table_csv(const std::vector<TableCell>& cells) {
  std::string out(kTableHeader);
  out += '\n';
  for (const auto& c : cells) {
    out += format_double(c.w_ratio) + ',' + format_double(c.p_ratio) + ',' +
           format_double(c.r_nsh_mbit_s) + ',' + format_double(c.r_sh_mbit_s) + ',' +
           format_double(c.ratio) + '\n';
  }
  return out;
}

std::vector<TableCell> parse_table_csv(std::string_view csv) {
  std::vector<TableCell> out;
  for (const auto& row : split_csv(csv, kTableHeader)) {
    expect_width(row, 5);
    TableCell c;
    c.w_ratio = parse_double(row[0]);
    c.p_ratio = parse_double(row[1]);
    c.r_nsh_mbit_s = parse_double(row[2]);
    c.r_sh_mbit_s = parse_double(row[3]);
    c.ratio = parse_double(row[4]);
    out.push_back(c);
  }
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out(kComparisonHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.quantity + ',' + format_double(r.analytic) + ',' + format_double(r.mc_mean) + ',' +
           format_double(r.mc_stderr) + ',' + format_double(r.rel_gap) + ',' +
           format_double(r.no_coverage_fraction) + '\n';
  }
  return out;
}

std::vector<ComparisonRow> parse_comparison_csv(std::string_view csv) {
  std::vector<ComparisonRow> out;
  for (const auto& row : split_csv(csv, kComparisonHeader)) {
    expect_width(row, 6);
    out.push_back({row[0], parse_double(row[1]), parse_double(row[2]), parse_double(row[3]),
                   parse_double(row[4]), parse_double(row[5])});
  }
  return out;
}

void print_rate_report(std::ostream& os, const RateReport& r) {
  const auto flags = os.flags();
  os << std::setprecision(6);
  os << "                    non-sharing        sharing\n";
  os << "operator 1 [b/s/Hz] " << std::setw(12) << r.r_bar_1 << "   " << std::setw(12) << r.r_tilde_1 << '\n';
  os << "operator 2 [b/s/Hz] " << std::setw(12) << r.r_bar_2 << "   " << std::setw(12) << r.r_tilde_2 << '\n';
  os << "aggregate [Mbit/s]  " << std::setw(12) << r.r_nsh / 1e6 << "   " << std::setw(12) << r.r_sh / 1e6 << '\n';
  if (r.r_nsh > 0.0) os << "sharing gain R_sh/R_nsh = " << r.r_sh / r.r_nsh << '\n';
  os << "quadrature error estimates [b/s/Hz]: " << r.err_r_bar_1 << ' ' << r.err_r_bar_2 << ' '
     << r.err_r_tilde_1 << ' ' << r.err_r_tilde_2 << '\n';
  os.flags(flags);
}

void print_comparison(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  const auto flags = os.flags();
  os << std::left << std::setw(14) << "quantity" << std::right << std::setw(12) << "analytic"
     << std::setw(12) << "simulated" << std::setw(12) << "stderr" << std::setw(10) << "gap %" << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(14) << r.quantity << std::right << std::fixed << std::setprecision(5)
       << std::setw(12) << r.analytic << std::setw(12) << r.mc_mean << std::setw(12) << r.mc_stderr
       << std::setprecision(2) << std::setw(10) << 100.0 * r.rel_gap << '\n';
    os.flags(flags);
  }
  os.flags(flags);
}

void print_table(std::ostream& os, const std::vector<TableCell>& cells,
                 const std::vector<double>& w_ratios, const std::vector<double>& p_ratios) {
  auto find = [&](double w, double p) -> const TableCell* {
    for (const auto& c : cells) {
      if (c.w_ratio == w && c.p_ratio == p) return &c;
    }
    return nullptr;
  };
  auto block = [&](const char* title, bool sharing) {
    os << title << '\n';
    os << std::setw(12) << "";
    for (double w : w_ratios) os << std::setw(12) << ("W2/W1=" + format_double(w));
    os << '\n';
    for (double p : p_ratios) {
      os << std::setw(12) << ("P2/P1=" + format_double(p));
      for (double w : w_ratios) {
        const TableCell* c = find(w, p);
        const double v = c ? (sharing ? c->r_sh_mbit_s : c->r_nsh_mbit_s) : std::nan("");
        os << std::setw(12) << fixed1(v);
      }
      os << '\n';
    }
  };
  os << "Aggregate average rate (Mbit/s) at the rate-maximizing density\n";
  block("Non-sharing", false);
  block("Spectrum and infrastructure sharing", true);
}

}  // namespace netshare
