#include "abcpac/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "abcpac/errors.hpp"
#include "abcpac/numeric.hpp"

namespace abcpac {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidInputError("line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return v;
}

std::size_t parse_count(const std::string& text, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInputError("line " + std::to_string(line_no) + ": '" + text + "' is not a count");
  }
  return v;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, const LadderTrace& trace, std::size_t dim) {
  os << "step,lambda,ess,accept_rate,M,log_z";
  for (std::size_t j = 1; j <= dim; ++j) os << ",theta_mean_" << j;
  for (std::size_t j = 1; j <= dim; ++j) os << ",theta_sd_" << j;
  os << '\n';
  for (const auto& s : trace.steps) {
    os << s.step << ',' << format_double(s.lambda) << ',' << format_double(s.ess) << ','
       << format_double(s.accept_rate) << ',' << s.replicates << ',' << format_double(s.log_z);
    for (std::size_t j = 0; j < dim; ++j) os << ',' << format_double(s.theta_mean[static_cast<Eigen::Index>(j)]);
    for (std::size_t j = 0; j < dim; ++j) os << ',' << format_double(s.theta_sd[static_cast<Eigen::Index>(j)]);
    os << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, std::span<const Snapshot> snapshots, std::size_t dim) {
  os << "step,particle,weight";
  for (std::size_t j = 1; j <= dim; ++j) os << ",theta_" << j;
  os << '\n';
  for (const auto& snap : snapshots) {
    std::vector<double> lw;
    lw.reserve(snap.particles.size());
    for (const auto& p : snap.particles) lw.push_back(p.log_weight);
    const double total = log_sum_exp(lw);
    for (std::size_t i = 0; i < snap.particles.size(); ++i) {
      const auto& p = snap.particles[i];
      os << snap.step << ',' << i << ',' << format_double(std::exp(p.log_weight - total));
      for (std::size_t j = 0; j < dim; ++j) os << ',' << format_double(p.theta[static_cast<Eigen::Index>(j)]);
      os << '\n';
    }
  }
}

LadderTrace read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidInputError("line 1: empty trace file");
  const auto header = split_csv_line(trim_cr(line));
  const std::vector<std::string> fixed{"step", "lambda", "ess", "accept_rate", "M", "log_z"};
  if (header.size() < fixed.size() || (header.size() - fixed.size()) % 2 != 0 ||
      !std::equal(fixed.begin(), fixed.end(), header.begin())) {
    throw InvalidInputError("line 1: trace header must start with step,lambda,ess,accept_rate,M,log_z");
  }
  const std::size_t dim = (header.size() - fixed.size()) / 2;

  LadderTrace trace;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim_cr(line);
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw InvalidInputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(f.size()));
    }
    LadderStep s;
    s.step = parse_count(f[0], line_no);
    s.lambda = parse_double(f[1], line_no);
    s.ess = parse_double(f[2], line_no);
    s.accept_rate = parse_double(f[3], line_no);
    s.replicates = parse_count(f[4], line_no);
    s.log_z = parse_double(f[5], line_no);
    s.theta_mean.resize(static_cast<Eigen::Index>(dim));
    s.theta_sd.resize(static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      s.theta_mean[static_cast<Eigen::Index>(j)] = parse_double(f[6 + j], line_no);
      s.theta_sd[static_cast<Eigen::Index>(j)] = parse_double(f[6 + dim + j], line_no);
    }
    if (!trace.steps.empty() && !(s.lambda > trace.steps.back().lambda)) {
      throw InvalidInputError("line " + std::to_string(line_no) + ": lambda must increase strictly");
    }
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

void write_bound_csv(std::ostream& os, std::span<const BoundReport> reports, std::span<const std::string> labels) {
  if (!labels.empty() && labels.size() != reports.size()) throw InvalidInputError("one label per bound report");
  if (!labels.empty()) os << "row,";
  os << "lambda,beta,value";
  if (!reports.empty()) {
    for (const auto& c : reports.front().components) os << ',' << c.name;
  }
  os << ",provenance\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    if (r.components.size() != reports.front().components.size()) {
      throw InvalidInputError("bound reports in one table must share their components");
    }
    if (!labels.empty()) os << labels[i] << ',';
    os << format_double(r.lambda) << ',' << (r.beta ? format_double(*r.beta) : std::string()) << ','
       << format_double(r.value);
    for (const auto& c : r.components) os << ',' << format_double(c.value);
    os << ',' << r.provenance << '\n';
  }
}

void write_components_csv(std::ostream& os, std::span<const BoundComponent> components) {
  os << "name,value\n";
  for (const auto& c : components) os << c.name << ',' << format_double(c.value) << '\n';
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace abcpac
