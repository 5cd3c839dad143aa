// Copyright 2026 The gatesynth Authors
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

#include "gatesynth/io.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gatesynth {

namespace {

double parse_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string unquote(std::string_view s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    out += s[i];
    if (s[i] == '"') ++i;  // "" -> "
  }
  return out;
}

// Square N x N block of complex entries preceded by N on its own line.
Eigen::MatrixXcd read_square(std::istream& in, const char* what) {
  long long n = 0;
  if (!(in >> n) || n < 1) throw std::invalid_argument(std::string(what) + ": bad size line");
  Eigen::MatrixXcd m(n, n);
  std::string token;
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < n; ++j) {
      if (!(in >> token)) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n * n) +
                                    " entries");
      }
      m(i, j) = parse_complex(token);
    }
  }
  if (in >> token) throw std::invalid_argument(std::string(what) + ": trailing data '" + token + "'");
  return m;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::complex<double> parse_complex(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return {parse_double(s), 0.0};

  const std::string_view body(s.data(), s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](std::string_view t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {parse_double(body.substr(0, split)), imag_part(body.substr(split))};
}

std::string format_complex(std::complex<double> z) {
  const std::string im = format_double(z.imag());
  return format_double(z.real()) + (std::signbit(z.imag()) ? "" : "+") + im + "i";
}

Eigen::MatrixXcd read_matrix(std::istream& in) { return read_square(in, "matrix file"); }

Eigen::MatrixXcd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_complex(m(i, j));
    out << '\n';
  }
}

Kernel KernelGrid::as_kernel() const {
  const Eigen::MatrixXcd grid = samples;
  return [grid](double x, double y) {
    const auto m = grid.rows();
    auto snap = [m](double u) {
      const auto k = static_cast<Eigen::Index>(std::llround(u * static_cast<double>(m)));
      return std::clamp<Eigen::Index>(k, 0, m - 1);
    };
    return grid(snap(x), snap(y));
  };
}

KernelGrid read_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open kernel file '" + path + "'");
  return {read_square(in, "kernel file")};
}

void write_report_csv(std::ostream& out, const SynthesisReport& r) {
  auto row = [&out](const std::string& key, const std::string& value) {
    out << key << ',' << value << '\n';
  };
  out << "key,value\n";
  row("n_levels", std::to_string(r.n_levels));
  row("n_modes", std::to_string(r.n_modes));
  row("n_steps", std::to_string(r.n_steps));
  row("horizon", format_double(r.horizon));
  row("energy_budget", format_double(r.energy_budget));
  row("epsilon", format_double(r.epsilon));
  row("status", to_string(r.status));
  row("converged", r.converged ? "1" : "0");
  row("hard_case", r.hard_case ? "1" : "0");
  row("target_non_unitary", r.target_non_unitary ? "1" : "0");
  row("iterations", std::to_string(r.iterations));
  row("lambda", format_double(r.lambda_opt));
  row("residual_norm2", format_double(r.residual_norm2));
  row("predicted_error", format_double(r.predicted_error));
  row("truncated_dyson_error", format_double(r.truncated_dyson_error));
  row("verified_nser_opt", format_double(r.verified_nser_opt));
  row("verified_nser_zero", format_double(r.verified_nser_zero));
  row("constraint_residual", format_double(r.constraint_residual));
  row("stationarity", format_double(r.stationarity));
  for (Eigen::Index i = 0; i < r.v_opt.size(); ++i)
    row("v_opt[" + std::to_string(i) + "]", format_double(r.v_opt(i)));
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const std::string k = "trace[" + std::to_string(i) + "].";
    row(k + "lambda", format_double(r.trace[i].lambda));
    row(k + "constraint_residual", format_double(r.trace[i].constraint_residual));
    row(k + "objective", format_double(r.trace[i].objective));
  }
  for (std::size_t i = 0; i < r.warnings.size(); ++i)
    row("warning[" + std::to_string(i) + "]", quote(r.warnings[i]));
}

SynthesisReport read_report_csv(std::istream& in) {
  SynthesisReport r;
  std::string line;
  if (!std::getline(in, line) || strip(line) != "key,value") {
    throw std::invalid_argument("report: missing key,value header");
  }
  std::vector<double> v;
  std::vector<IterationRecord> trace;
  std::vector<std::string> warnings;

  // "name[i]suffix" -> (name, i, suffix)
  auto indexed = [](const std::string& key, std::string& name, std::size_t& index,
                    std::string& suffix) {
    const auto open = key.find('[');
    const auto close = key.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open) return false;
    name = key.substr(0, open);
    index = static_cast<std::size_t>(parse_integer(key.substr(open + 1, close - open - 1)));
    suffix = key.substr(close + 1);
    return true;
  };
  auto put = [](auto& vec, std::size_t i) -> auto& {
    if (vec.size() <= i) vec.resize(i + 1);
    return vec[i];
  };

  while (std::getline(in, line)) {
    if (strip(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("report: malformed row '" + line + "'");
    const std::string key = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    std::string name, suffix;
    std::size_t i = 0;
    if (indexed(key, name, i, suffix)) {
      if (name == "v_opt") {
        put(v, i) = parse_double(value);
      } else if (name == "trace" && suffix == ".lambda") {
        put(trace, i).lambda = parse_double(value);
      } else if (name == "trace" && suffix == ".constraint_residual") {
        put(trace, i).constraint_residual = parse_double(value);
      } else if (name == "trace" && suffix == ".objective") {
        put(trace, i).objective = parse_double(value);
      } else if (name == "warning") {
        put(warnings, i) = unquote(value);
      } else {
        throw std::invalid_argument("report: unknown key '" + key + "'");
      }
      continue;
    }
    if (key == "n_levels") r.n_levels = static_cast<int>(parse_integer(value));
    else if (key == "n_modes") r.n_modes = static_cast<int>(parse_integer(value));
    else if (key == "n_steps") r.n_steps = static_cast<int>(parse_integer(value));
    else if (key == "horizon") r.horizon = parse_double(value);
    else if (key == "energy_budget") r.energy_budget = parse_double(value);
    else if (key == "epsilon") r.epsilon = parse_double(value);
    else if (key == "status") {
      if (value == "converged") r.status = SolverStatus::kConverged;
      else if (value == "max_iterations") r.status = SolverStatus::kMaxIterations;
      else if (value == "degenerate_target") r.status = SolverStatus::kDegenerateTarget;
      else throw std::invalid_argument("report: unknown status '" + value + "'");
    }
    else if (key == "converged") r.converged = parse_integer(value) != 0;
    else if (key == "hard_case") r.hard_case = parse_integer(value) != 0;
    else if (key == "target_non_unitary") r.target_non_unitary = parse_integer(value) != 0;
    else if (key == "iterations") r.iterations = static_cast<int>(parse_integer(value));
    else if (key == "lambda") r.lambda_opt = parse_double(value);
    else if (key == "residual_norm2") r.residual_norm2 = parse_double(value);
    else if (key == "predicted_error") r.predicted_error = parse_double(value);
    else if (key == "truncated_dyson_error") r.truncated_dyson_error = parse_double(value);
    else if (key == "verified_nser_opt") r.verified_nser_opt = parse_double(value);
    else if (key == "verified_nser_zero") r.verified_nser_zero = parse_double(value);
    else if (key == "constraint_residual") r.constraint_residual = parse_double(value);
    else if (key == "stationarity") r.stationarity = parse_double(value);
    else throw std::invalid_argument("report: unknown key '" + key + "'");
  }
  r.v_opt = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  r.trace = std::move(trace);
  r.warnings = std::move(warnings);
  return r;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "T,predicted_error,verified_nser_opt,verified_nser_zero,lambda,iterations,converged,"
         "status\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.horizon) << ',' << format_double(row.predicted_error) << ','
        << format_double(row.verified_nser_opt) << ',' << format_double(row.verified_nser_zero)
        << ',' << format_double(row.lambda) << ',' << row.iterations << ','
        << (row.converged ? 1 : 0) << ',' << quote(row.status) << '\n';
  }
}

void write_potential_csv(std::ostream& out, const ControlField& field) {
  const DesignGrid& grid = field.grid();
  for (int r = 0; r < grid.n_steps(); ++r) out << (r ? "," : "") << "r" << r;
  out << '\n';
  for (int p = 1; p <= grid.n_modes(); ++p) {
    for (int r = 0; r < grid.n_steps(); ++r) out << (r ? "," : "") << format_double(field(p, r));
    out << '\n';
  }
}

void apply_config_file(const std::string& path, SweepConfig& sweep) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  if (root.IsNull()) return;
  if (!root.IsMap()) throw std::invalid_argument("config '" + path + "': expected a mapping");

  RunConfig& run = sweep.base;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& value = kv.second;
    try {
      if (key == "n_levels") run.n_levels = value.as<int>();
      else if (key == "n_modes") run.n_modes = value.as<int>();
      else if (key == "n_steps") run.n_steps = value.as<int>();
      else if (key == "horizon") run.horizon = value.as<double>();
      else if (key == "energy") run.energy_budget = value.as<double>();
      else if (key == "epsilon") run.epsilon = value.as<double>();
      else if (key == "alpha") run.alpha = value.as<std::vector<double>>();
      else if (key == "target") {
        const std::string kind = value.as<std::string>();
        if (kind == "dft") run.target.kind = TargetSpec::Kind::kDft;
        else if (kind == "matrix") run.target.kind = TargetSpec::Kind::kMatrixFile;
        else if (kind == "kernel") run.target.kind = TargetSpec::Kind::kKernelFile;
        else throw std::invalid_argument("target must be dft, matrix or kernel");
      }
      else if (key == "target_file") run.target.path = value.as<std::string>();
      else if (key == "quadrature_points") run.target.quadrature_points = value.as<int>();
      else if (key == "kernel_normalization") {
        const std::string norm = value.as<std::string>();
        if (norm == "paper") run.target.normalization = KernelNormalization::kPaperDiscrete;
        else if (norm == "orthonormal") run.target.normalization = KernelNormalization::kOrthonormal;
        else throw std::invalid_argument("kernel_normalization must be paper or orthonormal");
      }
      else if (key == "substeps") run.substeps = value.as<int>();
      else if (key == "lambda0") run.solver.lambda0 = value.as<double>();
      else if (key == "max_iters") run.solver.max_iters = value.as<int>();
      else if (key == "tol_v") run.solver.tol_v = value.as<double>();
      else if (key == "tol_constraint") run.solver.tol_constraint = value.as<double>();
      else if (key == "t_min") sweep.t_min = value.as<double>();
      else if (key == "t_max") sweep.t_max = value.as<double>();
      else if (key == "points") sweep.points = value.as<int>();
      else throw std::invalid_argument("unknown key");
    } catch (const YAML::Exception& e) {
      throw std::invalid_argument("config '" + path + "': bad value for '" + key + "': " + e.what());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config '" + path + "': key '" + key + "': " + e.what());
    }
  }
}

}  // namespace gatesynth
