#include "orthant/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orthant/error.hpp"
#include "orthant/sampling.hpp"

#define TOML_ENABLE_FORMATTERS 0
#include "toml.hpp"

namespace orthant {

namespace {

[[noreturn]] void model_error(const std::string& key, const std::string& message) {
  throw Error(ErrorKind::model, "key `" + key + "`: " + message);
}

std::string indexed(const std::string& key, std::size_t i) { return key + "[" + std::to_string(i + 1) + "]"; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

const toml::array& require_array(const toml::node& node, const std::string& key) {
  const auto* arr = node.as_array();
  if (!arr) model_error(key, "expected an array");
  return *arr;
}

std::vector<std::string> read_strings(const toml::node& node, const std::string& key) {
  std::vector<std::string> out;
  const auto& arr = require_array(node, key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto v = arr[i].value<std::string>();
    if (!arr[i].is_string() || !v) model_error(indexed(key, i), "expected a string");
    out.push_back(*v);
  }
  return out;
}

double read_number(const toml::node& node, const std::string& key) {
  if (!node.is_number()) model_error(key, "expected a number");
  return *node.value<double>();
}

std::vector<double> read_numbers(const toml::node& node, const std::string& key, bool allow_inf) {
  std::vector<double> out;
  const auto& arr = require_array(node, key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (allow_inf && arr[i].is_string()) {
      if (*arr[i].value<std::string>() != "inf") model_error(indexed(key, i), "only the string \"inf\" is accepted");
      out.push_back(kInfinity);
      continue;
    }
    out.push_back(read_number(arr[i], indexed(key, i)));
  }
  return out;
}

void check_keys(const toml::table& table, std::initializer_list<std::string_view> allowed, const std::string& prefix) {
  for (auto&& [k, v] : table) {
    const std::string_view key = k.str();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      model_error(prefix + std::string(key), "unknown key");
    }
  }
}

void validate_diffusion(const std::vector<double>& d, std::size_t n) {
  if (d.size() != n) {
    model_error("d", "dimension mismatch: d has " + std::to_string(d.size()) + " entries but names has " +
                         std::to_string(n));
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i]) || d[i] <= 0.0) {
      model_error(indexed("d", i), "nonpositive diffusion coefficient at index " + std::to_string(i + 1));
    }
  }
}

ModelSpec build_model(std::vector<std::string> names, const std::vector<std::string>& sources) {
  if (names.empty()) model_error("names", "at least one variable is required");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!is_valid_variable_name(names[i])) model_error(indexed("names", i), "invalid variable name `" + names[i] + "`");
    for (std::size_t j = 0; j < i; ++j) {
      if (names[j] == names[i]) model_error(indexed("names", i), "duplicate variable name `" + names[i] + "`");
    }
  }
  if (sources.size() != names.size()) {
    model_error("f", "dimension mismatch: f has " + std::to_string(sources.size()) + " entries but names has " +
                         std::to_string(names.size()));
  }
  ModelSpec model;
  model.names = std::move(names);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    try {
      model.f.push_back(parse_expression(sources[i], model.names));
    } catch (const Error& e) {
      model_error(indexed("f", i), e.what());
    }
    model.time_dependent = model.time_dependent || model.f.back().references_time();
  }
  return model;
}

}  // namespace

std::string_view to_string(BoundaryCondition bc) noexcept {
  return bc == BoundaryCondition::neumann ? "neumann" : "dirichlet";
}

ModelSpec make_model(std::vector<std::string> names, const std::vector<std::string>& sources,
                     std::optional<std::vector<double>> diffusion) {
  ModelSpec model = build_model(std::move(names), sources);
  if (diffusion) {
    validate_diffusion(*diffusion, model.dimension());
    model.diffusion = std::move(diffusion);
  }
  return model;
}

ModelSpec load_model(std::string_view document) {
  toml::table root;
  try {
    root = toml::parse(document);
  } catch (const toml::parse_error& e) {
    const auto& where = e.source().begin;
    throw Error(ErrorKind::model, "TOML parse error at line " + std::to_string(where.line) + ", column " +
                                      std::to_string(where.column) + ": " + std::string(e.description()));
  }
  check_keys(root, {"names", "f", "d", "rectangle", "pde"}, "");

  const toml::node* names_node = root.get("names");
  const toml::node* f_node = root.get("f");
  if (!names_node) model_error("names", "missing required key");
  if (!f_node) model_error("f", "missing required key");

  ModelSpec model = build_model(read_strings(*names_node, "names"), read_strings(*f_node, "f"));
  const std::size_t n = model.dimension();

  if (const toml::node* d = root.get("d")) {
    auto coeffs = read_numbers(*d, "d", false);
    validate_diffusion(coeffs, n);
    model.diffusion = std::move(coeffs);
  }

  if (const toml::node* r = root.get("rectangle")) {
    const auto* table = r->as_table();
    if (!table) model_error("rectangle", "expected a table");
    check_keys(*table, {"alpha", "beta"}, "rectangle.");
    const toml::node* a = table->get("alpha");
    const toml::node* b = table->get("beta");
    if (!a) model_error("rectangle.alpha", "missing required key");
    if (!b) model_error("rectangle.beta", "missing required key");
    auto alpha = read_numbers(*a, "rectangle.alpha", false);
    auto beta = read_numbers(*b, "rectangle.beta", true);
    if (alpha.size() != n) model_error("rectangle.alpha", "dimension mismatch: expected " + std::to_string(n) + " entries");
    if (beta.size() != n) model_error("rectangle.beta", "dimension mismatch: expected " + std::to_string(n) + " entries");
    try {
      model.rectangle = make_rectangle(std::move(alpha), std::move(beta));
    } catch (const Error& e) {
      model_error("rectangle", e.what());
    }
  }

  if (const toml::node* p = root.get("pde")) {
    const auto* table = p->as_table();
    if (!table) model_error("pde", "expected a table");
    check_keys(*table, {"bc", "length", "cells"}, "pde.");
    PdeSettings settings;
    if (const toml::node* bc = table->get("bc")) {
      const auto s = bc->value<std::string>();
      if (!bc->is_string() || !s) model_error("pde.bc", "expected a string");
      if (*s == "neumann") {
        settings.bc = BoundaryCondition::neumann;
      } else if (*s == "dirichlet") {
        settings.bc = BoundaryCondition::dirichlet;
      } else {
        model_error("pde.bc", "expected \"neumann\" or \"dirichlet\", got \"" + *s + "\"");
      }
    }
    if (const toml::node* len = table->get("length")) {
      settings.length = read_number(*len, "pde.length");
      if (!(settings.length > 0.0) || !std::isfinite(settings.length)) model_error("pde.length", "must be positive");
    }
    if (const toml::node* cells = table->get("cells")) {
      if (!cells->is_integer()) model_error("pde.cells", "expected an integer");
      const auto m = *cells->value<std::int64_t>();
      if (m < 1) model_error("pde.cells", "must be at least 1");
      settings.cells = static_cast<std::size_t>(m);
    }
    model.pde = settings;
  }
  return model;
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string to_model_file(const ModelSpec& model) {
  std::ostringstream out;
  auto string_array = [&](const auto& items, auto&& get) {
    out << '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out << ", ";
      out << '"' << get(items[i]) << '"';
    }
    out << "]\n";
  };
  auto number_array = [&](const std::vector<double>& xs) {
    out << '[';
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out << ", ";
      if (std::isinf(xs[i])) {
        out << "\"inf\"";
      } else {
        out << format_number(xs[i]);
      }
    }
    out << "]\n";
  };
  out << "names = ";
  string_array(model.names, [](const std::string& s) { return s; });
  out << "f = ";
  string_array(model.f, [](const Expression& e) { return e.source(); });
  if (model.diffusion) {
    out << "d = ";
    number_array(*model.diffusion);
  }
  if (model.rectangle) {
    out << "\n[rectangle]\nalpha = ";
    number_array(model.rectangle->alpha);
    out << "beta = ";
    number_array(model.rectangle->beta);
  }
  if (model.pde) {
    out << "\n[pde]\nbc = \"" << to_string(model.pde->bc) << "\"\nlength = " << format_number(model.pde->length)
        << "\ncells = " << model.pde->cells << '\n';
  }
  return out.str();
}

void evaluate_field(const ModelSpec& model, double time, std::span<const double> state,
                    std::span<double> out) noexcept {
  for (std::size_t i = 0; i < model.f.size(); ++i) out[i] = model.f[i].eval(state, time);
}

std::vector<double> evaluate_field(const ModelSpec& model, double time, std::span<const double> state) {
  if (state.size() != model.dimension()) {
    throw Error(ErrorKind::invalid_argument, "state has " + std::to_string(state.size()) +
                                                 " entries, model has " + std::to_string(model.dimension()));
  }
  std::vector<double> out(model.dimension());
  evaluate_field(model, time, state, out);
  return out;
}

LipschitzEstimate estimate_lipschitz(const ModelSpec& model, const Rectangle& box, std::size_t grid_per_axis,
                                     std::size_t random_samples, std::uint64_t seed, double time) {
  const std::size_t n = model.dimension();
  if (box.dimension() != n) throw Error(ErrorKind::invalid_argument, "box dimension does not match model");
  if (!box.bounded()) throw Error(ErrorKind::invalid_argument, "Lipschitz estimation requires a bounded box");
  if (grid_per_axis < 2) throw Error(ErrorKind::invalid_argument, "grid_per_axis must be at least 2");
  double grid_total = std::pow(static_cast<double>(grid_per_axis), static_cast<double>(n));
  if (grid_total > 1e7) throw Error(ErrorKind::invalid_argument, "tensor grid exceeds 1e7 points");

  LipschitzEstimate est;
  est.box = box;
  std::vector<double> x(n), xp(n), fp(n), fm(n);

  auto sample = [&](std::span<const double> point) {
    double worst_row = 0.0;
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-5 * std::max(1.0, std::fabs(point[j]));
      std::copy(point.begin(), point.end(), xp.begin());
      const double hi = point[j] + h;
      const double lo = point[j] - h;
      xp[j] = hi;
      evaluate_field(model, time, xp, fp);
      xp[j] = lo;
      evaluate_field(model, time, xp, fm);
      const double width = hi - lo;
      for (std::size_t i = 0; i < n; ++i) {
        const double dij = (fp[i] - fm[i]) / width;
        if (!std::isfinite(dij)) {
          std::ostringstream where;
          where << '(';
          for (std::size_t k = 0; k < n; ++k) where << (k ? ", " : "") << point[k];
          where << ')';
          throw Error(ErrorKind::numeric, "non-finite Jacobian entry while sampling at " + where.str());
        }
        row[i] += std::fabs(dij);
      }
    }
    for (double r : row) worst_row = std::max(worst_row, r);
    est.M = std::max(est.M, worst_row);
    ++est.samples;
  };

  const auto total = static_cast<std::size_t>(grid_total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = rem % grid_per_axis;
      rem /= grid_per_axis;
      const double frac = static_cast<double>(k) / static_cast<double>(grid_per_axis - 1);
      x[j] = k + 1 == grid_per_axis ? box.beta[j] : box.alpha[j] + frac * (box.beta[j] - box.alpha[j]);
    }
    sample(x);
  }
  for (std::size_t s = 0; s < random_samples; ++s) {
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = box.alpha[j] + counter_uniform(seed, 0x4c495053ULL, s, j) * (box.beta[j] - box.alpha[j]);
    }
    sample(x);
  }
  return est;
}

Rectangle lipschitz_box(std::span<const std::vector<double>> states) {
  if (states.empty()) throw Error(ErrorKind::invalid_argument, "no states to bound");
  const std::size_t n = states.front().size();
  std::vector<double> lo(n, 0.0), hi(n, 0.0);
  for (const auto& s : states) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], s[i]);
      hi[i] = std::max(hi[i], s[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double w = hi[i] - lo[i];
    const double pad = w > 0.0 ? 0.1 * w : 0.1;
    lo[i] -= pad;
    hi[i] += pad;
  }
  return make_rectangle(std::move(lo), std::move(hi));
}

double existence_horizon(double initial_sup_norm, double f0_norm, double lipschitz) {
  if (initial_sup_norm == 0.0 && f0_norm == 0.0 && lipschitz == 0.0) {
    throw Error(ErrorKind::invalid_argument, "existence horizon undefined when all inputs are zero");
  }
  if (!(initial_sup_norm > 0.0)) throw Error(ErrorKind::invalid_argument, "initial sup-norm must be positive");
  if (!(f0_norm >= 0.0) || !(lipschitz >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "norms and Lipschitz constant must be nonnegative");
  }
  const double denom = f0_norm + 2.0 * lipschitz * initial_sup_norm;
  if (!(denom > 0.0)) throw Error(ErrorKind::invalid_argument, "existence horizon undefined: ||F(0)|| + 2LM = 0");
  return initial_sup_norm / denom;
}

}  // namespace orthant
