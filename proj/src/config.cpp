// SPDX-License-Identifier: Apache-2.0
//
// wpsn: sum-throughput optimization for IRS-assisted wireless powered sensor networks
// Copyright (C) 2026 The wpsn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "wpsn/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace wpsn {

SystemParams RunConfig::params() const {
  SystemParams p;
  p.n_t = n_t;
  p.n_r = n_r;
  p.k = k;
  p.p0 = dbm_to_watts(p0_dbm);
  p.sigma2 = dbm_to_watts(sigma2_dbm);
  p.eta = eta;
  p.t_total = t_total;
  p.rician_k1 = db_to_linear(rician_k1_db);
  p.pl_ref = db_to_linear(pl_ref_db);
  p.pl_exponents = eps;
  return p;
}

SystemGeometry RunConfig::geometry() const {
  SystemGeometry g = SystemGeometry::standard(k, spacing_l, device_x);
  g.ps_pos = ps;
  g.ap_pos = ap;
  g.irs_pos = irs;
  return g;
}

void RunConfig::validate() const {
  auto fail = [](const std::string &field, const std::string &why) {
    throw ConfigError(field + ": " + why);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  if (n_t < 1) fail("params.n_t", "must be >= 1");
  if (n_r < 1) fail("params.n_r", "must be >= 1");
  if (k < 1) fail("params.k", "must be >= 1");
  if (!finite(p0_dbm)) fail("params.p0_dbm", "must be finite");
  if (!finite(sigma2_dbm)) fail("params.sigma2_dbm", "must be finite");
  if (!(eta > 0.0 && eta <= 1.0)) fail("params.eta", "must lie in (0, 1]");
  if (!(t_total > 0.0) || !finite(t_total)) fail("params.t_total", "must be positive");
  if (!finite(rician_k1_db)) fail("params.rician_k1_db", "must be finite");
  if (!finite(pl_ref_db)) fail("params.pl_ref_db", "must be finite");
  const std::pair<const char *, double> exponents[] = {
      {"params.eps_ps_irs", eps.ps_irs},     {"params.eps_ps_device", eps.ps_device},
      {"params.eps_irs_device", eps.irs_device}, {"params.eps_irs_ap", eps.irs_ap},
      {"params.eps_device_ap", eps.device_ap}};
  for (const auto &[name, value] : exponents)
    if (!(value > 0.0) || !finite(value)) fail(name, "must be positive");
  if (!ps.allFinite()) fail("geometry.ps", "must be finite");
  if (!ap.allFinite()) fail("geometry.ap", "must be finite");
  if (!irs.allFinite()) fail("geometry.irs", "must be finite");
  if (!(spacing_l > 0.0) || !finite(spacing_l)) fail("geometry.spacing_l", "must be positive");
  if (!finite(device_x)) fail("geometry.device_x", "must be finite");
  if (!(solver.tol > 0.0)) fail("solver.tol", "must be positive");
  if (solver.max_iter < 1) fail("solver.max_iter", "must be >= 1");
  if (solver.mm_inner < 1) fail("solver.mm_inner", "must be >= 1");
  if (solver.init != "ones" && solver.init != "random")
    fail("solver.init", "must be 'ones' or 'random'");
  if (!(solver.fta_tau0 > 0.0 && solver.fta_tau0 < 1.0)) fail("solver.fta_tau0", "must lie in (0, 1)");
  if (solver.oracle_phase_levels < 1) fail("solver.oracle_phase_levels", "must be >= 1");
  if (solver.oracle_tau0_grid < 2) fail("solver.oracle_tau0_grid", "must be >= 2");
  if (sweep) {
    if (sweep->trials < 1) fail("sweep.trials", "must be >= 1");
    if (sweep->axis.empty() != sweep->values.empty())
      fail("sweep.values", "axis and values must be given together");
    if (!sweep->axis.empty() &&
        std::find(sweep_axes().begin(), sweep_axes().end(), sweep->axis) == sweep_axes().end())
      fail("sweep.axis", "unknown axis '" + sweep->axis + "'");
  }
  // Positions of every node must be distinct for the path loss to be defined.
  const SystemGeometry g = geometry();
  for (const Vec3 &d : g.device_positions)
    if ((d - ps).norm() == 0.0 || (d - ap).norm() == 0.0 || (d - irs).norm() == 0.0)
      fail("geometry", "a device coincides with the PS, AP or IRS");
  if ((ps - irs).norm() == 0.0 || (ap - irs).norm() == 0.0)
    fail("geometry.irs", "coincides with the PS or AP");
}

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string &field, const std::string &text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  return v;
}

template <typename Int>
Int parse_int(const std::string &field, const std::string &text) {
  const std::string t = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(field + ": expected an integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string &field, const std::string &text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(field + ": expected true or false, got '" + text + "'");
}

Vec3 parse_vec3(const std::string &field, const std::string &text) {
  const auto parts = split_list(text);
  if (parts.size() != 3) throw ConfigError(field + ": expected 'x, y, z', got '" + text + "'");
  return {parse_double(field, parts[0]), parse_double(field, parts[1]), parse_double(field, parts[2])};
}

std::vector<double> parse_doubles(const std::string &field, const std::string &text) {
  std::vector<double> out;
  for (const auto &p : split_list(text)) out.push_back(parse_double(field, p));
  return out;
}

using Setter = std::function<void(RunConfig &, const std::string &field, const std::string &value)>;
using SectionTable = std::map<std::string, Setter>;

template <typename T>
Setter number(T RunConfig::*member) {
  return [member](RunConfig &c, const std::string &f, const std::string &v) {
    if constexpr (std::is_same_v<T, double>)
      c.*member = parse_double(f, v);
    else
      c.*member = parse_int<T>(f, v);
  };
}

template <typename T>
Setter solver_number(T SolverSettings::*member) {
  return [member](RunConfig &c, const std::string &f, const std::string &v) {
    if constexpr (std::is_same_v<T, double>)
      c.solver.*member = parse_double(f, v);
    else
      c.solver.*member = parse_int<T>(f, v);
  };
}

Setter exponent(double PathLossExponents::*member) {
  return [member](RunConfig &c, const std::string &f, const std::string &v) {
    c.eps.*member = parse_double(f, v);
  };
}

Setter position(Vec3 RunConfig::*member) {
  return [member](RunConfig &c, const std::string &f, const std::string &v) {
    c.*member = parse_vec3(f, v);
  };
}

SweepSettings &sweep_of(RunConfig &c) {
  if (!c.sweep) c.sweep.emplace();
  return *c.sweep;
}

const std::map<std::string, SectionTable> &sections() {
  static const std::map<std::string, SectionTable> table = {
      {"params",
       {{"n_t", number(&RunConfig::n_t)},
        {"n_r", number(&RunConfig::n_r)},
        {"k", number(&RunConfig::k)},
        {"p0_dbm", number(&RunConfig::p0_dbm)},
        {"sigma2_dbm", number(&RunConfig::sigma2_dbm)},
        {"eta", number(&RunConfig::eta)},
        {"t_total", number(&RunConfig::t_total)},
        {"rician_k1_db", number(&RunConfig::rician_k1_db)},
        {"pl_ref_db", number(&RunConfig::pl_ref_db)},
        {"eps_ps_irs", exponent(&PathLossExponents::ps_irs)},
        {"eps_ps_device", exponent(&PathLossExponents::ps_device)},
        {"eps_irs_device", exponent(&PathLossExponents::irs_device)},
        {"eps_irs_ap", exponent(&PathLossExponents::irs_ap)},
        {"eps_device_ap", exponent(&PathLossExponents::device_ap)}}},
      {"geometry",
       {{"ps", position(&RunConfig::ps)},
        {"ap", position(&RunConfig::ap)},
        {"irs", position(&RunConfig::irs)},
        {"spacing_l", number(&RunConfig::spacing_l)},
        {"device_x", number(&RunConfig::device_x)}}},
      {"solver",
       {{"tol", solver_number(&SolverSettings::tol)},
        {"max_iter", solver_number(&SolverSettings::max_iter)},
        {"mm_inner", solver_number(&SolverSettings::mm_inner)},
        {"init", [](RunConfig &c, const std::string &, const std::string &v) { c.solver.init = trim(v); }},
        {"init_seed", solver_number(&SolverSettings::init_seed)},
        {"rps_randomize_wit",
         [](RunConfig &c, const std::string &f, const std::string &v) {
           c.solver.rps_randomize_wit = parse_bool(f, v);
         }},
        {"fta_tau0", solver_number(&SolverSettings::fta_tau0)},
        {"oracle_phase_levels", solver_number(&SolverSettings::oracle_phase_levels)},
        {"oracle_tau0_grid", solver_number(&SolverSettings::oracle_tau0_grid)},
        {"oracle_cap", solver_number(&SolverSettings::oracle_cap)}}},
      {"sweep",
       {{"name", [](RunConfig &c, const std::string &, const std::string &v) { sweep_of(c).name = trim(v); }},
        {"axis", [](RunConfig &c, const std::string &, const std::string &v) { sweep_of(c).axis = trim(v); }},
        {"values",
         [](RunConfig &c, const std::string &f, const std::string &v) {
           sweep_of(c).values = parse_doubles(f, v);
         }},
        {"trials",
         [](RunConfig &c, const std::string &f, const std::string &v) {
           sweep_of(c).trials = parse_int<int>(f, v);
         }},
        {"seed0",
         [](RunConfig &c, const std::string &f, const std::string &v) {
           sweep_of(c).seed0 = parse_int<std::uint64_t>(f, v);
         }},
        {"schemes",
         [](RunConfig &c, const std::string &, const std::string &v) {
           sweep_of(c).schemes = split_list(v);
         }}}},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream &in, const std::string &source) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig config;
  for (const auto &[section, entries] : tree) {
    const auto found = sections().find(section);
    if (found == sections().end()) {
      if (entries.empty() && !entries.data().empty())
        throw ConfigError(source + ": key '" + section + "' outside of any section");
      throw ConfigError(source + ": unknown section [" + section + "]");
    }
    if (entries.empty() && !entries.data().empty())
      throw ConfigError(source + ": key '" + section + "' outside of any section");
    if (section == "sweep") sweep_of(config);
    for (const auto &[key, node] : entries) {
      const std::string field = section + "." + key;
      const auto setter = found->second.find(key);
      if (setter == found->second.end())
        throw ConfigError(source + ": unknown key '" + key + "' in [" + section + "]");
      setter->second(config, source + ": " + field, node.data());
    }
  }
  try {
    config.validate();
  } catch (const ConfigError &e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  return parse_config(in, path);
}

namespace {

int integral_axis(const std::string &axis, double value) {
  if (value != std::round(value) || value < 1.0)
    throw ConfigError("sweep axis " + axis + ": value " + std::to_string(value) +
                      " is not a positive integer");
  return static_cast<int>(value);
}

}  // namespace

const std::vector<std::string> &sweep_axes() {
  static const std::vector<std::string> axes = {
      "p0_dbm",     "sigma2_dbm",     "n_t",        "n_r",           "k",
      "eta",        "t_total",        "eps_ps_irs", "eps_ps_device", "eps_irs_device",
      "eps_irs_ap", "eps_device_ap", "irs_x",      "device_x",      "spacing_l"};
  return axes;
}

void apply_axis(RunConfig &c, const std::string &axis, double value) {
  if (axis == "p0_dbm") c.p0_dbm = value;
  else if (axis == "sigma2_dbm") c.sigma2_dbm = value;
  else if (axis == "n_t") c.n_t = integral_axis(axis, value);
  else if (axis == "n_r") c.n_r = integral_axis(axis, value);
  else if (axis == "k") c.k = integral_axis(axis, value);
  else if (axis == "eta") c.eta = value;
  else if (axis == "t_total") c.t_total = value;
  else if (axis == "eps_ps_irs") c.eps.ps_irs = value;
  else if (axis == "eps_ps_device") c.eps.ps_device = value;
  else if (axis == "eps_irs_device") c.eps.irs_device = value;
  else if (axis == "eps_irs_ap") c.eps.irs_ap = value;
  else if (axis == "eps_device_ap") c.eps.device_ap = value;
  else if (axis == "irs_x") c.irs.x() = value;
  else if (axis == "device_x") c.device_x = value;
  else if (axis == "spacing_l") c.spacing_l = value;
  else throw ConfigError("unknown sweep axis '" + axis + "'");
}

namespace {

nlohmann::json vec3_json(const Vec3 &v) { return {v.x(), v.y(), v.z()}; }

Vec3 vec3_from(const nlohmann::json &j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

nlohmann::json to_json(const RunConfig &c) {
  nlohmann::json j;
  j["params"] = {{"n_t", c.n_t},
                 {"n_r", c.n_r},
                 {"k", c.k},
                 {"p0_dbm", c.p0_dbm},
                 {"sigma2_dbm", c.sigma2_dbm},
                 {"eta", c.eta},
                 {"t_total", c.t_total},
                 {"rician_k1_db", c.rician_k1_db},
                 {"pl_ref_db", c.pl_ref_db},
                 {"eps_ps_irs", c.eps.ps_irs},
                 {"eps_ps_device", c.eps.ps_device},
                 {"eps_irs_device", c.eps.irs_device},
                 {"eps_irs_ap", c.eps.irs_ap},
                 {"eps_device_ap", c.eps.device_ap}};
  j["geometry"] = {{"ps", vec3_json(c.ps)},
                   {"ap", vec3_json(c.ap)},
                   {"irs", vec3_json(c.irs)},
                   {"spacing_l", c.spacing_l},
                   {"device_x", c.device_x}};
  const SolverSettings &s = c.solver;
  j["solver"] = {{"tol", s.tol},
                 {"max_iter", s.max_iter},
                 {"mm_inner", s.mm_inner},
                 {"init", s.init},
                 {"init_seed", s.init_seed},
                 {"rps_randomize_wit", s.rps_randomize_wit},
                 {"fta_tau0", s.fta_tau0},
                 {"oracle_phase_levels", s.oracle_phase_levels},
                 {"oracle_tau0_grid", s.oracle_tau0_grid},
                 {"oracle_cap", s.oracle_cap}};
  if (c.sweep)
    j["sweep"] = {{"name", c.sweep->name},     {"axis", c.sweep->axis},
                  {"values", c.sweep->values}, {"trials", c.sweep->trials},
                  {"seed0", c.sweep->seed0},   {"schemes", c.sweep->schemes}};
  return j;
}

RunConfig config_from_json(const nlohmann::json &j) {
  RunConfig c;
  auto get = [](const nlohmann::json &obj, const char *key, auto &target) {
    if (obj.contains(key)) obj.at(key).get_to(target);
  };
  try {
    if (j.contains("params")) {
      const auto &p = j.at("params");
      get(p, "n_t", c.n_t);
      get(p, "n_r", c.n_r);
      get(p, "k", c.k);
      get(p, "p0_dbm", c.p0_dbm);
      get(p, "sigma2_dbm", c.sigma2_dbm);
      get(p, "eta", c.eta);
      get(p, "t_total", c.t_total);
      get(p, "rician_k1_db", c.rician_k1_db);
      get(p, "pl_ref_db", c.pl_ref_db);
      get(p, "eps_ps_irs", c.eps.ps_irs);
      get(p, "eps_ps_device", c.eps.ps_device);
      get(p, "eps_irs_device", c.eps.irs_device);
      get(p, "eps_irs_ap", c.eps.irs_ap);
      get(p, "eps_device_ap", c.eps.device_ap);
    }
    if (j.contains("geometry")) {
      const auto &g = j.at("geometry");
      if (g.contains("ps")) c.ps = vec3_from(g.at("ps"));
      if (g.contains("ap")) c.ap = vec3_from(g.at("ap"));
      if (g.contains("irs")) c.irs = vec3_from(g.at("irs"));
      get(g, "spacing_l", c.spacing_l);
      get(g, "device_x", c.device_x);
    }
    if (j.contains("solver")) {
      const auto &s = j.at("solver");
      get(s, "tol", c.solver.tol);
      get(s, "max_iter", c.solver.max_iter);
      get(s, "mm_inner", c.solver.mm_inner);
      get(s, "init", c.solver.init);
      get(s, "init_seed", c.solver.init_seed);
      get(s, "rps_randomize_wit", c.solver.rps_randomize_wit);
      get(s, "fta_tau0", c.solver.fta_tau0);
      get(s, "oracle_phase_levels", c.solver.oracle_phase_levels);
      get(s, "oracle_tau0_grid", c.solver.oracle_tau0_grid);
      get(s, "oracle_cap", c.solver.oracle_cap);
    }
    if (j.contains("sweep")) {
      const auto &w = j.at("sweep");
      SweepSettings sw;
      get(w, "name", sw.name);
      get(w, "axis", sw.axis);
      get(w, "values", sw.values);
      get(w, "trials", sw.trials);
      get(w, "seed0", sw.seed0);
      get(w, "schemes", sw.schemes);
      c.sweep = sw;
    }
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("config echo: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace wpsn
