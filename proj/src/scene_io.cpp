#include "linkcurv/scene_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace linkcurv {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SceneError(where + ": " + what);
}

void check_keys(const ordered_json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail(where, "unknown key '" + item.key() + "'");
}

double get_number(const ordered_json& obj, const std::string& where) {
  if (!obj.is_number()) fail(where, "expected a number");
  return obj.get<double>();
}

std::vector<double> get_number_list(const ordered_json& obj,
                                    const std::string& where) {
  if (!obj.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(obj.size());
  for (size_t i = 0; i < obj.size(); ++i)
    out.push_back(get_number(obj[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Point4 get_point4(const ordered_json& obj, const std::string& where) {
  const auto v = get_number_list(obj, where);
  if (v.size() != 4) fail(where, "expected exactly 4 numbers");
  return {v[0], v[1], v[2], v[3]};
}

FourierCoord parse_coord(const ordered_json& obj, const std::string& where) {
  check_keys(obj, where, {"a0", "cos", "sin"});
  FourierCoord c;
  if (obj.contains("a0")) c.a0 = get_number(obj["a0"], where + ".a0");
  if (obj.contains("cos")) c.cos_c = get_number_list(obj["cos"], where + ".cos");
  if (obj.contains("sin")) c.sin_c = get_number_list(obj["sin"], where + ".sin");
  return c;
}

Loop parse_loop(const ordered_json& obj, const std::string& where) {
  check_keys(obj, where, {"name", "role", "orientation", "color", "coeffs"});
  Loop lp;
  if (!obj.contains("name") || !obj["name"].is_string())
    fail(where, "every loop needs a string 'name'");
  lp.name = obj["name"].get<std::string>();
  if (!obj.contains("role") || !obj["role"].is_string())
    fail(where, "every loop needs role 'matter' or 'geometric'");
  const std::string role = obj["role"].get<std::string>();
  if (role == "matter")
    lp.role = LoopRole::matter;
  else if (role == "geometric")
    lp.role = LoopRole::geometric;
  else
    fail(where + ".role", "must be 'matter' or 'geometric'");
  if (obj.contains("orientation")) {
    if (!obj["orientation"].is_number_integer())
      fail(where + ".orientation", "must be +1 or -1");
    lp.orientation = obj["orientation"].get<int>();
    if (lp.orientation != 1 && lp.orientation != -1)
      fail(where + ".orientation", "must be +1 or -1");
  }
  if (obj.contains("color")) {
    if (lp.role != LoopRole::matter)
      fail(where + ".color", "only matter loops carry a color");
    check_keys(obj["color"], where + ".color", {"j_plus", "j_minus"});
    if (!obj["color"].contains("j_plus") || !obj["color"].contains("j_minus"))
      fail(where + ".color", "needs both j_plus and j_minus");
    for (const char* key : {"j_plus", "j_minus"}) {
      const auto& jv = obj["color"][key];
      if (!jv.is_string())
        fail(where + ".color." + key, "half-integers are strings like \"1/2\"");
      const int x2 = parse_half_integer(jv.get<std::string>());
      (key[2] == 'p' ? lp.color.jplus_x2 : lp.color.jminus_x2) = x2;
    }
    lp.colored = true;
  }
  if (!obj.contains("coeffs")) fail(where, "every loop needs 'coeffs'");
  check_keys(obj["coeffs"], where + ".coeffs", {"x0", "x1", "x2", "x3"});
  const char* names[4] = {"x0", "x1", "x2", "x3"};
  for (int a = 0; a < 4; ++a) {
    if (!obj["coeffs"].contains(names[a]))
      fail(where + ".coeffs", std::string("missing ") + names[a]);
    lp.coord[a] =
        parse_coord(obj["coeffs"][names[a]], where + ".coeffs." + names[a]);
  }
  return lp;
}

Patch parse_surface(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string())
    fail(where, "every surface needs kind 'disk' or 'param'");
  const std::string kind = obj["kind"].get<std::string>();
  Patch p;
  if (!obj.contains("name") || !obj["name"].is_string())
    fail(where, "every surface needs a string 'name'");
  p.name = obj["name"].get<std::string>();
  if (obj.contains("orientation")) {
    if (!obj["orientation"].is_number_integer())
      fail(where + ".orientation", "must be +1 or -1");
    p.orientation = obj["orientation"].get<int>();
    if (p.orientation != 1 && p.orientation != -1)
      fail(where + ".orientation", "must be +1 or -1");
  }
  if (obj.contains("domain")) {
    const auto d = get_number_list(obj["domain"], where + ".domain");
    if (d.size() != 4) fail(where + ".domain", "expected [t0, t1, tb0, tb1]");
    p.t0 = d[0];
    p.t1 = d[1];
    p.tb0 = d[2];
    p.tb1 = d[3];
    if (!(p.t0 < p.t1) || !(p.tb0 < p.tb1) || p.t0 < 0 || p.t1 > 1 ||
        p.tb0 < 0 || p.tb1 > 1)
      fail(where + ".domain", "needs 0 <= t0 < t1 <= 1 and 0 <= tb0 < tb1 <= 1");
  }
  if (kind == "disk") {
    check_keys(obj, where,
               {"kind", "name", "orientation", "domain", "center", "span_u",
                "span_v", "radius"});
    DiskShape d;
    if (!obj.contains("center") || !obj.contains("span_u") ||
        !obj.contains("span_v"))
      fail(where, "disk needs center, span_u, span_v");
    d.center = get_point4(obj["center"], where + ".center");
    d.span_u = get_point4(obj["span_u"], where + ".span_u");
    d.span_v = get_point4(obj["span_v"], where + ".span_v");
    if (obj.contains("radius")) {
      d.radius = get_number(obj["radius"], where + ".radius");
      if (!(d.radius > 0)) fail(where + ".radius", "must be positive");
    }
    p.shape = d;
  } else if (kind == "param") {
    check_keys(obj, where,
               {"kind", "name", "orientation", "domain", "deg_t", "deg_tb",
                "coeffs"});
    ParamShape ps;
    if (!obj.contains("deg_t") || !obj.contains("deg_tb") ||
        !obj["deg_t"].is_number_integer() || !obj["deg_tb"].is_number_integer())
      fail(where, "param needs integer deg_t and deg_tb");
    ps.deg_t = obj["deg_t"].get<int>();
    ps.deg_tb = obj["deg_tb"].get<int>();
    if (ps.deg_t < 0 || ps.deg_tb < 0 || ps.deg_t > 16 || ps.deg_tb > 16)
      fail(where, "degrees must lie in [0, 16]");
    if (!obj.contains("coeffs")) fail(where, "param needs 'coeffs'");
    check_keys(obj["coeffs"], where + ".coeffs", {"x0", "x1", "x2", "x3"});
    const char* names[4] = {"x0", "x1", "x2", "x3"};
    const size_t rows = static_cast<size_t>(ps.deg_t) + 1;
    const size_t cols = static_cast<size_t>(ps.deg_tb) + 1;
    for (int a = 0; a < 4; ++a) {
      const std::string cw = where + ".coeffs." + names[a];
      if (!obj["coeffs"].contains(names[a])) fail(cw, "missing");
      const auto& m = obj["coeffs"][names[a]];
      if (!m.is_array() || m.size() != rows)
        fail(cw, "expected " + std::to_string(rows) + " rows");
      ps.coeffs[a].reserve(rows * cols);
      for (size_t r = 0; r < rows; ++r) {
        const auto row =
            get_number_list(m[r], cw + "[" + std::to_string(r) + "]");
        if (row.size() != cols)
          fail(cw + "[" + std::to_string(r) + "]",
               "expected " + std::to_string(cols) + " columns");
        for (double v : row) ps.coeffs[a].push_back(v);
      }
    }
    p.shape = ps;
  } else {
    fail(where + ".kind", "must be 'disk' or 'param'");
  }
  return p;
}

std::string describe(const TimelikeViolation& v, const Scene& scene) {
  const auto name = [&](int idx) -> std::string {
    if (idx >= 0 && idx < static_cast<int>(scene.loops.size()))
      return "'" + scene.loops[idx].name + "'";
    return "#" + std::to_string(idx);
  };
  std::ostringstream os;
  os << v.what << " (loops " << name(v.loop_a) << "," << name(v.loop_b)
     << " at s=" << v.s_a << "," << v.s_b << ")";
  return os.str();
}

ordered_json coord_json(const FourierCoord& c) {
  ordered_json o = ordered_json::object();
  o["a0"] = c.a0;
  if (!c.cos_c.empty()) o["cos"] = c.cos_c;
  if (!c.sin_c.empty()) o["sin"] = c.sin_c;
  return o;
}

}  // namespace

std::string format_half_integer(int x2) {
  if (x2 % 2 == 0) return std::to_string(x2 / 2);
  return std::to_string(x2) + "/2";
}

int parse_half_integer(const std::string& s) {
  size_t pos = 0;
  int num = 0;
  try {
    num = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw SceneError("bad half-integer '" + s + "'");
  }
  int x2 = 0;
  if (pos == s.size())
    x2 = 2 * num;
  else if (s.substr(pos) == "/2")
    x2 = num;
  else
    throw SceneError("bad half-integer '" + s + "'");
  if (x2 < 0 || x2 > kMaxJx2)
    throw SceneError("representation label '" + s + "' outside [0, " +
                     format_half_integer(kMaxJx2) + "]");
  return x2;
}

Scene parse_scene_text(const std::string& text, bool check_timelike) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SceneError(std::string("scene is not valid JSON: ") + e.what());
  }
  check_keys(root, "scene", {"loops", "surfaces", "charge"});
  Scene scene;
  if (root.contains("charge"))
    scene.charge = get_number(root["charge"], "scene.charge");
  if (!root.contains("loops") || !root["loops"].is_array())
    fail("scene", "needs a 'loops' array");
  std::set<std::string> names;
  for (size_t i = 0; i < root["loops"].size(); ++i) {
    Loop lp =
        parse_loop(root["loops"][i], "loops[" + std::to_string(i) + "]");
    if (!names.insert(lp.name).second)
      fail("loops[" + std::to_string(i) + "]",
           "duplicate loop name '" + lp.name + "'");
    scene.loops.push_back(std::move(lp));
  }
  if (root.contains("surfaces")) {
    if (!root["surfaces"].is_array()) fail("scene.surfaces", "expected an array");
    std::set<std::string> snames;
    for (size_t i = 0; i < root["surfaces"].size(); ++i) {
      Patch p = parse_surface(root["surfaces"][i],
                              "surfaces[" + std::to_string(i) + "]");
      if (!snames.insert(p.name).second)
        fail("surfaces[" + std::to_string(i) + "]",
             "duplicate surface name '" + p.name + "'");
      scene.surface.patches.push_back(std::move(p));
    }
  }
  if (check_timelike) {
    const auto violations = validate_timelike(scene);
    if (!violations.empty())
      fail("scene",
           "time-likeness violated: " + describe(violations.front(), scene));
  }
  return scene;
}

Scene load_scene(const std::string& path, bool check_timelike) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str(), check_timelike);
}

std::string serialize_scene(const Scene& scene) {
  ordered_json root = ordered_json::object();
  root["charge"] = scene.charge;
  root["loops"] = ordered_json::array();
  for (const Loop& lp : scene.loops) {
    ordered_json o = ordered_json::object();
    o["name"] = lp.name;
    o["role"] = lp.role == LoopRole::matter ? "matter" : "geometric";
    o["orientation"] = lp.orientation;
    if (lp.colored) {
      ordered_json c = ordered_json::object();
      c["j_plus"] = format_half_integer(lp.color.jplus_x2);
      c["j_minus"] = format_half_integer(lp.color.jminus_x2);
      o["color"] = c;
    }
    ordered_json coeffs = ordered_json::object();
    const char* names[4] = {"x0", "x1", "x2", "x3"};
    for (int a = 0; a < 4; ++a) coeffs[names[a]] = coord_json(lp.coord[a]);
    o["coeffs"] = coeffs;
    root["loops"].push_back(o);
  }
  root["surfaces"] = ordered_json::array();
  for (const Patch& p : scene.surface.patches) {
    ordered_json o = ordered_json::object();
    o["kind"] = std::holds_alternative<DiskShape>(p.shape) ? "disk" : "param";
    o["name"] = p.name;
    o["orientation"] = p.orientation;
    o["domain"] = {p.t0, p.t1, p.tb0, p.tb1};
    if (const DiskShape* d = std::get_if<DiskShape>(&p.shape)) {
      o["center"] = d->center;
      o["span_u"] = d->span_u;
      o["span_v"] = d->span_v;
      o["radius"] = d->radius;
    } else {
      const ParamShape& ps = std::get<ParamShape>(p.shape);
      o["deg_t"] = ps.deg_t;
      o["deg_tb"] = ps.deg_tb;
      ordered_json coeffs = ordered_json::object();
      const char* names[4] = {"x0", "x1", "x2", "x3"};
      const size_t cols = static_cast<size_t>(ps.deg_tb) + 1;
      for (int a = 0; a < 4; ++a) {
        ordered_json rows = ordered_json::array();
        for (int r = 0; r <= ps.deg_t; ++r) {
          ordered_json row = ordered_json::array();
          for (size_t c = 0; c < cols; ++c)
            row.push_back(ps.coeffs[a][r * cols + c]);
          rows.push_back(row);
        }
        coeffs[names[a]] = rows;
      }
      o["coeffs"] = coeffs;
    }
    root["surfaces"].push_back(o);
  }
  return root.dump(2) + "\n";
}

namespace {

const char* kComponentNames[3] = {"A1", "A2", "A3"};
const char* kSlotNames[6] = {"01", "02", "03", "23", "31", "12"};

GaussTerm parse_term(const ordered_json& obj, const std::string& where) {
  check_keys(obj, where, {"coeff", "powers", "center", "width"});
  GaussTerm t;
  if (!obj.contains("coeff")) fail(where, "term needs 'coeff'");
  t.coeff = get_number(obj["coeff"], where + ".coeff");
  if (obj.contains("powers")) {
    const auto v = get_number_list(obj["powers"], where + ".powers");
    if (v.size() != 4) fail(where + ".powers", "expected 4 exponents");
    for (int a = 0; a < 4; ++a) {
      const int p = static_cast<int>(v[a]);
      if (p < 0 || p != v[a] || p > 8)
        fail(where + ".powers", "exponents must be integers in [0, 8]");
      t.powers[a] = p;
    }
  }
  if (obj.contains("center")) t.center = get_point4(obj["center"], where + ".center");
  if (obj.contains("width")) t.width = get_number(obj["width"], where + ".width");
  return t;
}

}  // namespace

ConnectionField parse_connection_text(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SceneError(std::string("connection is not valid JSON: ") + e.what());
  }
  check_keys(root, "connection", {"use_finite_differences", "components"});
  ConnectionField w;
  if (root.contains("use_finite_differences")) {
    if (!root["use_finite_differences"].is_boolean())
      fail("connection.use_finite_differences", "expected a boolean");
    w.use_finite_differences = root["use_finite_differences"].get<bool>();
  }
  if (!root.contains("components")) return w;  // the zero connection
  check_keys(root["components"], "connection.components",
             {kComponentNames[0], kComponentNames[1], kComponentNames[2]});
  for (int i = 0; i < 3; ++i) {
    if (!root["components"].contains(kComponentNames[i])) continue;
    const auto& comp = root["components"][kComponentNames[i]];
    const std::string cw = std::string("connection.components.") + kComponentNames[i];
    check_keys(comp, cw,
               {kSlotNames[0], kSlotNames[1], kSlotNames[2], kSlotNames[3],
                kSlotNames[4], kSlotNames[5]});
    for (int s = 0; s < 6; ++s) {
      if (!comp.contains(kSlotNames[s])) continue;
      const auto& arr = comp[kSlotNames[s]];
      const std::string sw = cw + "." + kSlotNames[s];
      if (!arr.is_array()) fail(sw, "expected an array of terms");
      for (size_t t = 0; t < arr.size(); ++t)
        w.comp[i][s].terms.push_back(
            parse_term(arr[t], sw + "[" + std::to_string(t) + "]"));
    }
  }
  return w;
}

ConnectionField load_connection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open connection file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_connection_text(ss.str());
}

std::string serialize_connection(const ConnectionField& w) {
  ordered_json root = ordered_json::object();
  root["use_finite_differences"] = w.use_finite_differences;
  ordered_json comps = ordered_json::object();
  for (int i = 0; i < 3; ++i) {
    ordered_json comp = ordered_json::object();
    for (int s = 0; s < 6; ++s) {
      if (w.comp[i][s].terms.empty()) continue;
      ordered_json arr = ordered_json::array();
      for (const GaussTerm& t : w.comp[i][s].terms) {
        ordered_json o = ordered_json::object();
        o["coeff"] = t.coeff;
        o["powers"] = t.powers;
        o["center"] = t.center;
        o["width"] = t.width;
        arr.push_back(o);
      }
      comp[kSlotNames[s]] = arr;
    }
    if (!comp.empty()) comps[kComponentNames[i]] = comp;
  }
  root["components"] = comps;
  return root.dump(2) + "\n";
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fmt_kappa(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void write_convergence_csv(const ConvergenceTable& table,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SceneError("cannot write '" + path + "'");
  out << "kappa,term,re_value,im_value,err_est,re_ref,im_ref,abs_err\n";
  for (const ConvergenceRow& r : table.rows)
    out << fmt_kappa(r.kappa) << ',' << r.term << ',' << fmt(r.value.real())
        << ',' << fmt(r.value.imag()) << ',' << fmt(r.error_estimate) << ','
        << fmt(r.reference.real()) << ',' << fmt(r.reference.imag()) << ','
        << fmt(r.abs_error) << '\n';
}

void write_plot_csv(const ConvergenceTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SceneError("cannot write '" + path + "'");
  std::vector<std::string> terms;
  std::vector<double> kappas;
  for (const ConvergenceRow& r : table.rows) {
    if (std::find(terms.begin(), terms.end(), r.term) == terms.end())
      terms.push_back(r.term);
    if (kappas.empty() || r.kappa != kappas.back()) kappas.push_back(r.kappa);
  }
  out << "kappa";
  for (const auto& t : terms) out << ',' << t;
  out << '\n';
  for (double k : kappas) {
    out << fmt_kappa(k);
    for (const auto& t : terms) {
      double v = 0.0;
      for (const ConvergenceRow& r : table.rows)
        if (r.kappa == k && r.term == t) v = r.abs_error;
      out << ',' << fmt(v);
    }
    out << '\n';
  }
}

}  // namespace linkcurv
