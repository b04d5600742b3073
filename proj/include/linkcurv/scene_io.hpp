#pragma once
#include <stdexcept>
#include <string>

#include "linkcurv/classical.hpp"
#include "linkcurv/geometry.hpp"
#include "linkcurv/pathintegral.hpp"

namespace linkcurv {

// Parse or validation failure; the message carries the JSON path of the
// offending element and the violated rule (or line/column for syntax errors).
struct SceneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scene files are JSON with top-level keys `loops`, `surfaces`, `charge`.
// Unknown keys anywhere are rejected; colors are written "1/2", "1", "3/2";
// loop names must be unique.  With check_timelike the parsed scene also has
// to pass validate_timelike (violations are reported with parameter pairs).
Scene parse_scene_text(const std::string& text, bool check_timelike = true);
Scene load_scene(const std::string& path, bool check_timelike = true);

// Canonical serialization: fixed key order, shortest round-trip floats;
// parse(serialize(s)) == s and serialize is a fixed point after one pass.
std::string serialize_scene(const Scene&);

std::string format_half_integer(int x2);
int parse_half_integer(const std::string&);  // doubled value

// Connection files for the classical command: JSON with `components`
// ("A1".."A3", slot keys "01","02","03","23","31","12", analytic terms)
// and `use_finite_differences`.
ConnectionField parse_connection_text(const std::string& text);
ConnectionField load_connection(const std::string& path);
std::string serialize_connection(const ConnectionField&);

// kappa,term,re_value,im_value,err_est,re_ref,im_ref,abs_err
void write_convergence_csv(const ConvergenceTable&, const std::string& path);
// kappa column plus one abs_error column per term (log-plot ready)
void write_plot_csv(const ConvergenceTable&, const std::string& path);

}  // namespace linkcurv
