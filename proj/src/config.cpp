#include "toricgk/config.hpp"

#include "toricgk/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace toricgk {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Config, "config error at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<double> doubles(const json& j, const std::string& path) {
  std::vector<double> v;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(as_double(a[i], path + "/" + std::to_string(i)));
  return v;
}

Vec as_vec(const json& j, const std::string& path, int expected = -1) {
  auto v = doubles(j, path);
  if (expected >= 0 && static_cast<int>(v.size()) != expected)
    fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Mat as_square(const json& j, const std::string& path, int n) {
  const auto& a = as_array(j, path);
  if (static_cast<int>(a.size()) != n) fail(path, "expected " + std::to_string(n) + " rows");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.row(i) = as_vec(a[i], path + "/" + std::to_string(i), n).transpose();
  return m;
}

DelzantPolytope parse_polytope(const json& j, const std::string& path) {
  int dim = as_int(field(j, path, "dim"), path + "/dim");
  if (dim < 1) fail(path + "/dim", "must be positive");
  const std::string fpath = path + "/facets";
  const auto& fs = as_array(field(j, path, "facets"), fpath);
  std::vector<Facet> facets;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const std::string p = fpath + "/" + std::to_string(k);
    const auto& nj = as_array(field(fs[k], p, "normal"), p + "/normal");
    if (static_cast<int>(nj.size()) != dim) fail(p + "/normal", "length must equal dim");
    Facet f;
    f.normal.resize(dim);
    for (int i = 0; i < dim; ++i) f.normal[i] = as_int(nj[i], p + "/normal/" + std::to_string(i));
    f.offset = as_double(field(fs[k], p, "offset"), p + "/offset");
    facets.push_back(std::move(f));
  }
  try {
    return DelzantPolytope(dim, std::move(facets));
  } catch (const Error& e) {
    throw Error(e.code(), "at " + path + ": " + e.what());
  }
}

PotentialConfig parse_potential(const json& j, const std::string& path, int dim) {
  PotentialConfig pc;
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("canonical")) pc.canonical = as_bool(j["canonical"], path + "/canonical");
  if (j.contains("hessian")) {
    const auto& h = j["hessian"];
    if (!h.is_string() || (h != "analytic" && h != "fd")) fail(path + "/hessian", "expected \"analytic\" or \"fd\"");
    pc.analytic_hessian = h == "analytic";
  }
  if (j.contains("correction")) {
    const std::string cpath = path + "/correction";
    const auto& c = j["correction"];
    if (!c.is_object()) fail(cpath, "expected an object");
    if (c.contains("poly")) {
      const auto& ps = as_array(c["poly"], cpath + "/poly");
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::string p = cpath + "/poly/" + std::to_string(k);
        PolyTerm t;
        t.coef = as_double(field(ps[k], p, "coef"), p + "/coef");
        const auto& pw = as_array(field(ps[k], p, "powers"), p + "/powers");
        if (static_cast<int>(pw.size()) != dim) fail(p + "/powers", "length must equal dim");
        int deg = 0;
        for (std::size_t i = 0; i < pw.size(); ++i) {
          int e = as_int(pw[i], p + "/powers/" + std::to_string(i));
          if (e < 0) fail(p + "/powers/" + std::to_string(i), "negative power");
          t.powers.push_back(e);
          deg += e;
        }
        if (deg > 4) fail(p + "/powers", "total degree exceeds 4");
        pc.poly.push_back(std::move(t));
      }
    }
    if (c.contains("facet_log")) {
      const auto& ls = as_array(c["facet_log"], cpath + "/facet_log");
      for (std::size_t k = 0; k < ls.size(); ++k) {
        const std::string p = cpath + "/facet_log/" + std::to_string(k);
        LogTerm t;
        t.coef = as_double(field(ls[k], p, "coef"), p + "/coef");
        if (ls[k].contains("facet")) {
          t.facet = as_int(ls[k]["facet"], p + "/facet");
          if (t.facet < 0) fail(p + "/facet", "negative index");
        } else {
          t.normal = as_vec(field(ls[k], p, "normal"), p + "/normal", dim);
          t.offset = as_double(field(ls[k], p, "offset"), p + "/offset");
        }
        pc.facet_log.push_back(std::move(t));
      }
    }
  }
  return pc;
}

AntisymmetricMatrix parse_antisym(const json& j, const std::string& path, int n) {
  auto v = doubles(j, path);
  if (v.size() != AntisymmetricMatrix::upper_size(n))
    fail(path, "expected " + std::to_string(AntisymmetricMatrix::upper_size(n)) + " strict upper entries");
  return AntisymmetricMatrix(n, std::move(v));
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("", "expected an object");
  RunConfig cfg;
  int dim = 0;
  if (j.contains("polytope")) {
    cfg.polytope = parse_polytope(j["polytope"], "/polytope");
    dim = cfg.polytope->dim();
  }
  if (j.contains("potential")) {
    if (!cfg.polytope) fail("/potential", "requires /polytope");
    cfg.potential = parse_potential(j["potential"], "/potential", dim);
    for (std::size_t k = 0; k < cfg.potential.facet_log.size(); ++k) {
      if (cfg.potential.facet_log[k].facet >= cfg.polytope->num_facets())
        fail("/potential/correction/facet_log/" + std::to_string(k) + "/facet", "index out of range");
    }
  }
  cfg.C = AntisymmetricMatrix(dim);
  cfg.F = AntisymmetricMatrix(dim);
  if (j.contains("C")) cfg.C = parse_antisym(j["C"], "/C", dim);
  if (j.contains("F")) cfg.F = parse_antisym(j["F"], "/F", dim);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("/seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (g.is_number_integer()) {
      cfg.grid_resolution = as_int(g, "/grid");
    } else {
      if (!g.is_object()) fail("/grid", "expected an integer or an object");
      if (g.contains("resolution")) cfg.grid_resolution = as_int(g["resolution"], "/grid/resolution");
      if (g.contains("margin")) cfg.grid_margin = as_double(g["margin"], "/grid/margin");
    }
    if (cfg.grid_resolution < 1) fail("/grid/resolution", "must be positive");
    if (!(cfg.grid_margin > 0)) fail("/grid/margin", "must be positive");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) fail("/tolerances", "expected an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      const std::string p = "/tolerances/" + it.key();
      double v = as_double(it.value(), p);
      if (!(v > 0)) fail(p, "must be positive");
      try {
        cfg.tol.set(it.key(), v);
      } catch (const Error&) {
        fail(p, "unknown tolerance");
      }
    }
  }
  if (j.contains("lift")) {
    const auto& l = j["lift"];
    if (l.is_string()) {
      if (l != "minimal") fail("/lift", "expected \"minimal\" or {\"explicit\": ...}");
    } else if (l.is_object()) {
      if (!cfg.polytope) fail("/lift", "requires /polytope");
      const int d = cfg.polytope->num_facets();
      cfg.lift.minimal = false;
      Mat fp = as_square(field(l, "/lift", "explicit"), "/lift/explicit", d);
      if ((fp + fp.transpose()).cwiseAbs().maxCoeff() > 0) fail("/lift/explicit", "must be antisymmetric");
      cfg.lift.Fprime = fp;
      if (l.contains("explicit_C")) {
        Mat cp = as_square(l["explicit_C"], "/lift/explicit_C", d);
        if ((cp + cp.transpose()).cwiseAbs().maxCoeff() > 0) fail("/lift/explicit_C", "must be antisymmetric");
        cfg.lift.Cprime = cp;
      }
    } else {
      fail("/lift", "expected \"minimal\" or {\"explicit\": ...}");
    }
  }
  if (j.contains("samples")) {
    cfg.samples = as_int(j["samples"], "/samples");
    if (cfg.samples < 1) fail("/samples", "must be positive");
  }
  if (j.contains("t")) {
    cfg.t_values = doubles(j["t"], "/t");
    if (cfg.t_values.empty()) fail("/t", "must be non-empty");
  }
  if (j.contains("frames")) {
    cfg.frames.clear();
    const auto& fs = as_array(j["frames"], "/frames");
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const std::string p = "/frames/" + std::to_string(k);
      if (!fs[k].is_string()) fail(p, "expected a string");
      try {
        cfg.frames.push_back(frame_from_string(fs[k].get<std::string>()));
      } catch (const Error&) {
        fail(p, "unknown frame");
      }
    }
  }
  if (j.contains("points")) {
    const auto& ps = as_array(j["points"], "/points");
    for (std::size_t k = 0; k < ps.size(); ++k) cfg.points.push_back(as_vec(ps[k], "/points/" + std::to_string(k), dim));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

const DelzantPolytope& require_polytope(const RunConfig& cfg) {
  if (!cfg.polytope) fail("/polytope", "missing field");
  return *cfg.polytope;
}

PotentialModel make_potential(const RunConfig& cfg) {
  PotentialModel m(require_polytope(cfg), cfg.potential.canonical ? 1 : 0, cfg.potential.poly, cfg.potential.facet_log,
                   cfg.potential.analytic_hessian);
  m.set_fd_step(cfg.tol.fd_step);
  return m;
}

GKTriple make_triple(const RunConfig& cfg) { return GKTriple{make_potential(cfg), cfg.C, cfg.F}; }

}  // namespace toricgk
