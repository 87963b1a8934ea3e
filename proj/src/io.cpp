#include "entrates/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entrates/errors.hpp"

namespace entrates::io {

namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map: byte-ordered keys
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

ComplexMatrix matrix_from_parts(const Json& re, const Json* im, std::size_t dim, const char* what) {
  if (!re.is_array() || re.size() != dim) throw ValidationError(std::string(what) + ": expected " + std::to_string(dim) + " rows");
  if (im && (!im->is_array() || im->size() != dim))
    throw ValidationError(std::string(what) + ": imaginary part has wrong row count");
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!re[i].is_array() || re[i].size() != dim) throw ValidationError(std::string(what) + ": ragged real part");
    if (im && (!(*im)[i].is_array() || (*im)[i].size() != dim))
      throw ValidationError(std::string(what) + ": ragged imaginary part");
    for (std::size_t k = 0; k < dim; ++k) {
      const double x = re[i][k].get<double>();
      const double y = im ? (*im)[i][k].get<double>() : 0.0;
      m(i, k) = Complex{x, y};
    }
  }
  return m;
}

Json parts(const ComplexMatrix& m, bool imaginary) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(imaginary ? m(i, k).imag() : m(i, k).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::size_t read_dim(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing key '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) throw ValidationError(std::string("'") + key + "' must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

DensityMatrix density_from_json(const Json& j) {
  try {
    const std::size_t dim = read_dim(j, "dim");
    if (!j.contains("re")) throw ValidationError("missing key 're'");
    const Json* im = j.contains("im") ? &j.at("im") : nullptr;
    return DensityMatrix(matrix_from_parts(j.at("re"), im, dim, "density matrix"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("density matrix: ") + e.what());
  }
}

Json density_to_json(const DensityMatrix& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["re"] = parts(rho.matrix(), false);
  j["im"] = parts(rho.matrix(), true);
  return j;
}

BipartiteState bipartite_from_json(const Json& j) {
  auto rho = density_from_json(j);
  std::size_t da = 0;
  std::size_t db = 0;
  if (j.contains("dim_a") || j.contains("dim_b")) {
    da = read_dim(j, "dim_a");
    db = read_dim(j, "dim_b");
  } else {
    const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rho.dim()))));
    if (root * root != rho.dim())
      throw ValidationError("state dimension " + std::to_string(rho.dim()) + " is not a square; give dim_a and dim_b");
    da = db = root;
  }
  if (da * db != rho.dim()) throw ValidationError("dim_a * dim_b differs from dim");
  return BipartiteState(da, db, std::move(rho));
}

maxcorr::MaxCorrSpec maxcorr_spec_from_json(const Json& j) {
  try {
    const std::size_t dim = read_dim(j, "dim");
    if (!j.contains("a_re")) throw ValidationError("missing key 'a_re'");
    const Json* im = j.contains("a_im") ? &j.at("a_im") : nullptr;
    return maxcorr::MaxCorrSpec(matrix_from_parts(j.at("a_re"), im, dim, "a-matrix"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("a-matrix: ") + e.what());
  }
}

Json maxcorr_spec_to_json(const maxcorr::MaxCorrSpec& spec) {
  Json j;
  j["dim"] = spec.dim();
  j["a_re"] = parts(spec.a_matrix(), false);
  j["a_im"] = parts(spec.a_matrix(), true);
  return j;
}

Json to_json(const measures::MeasureReport& r) {
  Json j;
  j["D"] = optional_number(r.d);
  j["F"] = optional_number(r.f_cost);
  j["D_gamma"] = optional_number(r.d_gamma);
  j["cycle_ratio"] = optional_number(r.cycle_ratio);
  j["flags"] = r.flags;
  return j;
}

Json to_json(const maxcorr::Decomposition& d) {
  Json members = Json::array();
  for (const auto& m : d.members) {
    Json re = Json::array();
    Json im = Json::array();
    for (std::size_t i = 0; i < m.vector.rows(); ++i) {
      re.push_back(m.vector(i, 0).real());
      im.push_back(m.vector(i, 0).imag());
    }
    members.push_back(Json{{"weight", m.weight}, {"re", std::move(re)}, {"im", std::move(im)}});
  }
  return members;
}

Json to_json(const maxcorr::EofResult& r) {
  Json j;
  j["value"] = r.value;
  j["entanglement_cost"] = r.value;
  j["converged"] = r.converged;
  j["restarts_used"] = r.restarts_used;
  j["decomposition"] = to_json(r.best_decomposition);
  return j;
}

Json to_json(const maxcorr::AdditivityReport& r) {
  return Json{{"e1", r.e1}, {"e2", r.e2}, {"gap", r.gap}, {"within_bounds", r.within_bounds}};
}

Json to_json(const rates::CycleBounds& b) {
  Json j{{"lower", optional_number(b.lower)}, {"upper", optional_number(b.upper)}, {"source", rates::to_string(b.source)}};
  if (!b.reason.empty()) j["reason"] = b.reason;
  return j;
}

Json to_json(const rates::RDiffBounds& r) {
  Json j;
  j["f_value"] = optional_number(r.f_value);
  j["holds"] = r.holds;
  j["sign"] = rates::to_string(r.sign);
  j["witness"] = r.witness;
  j["bounds"] = to_json(r.bounds);
  j["rdiff_lower"] = optional_number(r.rdiff_lower);
  j["rdiff_upper"] = optional_number(r.rdiff_upper);
  j["flags"] = r.flags;
  return j;
}

Json to_json(const scans::Fig2Report& r) {
  Json anchors = Json::array();
  for (const auto& a : r.anchors) anchors.push_back(Json{{"p", a.p}, {"rdiff", a.rdiff}, {"note", a.note}});
  return Json{{"q", r.q}, {"anchors", anchors}, {"crossing_p", r.crossing_p}, {"sign_changes", r.sign_changes}};
}

Json scan_metadata(const scans::ScanGrid& grid, const std::string& kind, double step, std::uint64_t seed) {
  Json axes = Json::array();
  for (const auto& a : grid.axes)
    axes.push_back(Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"step", a.step}});
  return Json{{"kind", kind},
              {"axes", axes},
              {"step", step},
              {"tool_version", kToolVersion},
              {"seed", seed},
              {"schema", grid.schema},
              {"rows", grid.rows.size()}};
}

}  // namespace entrates::io
