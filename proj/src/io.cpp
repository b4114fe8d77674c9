#include "ncval/io.hpp"

#include <cmath>
#include <fstream>

namespace ncval {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw std::invalid_argument("matrix row count does not match dim");
  }
  Matrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw std::invalid_argument("matrix column count does not match dim");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

json vector_to_json(const Vector& v) {
  json entries = json::array();
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    entries.push_back(complex_to_json(v[n]));
  }
  return entries;
}

Vector vector_from_json(const json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw std::invalid_argument("vector length does not match dim");
  }
  Vector v(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    v[n] = complex_from_json(j[static_cast<std::size_t>(n)]);
  }
  return v;
}

void require_kind(const json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != kind) {
    throw std::invalid_argument(std::string("document is not of kind '") +
                                kind + "'");
  }
  if (!j.contains("dim") && std::string(kind) != "record") {
    throw std::invalid_argument("document lacks 'dim'");
  }
}

Eigen::Index dim_of(const json& j) {
  if (!j["dim"].is_number_unsigned() && !j["dim"].is_number_integer()) {
    throw std::invalid_argument("'dim' must be an integer");
  }
  const long long dim = j["dim"].get<long long>();
  if (dim < 2 || dim > (1 << 20)) {
    throw std::invalid_argument("'dim' out of range");
  }
  return static_cast<Eigen::Index>(dim);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return json::parse(in);
}

void write_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << j.dump(2) << "\n";
}

}  // namespace

// Adopts already gauge-fixed amplitudes bit-exactly so load(save(x)) == x;
// anything else goes through the normal gauge fixing.
class StateLoader {
 public:
  static ProjectiveState from_amplitudes(Vector v) {
    if (v.size() >= 2 && v.allFinite() &&
        std::abs(v.norm() - 1.0) <= kTolNorm) {
      for (Eigen::Index n = 0; n < v.size(); ++n) {
        const double mag = std::abs(v[n]);
        if (mag > kGaugeEps) {
          if (v[n].imag() == 0.0 && v[n].real() > 0.0) {
            return ProjectiveState(std::move(v),
                                   GaugeConvention::kFirstNonzeroRealPositive);
          }
          break;
        }
      }
    }
    return gauge_fix(v);
  }
};

nlohmann::json to_json(const Operator& a) {
  json j;
  j["kind"] = "operator";
  j["dim"] = a.dim();
  j["entries"] = matrix_to_json(a.matrix());
  return j;
}

nlohmann::json to_json(const ProjectiveState& psi) {
  json j;
  j["kind"] = "state";
  j["dim"] = psi.dim();
  j["amplitudes"] = vector_to_json(psi.amplitudes());
  return j;
}

nlohmann::json to_json(const NCValue& v) {
  json j;
  j["kind"] = "ncvalue";
  j["dim"] = v.dim();
  j["base"] = vector_to_json(v.base().amplitudes());
  j["f"] = complex_to_json(v.f());
  j["grad_z"] = vector_to_json(v.grad_z().transpose());
  j["grad_zbar"] = vector_to_json(v.grad_zbar());
  j["hess"] = matrix_to_json(v.hess());
  return j;
}

nlohmann::json to_json(const MeasurementRecord& record) {
  json j;
  j["kind"] = "record";
  j["observable_id"] = record.observable_id;
  j["eigenvalues"] = record.eigenvalues;
  j["counts"] = record.counts;
  j["shots"] = record.shots;
  j["seed"] = record.seed;
  return j;
}

Operator operator_from_json(const nlohmann::json& j) {
  require_kind(j, "operator");
  if (!j.contains("entries")) {
    throw std::invalid_argument("operator document lacks 'entries'");
  }
  return Operator(matrix_from_json(j["entries"], dim_of(j)));
}

ProjectiveState state_from_json(const nlohmann::json& j) {
  require_kind(j, "state");
  if (!j.contains("amplitudes")) {
    throw std::invalid_argument("state document lacks 'amplitudes'");
  }
  return StateLoader::from_amplitudes(
      vector_from_json(j["amplitudes"], dim_of(j)));
}

NCValue ncvalue_from_json(const nlohmann::json& j) {
  require_kind(j, "ncvalue");
  for (const char* key : {"base", "f", "grad_z", "grad_zbar", "hess"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("ncvalue document lacks '") +
                                  key + "'");
    }
  }
  const Eigen::Index dim = dim_of(j);
  ProjectiveState base =
      StateLoader::from_amplitudes(vector_from_json(j["base"], dim));
  return NCValue(std::move(base), complex_from_json(j["f"]),
                 vector_from_json(j["grad_z"], dim).transpose(),
                 vector_from_json(j["grad_zbar"], dim),
                 matrix_from_json(j["hess"], dim));
}

MeasurementRecord record_from_json(const nlohmann::json& j) {
  require_kind(j, "record");
  for (const char* key : {"observable_id", "eigenvalues", "counts", "shots",
                          "seed"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("record document lacks '") +
                                  key + "'");
    }
  }
  MeasurementRecord record;
  record.observable_id = j["observable_id"].get<std::string>();
  record.eigenvalues = j["eigenvalues"].get<std::vector<double>>();
  record.counts = j["counts"].get<std::vector<std::uint64_t>>();
  record.shots = j["shots"].get<std::uint64_t>();
  record.seed = j["seed"].get<std::uint64_t>();
  if (record.eigenvalues.size() != record.counts.size()) {
    throw std::invalid_argument("eigenvalues and counts lengths differ");
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : record.counts) total += c;
  if (total != record.shots) {
    throw std::invalid_argument("counts do not sum to shots");
  }
  for (std::size_t i = 1; i < record.eigenvalues.size(); ++i) {
    if (!(record.eigenvalues[i] > record.eigenvalues[i - 1])) {
      throw std::invalid_argument("eigenvalues must be ascending");
    }
  }
  return record;
}

void save_operator(const Operator& a, const std::string& path) {
  write_file(to_json(a), path);
}
Operator load_operator(const std::string& path) {
  return operator_from_json(read_file(path));
}
void save_state(const ProjectiveState& psi, const std::string& path) {
  write_file(to_json(psi), path);
}
ProjectiveState load_state(const std::string& path) {
  return state_from_json(read_file(path));
}
void save_ncvalue(const NCValue& v, const std::string& path) {
  write_file(to_json(v), path);
}
NCValue load_ncvalue(const std::string& path) {
  return ncvalue_from_json(read_file(path));
}
void save_record(const MeasurementRecord& record, const std::string& path) {
  write_file(to_json(record), path);
}
MeasurementRecord load_record(const std::string& path) {
  return record_from_json(read_file(path));
}

}  // namespace ncval
