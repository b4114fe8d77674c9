#pragma once

#include <json.hpp>

#include <string>

#include "ncval/ncvalue.hpp"
#include "ncval/tomography.hpp"

// JSON file formats.  Complex numbers serialize as [re, im] pairs; matrices
// are row-major arrays of rows.
//   operator: {"kind":"operator","dim":N,"entries":[[[re,im],...],...]}
//   state:    {"kind":"state","dim":N,"amplitudes":[[re,im],...]}
//   ncvalue:  {"kind":"ncvalue","dim":N,"base":...,"f":[re,im],
//              "grad_z":...,"grad_zbar":...,"hess":...}
//   record:   {"kind":"record","observable_id":...,"eigenvalues":[...],
//              "counts":[...],"shots":S,"seed":...}
// Round trips are bit-exact for finite double entries; malformed documents
// raise std::invalid_argument (or nlohmann parse errors for invalid JSON).

namespace ncval {

nlohmann::json to_json(const Operator& a);
nlohmann::json to_json(const ProjectiveState& psi);
nlohmann::json to_json(const NCValue& v);
nlohmann::json to_json(const MeasurementRecord& record);

Operator operator_from_json(const nlohmann::json& j);
ProjectiveState state_from_json(const nlohmann::json& j);
NCValue ncvalue_from_json(const nlohmann::json& j);
MeasurementRecord record_from_json(const nlohmann::json& j);

void save_operator(const Operator& a, const std::string& path);
Operator load_operator(const std::string& path);
void save_state(const ProjectiveState& psi, const std::string& path);
ProjectiveState load_state(const std::string& path);
void save_ncvalue(const NCValue& v, const std::string& path);
NCValue load_ncvalue(const std::string& path);
void save_record(const MeasurementRecord& record, const std::string& path);
MeasurementRecord load_record(const std::string& path);

}  // namespace ncval
