#include "shiftvar/report_io.hpp"

#include <sstream>

namespace shiftvar {

namespace {

// fixed CSV column set, version-stamped in the header comment
const std::vector<std::string> kBoundColumns = {
    "product_bound",       "point_count_upper",
    "point_count_weil",    "delta_shiftfree",
    "sumset_no_essential", "sumset_weil",
    "delta_ball",          "sumset_ball_weil",
    "delta_lower_shifted", "delta_hypersurface",
    "sumset_hypersurface_weil",
};

}  // namespace

ordered_json instance_to_json(const VarietyInstance& v) {
  ordered_json j;
  j["p"] = v.p;
  j["n"] = v.n;
  j["polys"] = ordered_json::array();
  for (const auto& f : v.polys) j["polys"].push_back(to_string(f));
  j["metadata"] = {{"r", v.metadata.r},
                   {"d", v.metadata.d},
                   {"sigma", v.metadata.sigma},
                   {"bigD", v.metadata.bigD}};
  return j;
}

VarietyInstance instance_from_json(const nlohmann::json& j) {
  VarietyInstance v;
  try {
    v.p = j.at("p").get<u64>();
    v.n = j.at("n").get<std::size_t>();
    const auto& md = j.at("metadata");
    v.metadata.r = md.at("r").get<u64>();
    v.metadata.d = md.at("d").get<u64>();
    v.metadata.sigma = md.at("sigma").get<u64>();
    v.metadata.bigD = md.at("bigD").get<u64>();
    const PrimeField field(v.p);
    for (const auto& s : j.at("polys"))
      v.polys.push_back(parse_poly(s.get<std::string>(), v.n, field));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MetadataMissing,
         std::string("malformed instance document: ") + e.what());
  }
  validate_instance(v);
  return v;
}

ordered_json report_to_json(const NeighborhoodReport& rep) {
  ordered_json j;
  j["countX"] = rep.count_x;
  j["countU"] = rep.count_u;
  j["countSumset"] = rep.count_sumset;
  j["delta"] = rep.delta;
  j["bounds"] = ordered_json::array();
  for (const auto& b : rep.bounds) {
    if (!b.applicable) continue;
    j["bounds"].push_back({{"name", b.name},
                           {"lhs", static_cast<double>(b.lhs)},
                           {"rhs", static_cast<double>(b.rhs)},
                           {"holds", b.holds}});
  }
  return j;
}

ordered_json family_to_json(const FamilySpec& spec) {
  ordered_json j;
  j["kind"] = family_kind_name(spec.kind);
  j["parameters"] = ordered_json::object();
  for (const auto& [k, v] : spec.parameters) j["parameters"][k] = v;
  j["instance"] = instance_to_json(spec.instance);
  j["shiftFree"] = spec.shift_free;
  j["predictions"] = ordered_json::object();
  for (const auto& [k, v] : spec.predictions) j["predictions"][k] = v;
  return j;
}

ordered_json kernel_to_json(const ShiftKernel& kernel) {
  ordered_json j;
  j["n"] = kernel.n;
  j["p"] = kernel.p;
  j["dim"] = kernel.dim();
  j["basis"] = ordered_json::array();
  for (const auto& v : kernel.basis) j["basis"].push_back(v);
  return j;
}

ordered_json cylinder_to_json(const CylinderForm& form) {
  ordered_json j;
  j["m"] = form.m;
  j["reducedVars"] = form.reduced.nvars();
  j["reducedPoly"] = to_string(form.reduced);
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < form.linear_map.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < form.linear_map.cols(); ++c)
      row.push_back(form.linear_map.at(r, c));
    rows.push_back(row);
  }
  j["linearMap"] = rows;
  return j;
}

ordered_json reduction_to_json(const ReductionOutcome& outcome) {
  ordered_json j;
  j["p"] = outcome.p;
  j["f"] = to_string(outcome.f);
  if (outcome.direction) {
    ordered_json u = ordered_json::array();
    for (u64 c : outcome.direction->coords)
      u.push_back(balanced_mod(c, outcome.direction->p));
    j["u"] = u;
  } else {
    j["u"] = nullptr;
  }
  if (outcome.certificate) {
    j["S"] = outcome.certificate->s;
    j["T"] = outcome.certificate->t;
  } else {
    j["S"] = nullptr;
    j["T"] = nullptr;
  }
  return j;
}

std::string report_csv_header() {
  std::ostringstream out;
  out << "# shiftvar report v1\n";
  out << "family,p,n,h,countX,countU,countSumset,delta";
  for (const auto& col : kBoundColumns) out << "," << col;
  return out.str();
}

std::string report_csv_row(const std::string& family, u64 p, std::size_t n,
                           std::optional<u64> h,
                           const NeighborhoodReport& rep) {
  std::ostringstream out;
  out << family << "," << p << "," << n << ",";
  if (h)
    out << *h;
  else
    out << "-";
  out << "," << rep.count_x << "," << rep.count_u << "," << rep.count_sumset
      << "," << rep.delta;
  for (const auto& col : kBoundColumns) {
    std::string cell = "na";
    for (const auto& b : rep.bounds)
      if (b.name == col && b.applicable) cell = b.holds ? "pass" : "fail";
    out << "," << cell;
  }
  return out.str();
}

}  // namespace shiftvar
