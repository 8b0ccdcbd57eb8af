#ifndef SHIFTVAR_REPORT_IO_HPP
#define SHIFTVAR_REPORT_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "shiftvar/enumeration.hpp"
#include "shiftvar/families.hpp"
#include "shiftvar/hardness.hpp"

namespace shiftvar {

using ordered_json = nlohmann::ordered_json;

// {"p":, "n":, "polys": [..], "metadata": {"r":, "d":, "sigma":, "bigD":}}
ordered_json instance_to_json(const VarietyInstance& v);
VarietyInstance instance_from_json(const nlohmann::json& j);

ordered_json report_to_json(const NeighborhoodReport& rep);

ordered_json family_to_json(const FamilySpec& spec);

ordered_json kernel_to_json(const ShiftKernel& kernel);

ordered_json cylinder_to_json(const CylinderForm& form);

ordered_json reduction_to_json(const ReductionOutcome& outcome);

// CSV report rows: fixed, versioned column set; one pass/fail/na cell per
// bound.  Rows are recomputable from their leading input columns.
std::string report_csv_header();
std::string report_csv_row(const std::string& family, u64 p, std::size_t n,
                           std::optional<u64> h, const NeighborhoodReport& rep);

}  // namespace shiftvar

#endif  // SHIFTVAR_REPORT_IO_HPP
