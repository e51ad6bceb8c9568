#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbdecay/decay.hpp"
#include "qbdecay/model.hpp"
#include "qbdecay/oracle.hpp"
#include "qbdecay/regions.hpp"
#include "qbdecay/verify.hpp"

namespace qbdecay {

using Json = nlohmann::ordered_json;

const char* version_string();

Json to_json(const ValidationReport& rep);
Json to_json(const Interval& iv);
Json to_json(const Gamma12Extremes& e);
Json to_json(const RegionData& rd);
Json to_json(const OptimalPair& p);
Json to_json(const AxisClassification& a);
Json to_json(const DirectionRate& r);
Json to_json(const DirectionClassification& c);
Json to_json(const HittingSolution& h);
Json to_json(const DecaySolution& d);
Json to_json(const RayEstimate& r);
Json to_json(const OccupationField& f);  // summary only, not the grid
Json to_json(const VerifyCheck& c);
Json to_json(const VerifyReport& r);

// Envelope written by every CLI command.
Json run_report(const std::string& command, const std::string& model_hash, Json parameters,
                Json results, double wall_time_s);

void write_boundary_csv(std::ostream& os, const std::vector<BoundarySample>& samples);
// Columns: n, value_pooled, then value_<j0>_<j> per phase pair.
void write_ray_csv(std::ostream& os, const OccupationField& f, const std::array<int, 2>& c,
                   int n_lo, int n_hi);
// Full grid dump: x1, x2, value_pooled, per-phase values.
void write_field_csv(std::ostream& os, const OccupationField& f);

}  // namespace qbdecay
