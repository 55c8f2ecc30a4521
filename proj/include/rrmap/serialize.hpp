#pragma once

#include <string>

#include "json.hpp"
#include "rrmap/census.hpp"
#include "rrmap/family.hpp"
#include "rrmap/nullmodel.hpp"
#include "rrmap/picket.hpp"
#include "rrmap/program.hpp"
#include "rrmap/trajectory.hpp"

namespace rrmap {

/// Two decimals, rounded half-up; the only way percentages are printed.
std::string format_percent(double percent);

nlohmann::json trajectory_to_json(const Program& prog, const Trajectory& t);
std::string trajectory_to_text(const Program& prog, const Trajectory& t);
std::string trajectory_to_csv(const Program& prog, const Trajectory& t);

nlohmann::json registry_to_json(const LoopRegistry& reg);
std::string registry_to_csv(const LoopRegistry& reg);
std::string registry_to_text(const LoopRegistry& reg);

nlohmann::json basin_to_json(const BasinReport& report);
std::string basin_to_csv(const BasinReport& report);
std::string basin_to_text(const BasinReport& report);

/// Census table in Table-1 shape: one row per picket-fence value with its
/// binary form, factorization, first exiter and exit count.
nlohmann::json exit_census_to_json(const ExitCensus& census);
std::string exit_census_to_csv(const ExitCensus& census);
std::string exit_census_to_text(const ExitCensus& census);

/// Family rows with the three model predictions alongside measured lengths.
std::string family_to_csv(const std::vector<FamilyEntry>& entries);
nlohmann::json family_to_json(const std::vector<FamilyEntry>& entries);

nlohmann::json islands_to_json(const IslandReport& report);
std::string islands_to_text(const IslandReport& report);

nlohmann::json profile_to_json(const DecayProfile& profile);
std::string profile_to_text(const DecayProfile& profile);

nlohmann::json interestingness_to_json(const InterestingnessReport& report);
std::string interestingness_to_text(const InterestingnessReport& report);

nlohmann::json residue_to_json(const ResidueProfile& profile);

}  // namespace rrmap
