#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "fiberphase/evolution.hpp"
#include "fiberphase/fock.hpp"
#include "fiberphase/format.hpp"
#include "fiberphase/geometry.hpp"
#include "fiberphase/gyrotropic.hpp"
#include "fiberphase/phase.hpp"

namespace fiberphase {

// Sampled-path file: one record per line, `t,x,y,z`, '#' comments and blank
// lines allowed. Rejects non-monotone t and malformed records.
SampledPath read_sampled_path(std::istream& in, const std::string& origin = "<stream>");
SampledPath read_sampled_path_file(const std::filesystem::path& file);

// Structured key-value report documents. Schemas are documented in the
// README; all of them start with `schema_version = 1`.
std::string phase_report_text(const PhaseReport& report);
std::string phase_report_csv(const PhaseReport& report); // sigma,n,quantal,vacuum,total
std::string evolution_text(const EvolutionResult& result, int sigma);
std::string evolution_trace_csv(const EvolutionResult& result);
std::string classification_text(const ModeClassification& cls);
std::string filtered_vacuum_text(const FilteredVacuumPhase& filtered);
std::string sweep_csv(const std::vector<SweepCell>& cells, const SweepGrid& grid);
std::string operator_csv(const Mat& op); // row,col,re,im

// write-then-rename; the destination never holds a partial file
void atomic_write(const std::filesystem::path& file, const std::string& content);

} // namespace fiberphase
