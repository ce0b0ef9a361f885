#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "armplan/eikonal.hpp"
#include "armplan/objective.hpp"
#include "armplan/optimizer.hpp"
#include "armplan/soft_arm.hpp"

namespace armplan::io {

/// A scenario file resolved into a runnable problem plus solver settings.
struct LoadedScenario {
    std::string name;
    Scenario scenario;
    GdSettings settings;
    double grid_h = 0.01;
    std::string alpha_interpretation = "verbatim";  ///< or "omega-scaled"
    std::vector<std::string> notes;                 ///< parameter-table caveats
};

/// Parse a scenario file (versioned key/value grammar, see README).
/// Throws ParseError (with line), ValidationError, IoError.
LoadedScenario load_scenario(const std::filesystem::path& path);
LoadedScenario parse_scenario(std::istream& in, const std::string& name);

/// Serialize in canonical expanded form; load(write(s)) is equivalent to s.
void write_scenario(std::ostream& out, const LoadedScenario& s);

/// 12-significant-digit number formatting used by every CSV.
std::string format_number(double v);

void write_controls_csv(std::ostream& out, const std::vector<double>& u);
void write_configuration_csv(std::ostream& out, const std::vector<double>& s,
                             const std::vector<Point2>& pts);
void write_curvature_csv(std::ostream& out, const CurvatureProfile& profile);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_field_csv(std::ostream& out, const DistanceField& field);

/// SVG plot of the configuration, obstacle outlines, target marker and
/// anchor, on the fixed viewport [-0.2,0.8] x [-1.1,0.2].
void emit_svg(std::ostream& out, const Scenario& sc, const std::vector<Point2>& samples);

/// Write the full artifact set for a finished run into a directory.
void write_run_artifacts(const std::filesystem::path& dir, const LoadedScenario& ls,
                         const OptimizationReport& report, bool with_svg);

/// CLI entry point: solve | distfield | check-grad.
/// Exit codes: 0 success, 1 validation error, 2 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace armplan::io
