#pragma once

#include "dualres/chart.hpp"
#include "dualres/dual_complex.hpp"
#include "dualres/engine.hpp"
#include "dualres/poly_oracle.hpp"
#include "dualres/snc_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dualres {

// JSON text for every artifact. Keys are sorted and the output is
// deterministic, so equal values produce byte-identical documents.
// Parsers throw InputError with the offending path on malformed input;
// integers of arbitrary size travel as decimal strings.

std::string to_json_text(const DualComplex& complex);
std::string to_json_text(const SncVariety& snc);
std::string to_json_text(const SeedSpec& seed);
std::string to_json_text(const ChartState& chart);
std::string to_json_text(const RuleApplication& app);
std::string to_json_text(const ResolutionState& state);
std::string to_json_text(const BlowupEvent& event);
std::string to_json_text(const EngineConfig& config);
std::string to_json_text(const Trace& trace);
std::string to_json_text(const HomologyReport& report);
std::string to_json_text(const VerificationReport& report);
std::string to_json_text(const std::vector<VerificationReport>& reports);

DualComplex dual_complex_from_json(std::string_view text);
SncVariety snc_from_json(std::string_view text);
SeedSpec seed_spec_from_json(std::string_view text);
ChartState chart_from_json(std::string_view text);
RuleApplication rule_from_json(std::string_view text);
ResolutionState state_from_json(std::string_view text);
BlowupEvent event_from_json(std::string_view text);
EngineConfig config_from_json(std::string_view text);
Trace trace_from_json(std::string_view text);
HomologyReport homology_report_from_json(std::string_view text);
VerificationReport verification_report_from_json(std::string_view text);
std::vector<VerificationReport> verification_reports_from_json(std::string_view text);

/// True if the document has a top-level "cells" array (a bare complex)
/// rather than snc incidence data.
bool looks_like_dual_complex(std::string_view text);

/// Modeling assumptions written into every trace header.
std::vector<std::string> trace_assumptions();

} // namespace dualres
