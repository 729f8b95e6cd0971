#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "factorlab/dfc.hpp"
#include "factorlab/formula.hpp"
#include "factorlab/positivize.hpp"
#include "factorlab/variety.hpp"

namespace factorlab {

enum class StageStatus { Passed, Failed, Skipped };

std::string_view to_string(StageStatus s);

struct StageOutcome {
  std::string name;
  StageStatus status = StageStatus::Skipped;
  std::string detail;
};

struct PipelineOptions {
  PositivizeOptions positivize;
  DfcCaps dfc;
  std::size_t congruence_bound = kDefaultCongruenceBound;
};

/// verify_dfc(Φ), positivize, verify_dfc(Φ′), then correspondence_check of
/// Φ′ on every pool member within the congruence bound. The first failing
/// stage marks the rest as skipped.
struct PipelineReport {
  std::vector<StageOutcome> stages;
  std::optional<DfcReport> original;
  std::optional<PositivizeResult> positive;
  std::optional<DfcReport> positive_dfc;
  std::vector<CorrespondenceReport> correspondence;
  /// Pool members left out of the correspondence stage (too large).
  std::vector<std::string> correspondence_skipped;
  /// Set when positivize threw NoWitnessError or ResourceError.
  std::optional<std::string> error_kind;
  bool passed() const;
  /// Name of the first failed stage, if any.
  std::optional<std::string> failed_stage() const;
};

PipelineReport run_pipeline(const ExistentialDnf& phi, const VarietyContext& ctx,
                            const PipelineOptions& options = {});

}  // namespace factorlab
