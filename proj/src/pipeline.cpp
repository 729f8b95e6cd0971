#include "factorlab/pipeline.hpp"

#include <algorithm>

#include "factorlab/error.hpp"

namespace factorlab {

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Passed: return "pass";
    case StageStatus::Failed: return "fail";
    case StageStatus::Skipped: return "skipped";
  }
  return "?";
}

bool PipelineReport::passed() const {
  return std::all_of(stages.begin(), stages.end(),
                     [](const StageOutcome& s) { return s.status == StageStatus::Passed; });
}

std::optional<std::string> PipelineReport::failed_stage() const {
  for (const auto& s : stages)
    if (s.status == StageStatus::Failed) return s.name;
  return std::nullopt;
}

namespace {

std::string dfc_detail(const DfcReport& r) {
  std::string s = std::to_string(r.pairs_tested) + " pairs, " +
                  std::to_string(r.counterexamples.size()) + " counterexamples";
  if (!r.skipped.empty()) s += ", " + std::to_string(r.skipped.size()) + " skipped";
  return s;
}

}  // namespace

PipelineReport run_pipeline(const ExistentialDnf& phi, const VarietyContext& ctx,
                            const PipelineOptions& options) {
  PipelineReport report;
  report.stages = {{"verify_dfc", StageStatus::Skipped, {}},
                   {"positivize", StageStatus::Skipped, {}},
                   {"verify_dfc_positive", StageStatus::Skipped, {}},
                   {"correspondence", StageStatus::Skipped, {}}};
  auto& s1 = report.stages[0];
  auto& s2 = report.stages[1];
  auto& s3 = report.stages[2];
  auto& s4 = report.stages[3];

  report.original = verify_dfc(phi, ctx, options.dfc);
  s1.detail = dfc_detail(*report.original);
  if (!report.original->passed()) {
    s1.status = StageStatus::Failed;
    return report;
  }
  s1.status = StageStatus::Passed;

  try {
    report.positive = positivize(phi, ctx, options.positivize);
  } catch (const NoWitnessError& e) {
    s2.status = StageStatus::Failed;
    s2.detail = e.what();
    report.error_kind = "no-witness";
    return report;
  } catch (const ResourceError& e) {
    s2.status = StageStatus::Failed;
    s2.detail = e.what();
    report.error_kind = "resource";
    return report;
  }
  const auto& pos = *report.positive;
  s2.detail = "disjunct " + std::to_string(pos.k + 1) + ", |F(x)| = " +
              std::to_string(pos.f1_size) + ", |F(x,y)| = " + std::to_string(pos.f2_size);
  if (!pos.phi_prime.all_positive() || !pos.substitution.passed()) {
    s2.status = StageStatus::Failed;
    s2.detail += pos.substitution.passed() ? ", negative literal left"
                                           : ", substitution check failed";
    return report;
  }
  s2.status = StageStatus::Passed;

  report.positive_dfc = verify_dfc(pos.phi_prime, ctx, options.dfc);
  s3.detail = dfc_detail(*report.positive_dfc);
  if (!report.positive_dfc->passed()) {
    s3.status = StageStatus::Failed;
    return report;
  }
  s3.status = StageStatus::Passed;

  const ExistentialDnf phi_prime = pos.phi_prime.as_dnf();
  std::size_t failures = 0;
  for (const auto& member : ctx.pool()) {
    if (member.algebra.size() > options.congruence_bound) {
      report.correspondence_skipped.push_back(member.algebra.name());
      continue;
    }
    report.correspondence.push_back(
        correspondence_check(member.algebra, phi_prime, ctx, options.congruence_bound));
    if (!report.correspondence.back().passed()) ++failures;
  }
  s4.detail = std::to_string(report.correspondence.size()) + " algebras, " +
              std::to_string(failures) + " failing";
  if (!report.correspondence_skipped.empty())
    s4.detail += ", " + std::to_string(report.correspondence_skipped.size()) + " skipped";
  s4.status = failures == 0 ? StageStatus::Passed : StageStatus::Failed;
  return report;
}

}  // namespace factorlab
