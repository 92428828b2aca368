#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minkhelix {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string group;
    bool passed = true;
    /// Every measured quantity, by name.
    nlohmann::json measured = nlohmann::json::object();
    std::vector<std::string> failures;
};

struct AcceptanceOptions {
    /// Replaces the invariant tolerance used on reconstructed frames (default 1e-3).
    std::optional<double> tol_H;
    /// Groups to run; empty runs everything.
    std::vector<std::string> only;
};

/// metric, invariants, controls, roundtrip, gamma, reparam, cli.
const std::vector<std::string>& acceptance_groups();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// Matches schemas/verify_summary.schema.json.
nlohmann::json acceptance_summary(const std::vector<CriterionResult>& results, double runtime_seconds);

/// One line per criterion: `[PASS] 2 invariants: ...`.
std::string format_result_line(const CriterionResult& r);

}  // namespace minkhelix
