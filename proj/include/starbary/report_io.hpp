#pragma once

#include <json.hpp>

#include <starbary/experiments.hpp>

namespace starbary {

/// JSON rendering of a convergence table; non-finite errors become the
/// string "Inf" to mirror the CSV convention.
[[nodiscard]] inline std::string to_json(const std::vector<ErrorReport>& reports,
                                         bool include_timing = true) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json row{{"n1", r.n1},
                           {"n2", r.n2},
                           {"domain", r.domain},
                           {"function", r.function},
                           {"shifted", r.shifted},
                           {"points", r.points_evaluated},
                           {"elapsed_s", include_timing ? r.elapsed_seconds : 0.0}};
        if (r.non_finite)
            row["max_abs_error"] = "Inf";
        else
            row["max_abs_error"] = r.max_abs_error;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

} // namespace starbary
