#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "fairaudit/rng.hpp"
#include "fairaudit/table.hpp"

namespace helpers {

using Row = std::tuple<int, std::string, double>;  // outcome, group, prob

inline fairaudit::AuditTable make_table(const std::vector<Row>& rows,
                                        std::map<std::string, fairaudit::ExtraColumn> extras = {}) {
    std::vector<double> outcome, prob;
    std::vector<std::string> group;
    for (const auto& [y, g, p] : rows) {
        outcome.push_back(y);
        group.push_back(g);
        prob.push_back(p);
    }
    return fairaudit::AuditTable(std::move(outcome), std::move(group), std::move(prob),
                                 std::move(extras));
}

// The hand-counted 8-row fixture: at cutoff 0.5 group A has tp=1 fn=1 fp=1
// tn=1 and group B has tp=2 fn=0 fp=0 tn=2.
inline fairaudit::AuditTable fixture8(bool with_pick_column = false) {
    std::vector<Row> rows = {
        {1, "A", 0.9}, {1, "A", 0.3}, {0, "A", 0.7}, {0, "A", 0.2},
        {1, "B", 0.8}, {1, "B", 0.6}, {0, "B", 0.4}, {0, "B", 0.1},
    };
    std::map<std::string, fairaudit::ExtraColumn> extras;
    if (with_pick_column) {
        fairaudit::ExtraColumn pick;
        pick.numeric = true;
        pick.nums = {1, 1, 0, 0, 1, 1, 0, 0};  // first two rows of each group
        extras.emplace("pick", std::move(pick));
    }
    return make_table(rows, std::move(extras));
}

// Random valid table with both groups present; sometimes degenerate in
// outcome mix so undefined statistics get exercised.
inline fairaudit::AuditTable random_table(fairaudit::SplitMix64& rng, std::size_t min_n = 4,
                                          std::size_t max_n = 50) {
    const std::size_t n =
        min_n + rng.bounded(static_cast<std::uint32_t>(max_n - min_n + 1));
    std::vector<Row> rows;
    rows.reserve(n);
    const double pos_rate = rng.next_unit();
    for (std::size_t i = 0; i < n; ++i) {
        // Force one row of each group so validation always passes.
        std::string g = i == 0 ? "A" : i == 1 ? "B" : (rng.next() & 1 ? "A" : "B");
        int y = rng.next_unit() < pos_rate ? 1 : 0;
        double p = rng.next_unit();
        if (rng.bounded(10) == 0) p = rng.next() & 1 ? 0.0 : 1.0;  // hit the prob bounds
        rows.push_back({y, std::move(g), p});
    }
    return make_table(rows);
}

}  // namespace helpers
