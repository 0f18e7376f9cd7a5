#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "newsdep/calendar.hpp"

namespace newsdep {

// A labeled monthly series. Months are strictly increasing; series used by the
// estimation layer are additionally contiguous (no gaps).
struct MonthlySeries {
    std::string label;
    std::vector<YearMonth> months;
    Eigen::VectorXd values;

    int size() const { return static_cast<int>(months.size()); }

    // Throws ValidationError if months are not strictly increasing or the
    // value count does not match.
    void validate() const;

    // True when months form a gap-free range.
    bool contiguous() const;

    YearMonth first_month() const { return months.front(); }
    YearMonth last_month() const { return months.back(); }

    // Sub-series on [from, to] (inclusive). Throws if the range is not covered.
    MonthlySeries slice(YearMonth from, YearMonth to) const;
};

// Inner-joins several series on their common contiguous month range.
// Throws ValidationError if the overlap is empty.
std::vector<MonthlySeries> align_on_common_months(const std::vector<MonthlySeries>& series);

MonthlySeries make_series(std::string label, YearMonth start, const Eigen::VectorXd& values);

} // namespace newsdep
