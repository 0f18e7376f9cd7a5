#include "newsdep/series.hpp"

#include <algorithm>

namespace newsdep {

void MonthlySeries::validate() const {
    if (static_cast<int>(months.size()) != values.size())
        throw ValidationError("series '" + label + "': month/value count mismatch");
    for (size_t i = 1; i < months.size(); ++i)
        if (!(months[i - 1] < months[i]))
            throw ValidationError("series '" + label + "': months not strictly increasing at " +
                                  to_string(months[i]));
}

bool MonthlySeries::contiguous() const {
    for (size_t i = 1; i < months.size(); ++i)
        if (months[i].index() != months[i - 1].index() + 1) return false;
    return true;
}

MonthlySeries MonthlySeries::slice(YearMonth from, YearMonth to) const {
    if (months.empty() || from < months.front() || months.back() < to || to < from)
        throw ValidationError("series '" + label + "': slice range " + to_string(from) + ".." +
                              to_string(to) + " not covered");
    auto lo = std::lower_bound(months.begin(), months.end(), from);
    auto hi = std::upper_bound(months.begin(), months.end(), to);
    MonthlySeries out;
    out.label = label;
    out.months.assign(lo, hi);
    int start = static_cast<int>(lo - months.begin());
    out.values = values.segment(start, static_cast<int>(hi - lo));
    if (!out.contiguous())
        throw ValidationError("series '" + label + "': gap inside slice " + to_string(from) + ".." +
                              to_string(to));
    return out;
}

std::vector<MonthlySeries> align_on_common_months(const std::vector<MonthlySeries>& series) {
    if (series.empty()) throw ValidationError("align_on_common_months: no series given");
    YearMonth lo = series[0].first_month(), hi = series[0].last_month();
    for (const auto& s : series) {
        if (s.size() == 0) throw ValidationError("series '" + s.label + "' is empty");
        s.validate();
        lo = std::max(lo, s.first_month());
        hi = std::min(hi, s.last_month());
    }
    if (hi < lo) throw ValidationError("series have no overlapping months");
    std::vector<MonthlySeries> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.slice(lo, hi));
    return out;
}

MonthlySeries make_series(std::string label, YearMonth start, const Eigen::VectorXd& values) {
    MonthlySeries s;
    s.label = std::move(label);
    s.values = values;
    s.months.resize(values.size());
    for (int i = 0; i < values.size(); ++i) s.months[i] = YearMonth::from_index(start.index() + i);
    return s;
}

} // namespace newsdep
