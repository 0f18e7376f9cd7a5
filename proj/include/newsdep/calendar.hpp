#pragma once

#include <compare>
#include <string>

#include "newsdep/errors.hpp"

namespace newsdep {

// Calendar month. Stored as a flat month counter so arithmetic never touches
// timezone or day-of-month semantics.
struct YearMonth {
    int year = 1999;
    int month = 1; // 1..12

    auto operator<=>(const YearMonth&) const = default;

    int index() const { return year * 12 + (month - 1); }

    static YearMonth from_index(int idx) {
        YearMonth ym;
        ym.year = idx / 12;
        ym.month = idx % 12 + 1;
        if (ym.month <= 0) { // negative idx
            ym.year -= 1;
            ym.month += 12;
        }
        return ym;
    }

    YearMonth next() const { return from_index(index() + 1); }
};

inline int months_between(YearMonth a, YearMonth b) { return b.index() - a.index(); }

// Parses strict ISO "YYYY-MM".
YearMonth parse_year_month(const std::string& text);
std::string to_string(YearMonth ym);

} // namespace newsdep
