#include "newsdep/calendar.hpp"

#include <cctype>
#include <cstdio>

namespace newsdep {

YearMonth parse_year_month(const std::string& text) {
    auto fail = [&] { throw ValidationError("invalid month '" + text + "', expected YYYY-MM"); };
    if (text.size() != 7 || text[4] != '-') fail();
    for (int i : {0, 1, 2, 3, 5, 6})
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
    YearMonth ym;
    ym.year = std::stoi(text.substr(0, 4));
    ym.month = std::stoi(text.substr(5, 2));
    if (ym.month < 1 || ym.month > 12) fail();
    return ym;
}

std::string to_string(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

} // namespace newsdep
