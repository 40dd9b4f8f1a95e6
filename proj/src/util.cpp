#include "repolabel/util.hpp"

#include <cctype>
#include <cmath>

#include "repolabel/errors.hpp"

namespace repolabel {

double quantile_sorted(const std::vector<double>& sorted_vals, double p) {
    if (sorted_vals.empty()) throw ValidationError("quantile of empty set");
    if (p < 0.0 || p > 1.0) throw ValidationError("quantile p outside [0,1]");
    if (sorted_vals.size() == 1) return sorted_vals[0];
    double pos = p * static_cast<double>(sorted_vals.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted_vals.size()) return sorted_vals.back();
    double frac = pos - static_cast<double>(lo);
    return sorted_vals[lo] * (1.0 - frac) + sorted_vals[lo + 1] * frac;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

}  // namespace repolabel
