#pragma once

// Text and JSON serialization of FaberSeries.
//
// Text form: a header line "dim <d> budget <n>" followed by one line per
// coefficient "j_1 ... j_d k_1 ... k_d value", levels in lexicographic
// order and translations row-major. Values use the shortest decimal that
// round-trips. The JSON form carries the same fields:
//   {"dim": d, "budget": n,
//    "coefficients": [{"j": [...], "k": [...], "value": v}, ...]}

#include <iosfwd>
#include <string>

#include "faber/series.hpp"

namespace faber {

void write_text(std::ostream& out, const FaberSeries& s);
/// Coefficients absent from the input are zero.
FaberSeries read_text(std::istream& in);

std::string to_json(const FaberSeries& s);
FaberSeries from_json(const std::string& text);

}  // namespace faber
