#pragma once

#include <iosfwd>
#include <string>

#include "usco/simplefn.hpp"

namespace usco {

/// Text export of a simple function on a 1-d domain: one record per piece
/// with its value vector and its stage interval lists up to `stage_horizon`.
/// Countable partitions are truncated to the first `piece_limit` pieces.
///
///   simplefn 1
///   name <name>
///   horizon <H>
///   anchor <point>
///   pieces <count>
///   piece <label>
///   value <point>
///   stage <n> <interval>...
///   ...
///   end
///
/// Points render as (i:v,i:v,...) and intervals as [lo,hi] with inf/-inf
/// allowed. A function read back evaluates with its stages frozen at the
/// stored horizon.
void write_simplefn(std::ostream& os, const SimpleFunction& f, std::int64_t piece_limit,
                    int stage_horizon);

SimpleFunction read_simplefn(std::istream& is);

std::string point_to_text(const Point& p);
Point point_from_text(const std::string& text);

}  // namespace usco
