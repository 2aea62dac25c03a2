#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "intrec/rational.hpp"

namespace intrec {

/// The eight value ranges of a difference z_i = x_i - x'_i of two points of
/// [l_i, u_i]_Z, split at 0, ±δmin, u, l and ±δmax where δmin = min(-l, u),
/// δmax = max(-l, u):
///   S1+ (0, δmin]   S2+ (δmin, u]   S3+ (u, δmax]   S4+ (δmax, u-l]
///   S1- [-δmin, 0)  S2- [l, -δmin)  S3- [-δmax, l)  S4- [l-u, -δmax)
enum class Region { S1Plus, S2Plus, S3Plus, S4Plus, S1Minus, S2Minus, S3Minus, S4Minus };

inline constexpr std::array<Region, 8> kAllRegions = {
    Region::S1Plus,  Region::S2Plus,  Region::S3Plus,  Region::S4Plus,
    Region::S1Minus, Region::S2Minus, Region::S3Minus, Region::S4Minus};

/// 1..4 for S1±..S4±.
int region_level(Region r);
std::string to_string(Region r);

struct RegionInterval {
  Region region;
  Integer lo;  // inclusive integer endpoints
  Integer hi;
};

/// The nonempty integer ranges for one coordinate with bounds l <= 0 <= u.
std::vector<RegionInterval> region_intervals(const Integer& l, const Integer& u);

/// Region containing the nonzero integer z; nullopt for 0 or z outside
/// [l-u, u-l].
std::optional<Region> region_of(const Integer& z, const Integer& l, const Integer& u);

}  // namespace intrec
