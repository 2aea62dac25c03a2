#include "intrec/regions.hpp"

#include <algorithm>

namespace intrec {

int region_level(Region r) {
  switch (r) {
    case Region::S1Plus:
    case Region::S1Minus:
      return 1;
    case Region::S2Plus:
    case Region::S2Minus:
      return 2;
    case Region::S3Plus:
    case Region::S3Minus:
      return 3;
    case Region::S4Plus:
    case Region::S4Minus:
      return 4;
  }
  return 0;
}

std::string to_string(Region r) {
  const bool plus = r == Region::S1Plus || r == Region::S2Plus || r == Region::S3Plus ||
                    r == Region::S4Plus;
  return "S" + std::to_string(region_level(r)) + (plus ? "+" : "-");
}

std::vector<RegionInterval> region_intervals(const Integer& l, const Integer& u) {
  const Integer dmin = std::min<Integer>(-l, u);
  const Integer dmax = std::max<Integer>(-l, u);
  const std::array<RegionInterval, 8> all = {{
      {Region::S1Plus, 1, dmin},
      {Region::S2Plus, dmin + 1, u},
      {Region::S3Plus, u + 1, dmax},
      {Region::S4Plus, dmax + 1, u - l},
      {Region::S1Minus, -dmin, -1},
      {Region::S2Minus, l, -dmin - 1},
      {Region::S3Minus, -dmax, l - 1},
      {Region::S4Minus, l - u, -dmax - 1},
  }};
  std::vector<RegionInterval> out;
  for (const auto& r : all) {
    if (r.lo <= r.hi) {
      out.push_back(r);
    }
  }
  return out;
}

std::optional<Region> region_of(const Integer& z, const Integer& l, const Integer& u) {
  if (sgn(z) == 0) {
    return std::nullopt;
  }
  for (const auto& r : region_intervals(l, u)) {
    if (r.lo <= z && z <= r.hi) {
      return r.region;
    }
  }
  return std::nullopt;
}

}  // namespace intrec
