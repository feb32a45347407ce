#include "va/core.hpp"

#include <cmath>

namespace va {

RisArray::RisArray(Vec2 c, Vec2 dir, int n, double d)
    : center(std::move(c)), direction(std::move(dir)), num_elements(n), spacing(d) {
  if (!center.allFinite() || !direction.allFinite())
    throw std::invalid_argument("RisArray: non-finite geometry");
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("RisArray: direction must be a unit vector");
  if (num_elements < 1) throw std::invalid_argument("RisArray: num_elements must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("RisArray: spacing must be positive");
}

std::vector<Vec2> element_positions(const RisArray& ris) {
  std::vector<Vec2> out;
  out.reserve(ris.num_elements);
  for (int n = 0; n < ris.num_elements; ++n) out.push_back(ris.element(n));
  return out;
}

Vec2 mirror_point(const Vec2& p, const RisArray& ris) {
  const Vec2 rel = p - ris.center;
  const double along = rel.dot(ris.direction);
  // decompose into components along and across the element line, flip the
  // across part
  const Vec2 across = rel - along * ris.direction;
  return ris.center + along * ris.direction - across;
}

}  // namespace va
