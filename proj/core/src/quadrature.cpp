#include "nematic/quadrature.hpp"

#include <stdexcept>

namespace nematic {

QuadratureRule quadrature(int degree) {
  QuadratureRule rule;
  rule.degree = degree;
  switch (degree) {
    case 1:
      rule.points = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      rule.weights = {1.0};
      break;
    case 2:
      rule.points = {0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.5, 0.0, 0.5};
      rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      break;
    case 4: {
      const double a = 0.445948490915965;
      const double b = 0.091576213509771;
      const double wa = 0.223381589678011;
      const double wb = 0.109951743655322;
      rule.points = {a, a, 1 - 2 * a, a, 1 - 2 * a, a, 1 - 2 * a, a, a,
                     b, b, 1 - 2 * b, b, 1 - 2 * b, b, 1 - 2 * b, b, b};
      rule.weights = {wa, wa, wa, wb, wb, wb};
      break;
    }
    default:
      throw std::invalid_argument("quadrature: unsupported degree (use 1, 2 or 4)");
  }
  return rule;
}

}  // namespace nematic
