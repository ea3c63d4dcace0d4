#include <cmath>

#include "skewcorr/measures.hpp"

namespace skewcorr {

BipartiteState example1_state() {
  const double third = 1.0 / 3.0;
  Matrix m = Matrix::Zero(4, 4);
  // clang-format off
  m << third,  third, -third, 0.0,
       third,  third, -third, 0.0,
      -third, -third,  third, 0.0,
       0.0,    0.0,    0.0,   0.0;
  // clang-format on
  return BipartiteState(2, 2, m);
}

// Both closed forms are reference formulas, left unsimplified. The first evaluates
// to 4/45 at p = 0 although the identity channel forces zero correlation.

double example1_closed_dt(double p, double alpha) {
  const double s5 = std::sqrt(5.0);
  const double q = std::sqrt(1.0 - p);
  const double lo = std::pow(3.0 - s5, 2.0 * alpha);
  const double hi = std::pow(3.0 + s5, 2.0 * alpha);
  const double four = std::pow(4.0, 1.0 + alpha);
  const double bracket = -four - 6.0 * lo * (3.0 + s5) * (q - 1.0) + 6.0 * (s5 - 3.0) * hi * (q - 1.0) -
                         four * q +
                         p * (3.0 * std::pow(2.0, 1.0 + 2.0 * alpha) - 3.0 * lo * (1.0 + s5) +
                              3.0 * (s5 - 1.0) * hi);
  return -1.0 / 45.0 * std::pow(2.0, -1.0 - 2.0 * alpha) * bracket;
}

double example1_closed_d(double p, double alpha) {
  const double s5 = std::sqrt(5.0);
  const double q = std::sqrt(1.0 - p);
  const double lo = std::pow(3.0 - s5, 2.0 * alpha);
  const double hi = std::pow(3.0 + s5, 2.0 * alpha);
  const double eight = std::pow(2.0, 3.0 + 2.0 * alpha);
  const double bracket = eight - 12.0 * lo * (3.0 + s5) * (q - 1.0) + 12.0 * (s5 - 3.0) * hi * (q - 1.0) -
                         eight * q +
                         p * (6.0 * std::pow(2.0, 1.0 + 2.0 * alpha) + 3.0 * lo * (3.0 + s5) -
                              3.0 * (s5 - 3.0) * hi);
  return 1.0 / 45.0 * std::pow(4.0, -1.0 - alpha) * bracket;
}

}  // namespace skewcorr
