#include "stabsim/predicates.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace stabsim {

namespace {

using Rat = boost::multiprecision::cpp_rational;

int exact_orient2d(const double* a, const double* b, const double* c) {
  const Rat det = (Rat(b[0]) - Rat(a[0])) * (Rat(c[1]) - Rat(a[1])) -
                  (Rat(b[1]) - Rat(a[1])) * (Rat(c[0]) - Rat(a[0]));
  return det.sign();
}

int exact_incircle(const double* a, const double* b, const double* c, const double* d) {
  const Rat ax = Rat(a[0]) - Rat(d[0]), ay = Rat(a[1]) - Rat(d[1]);
  const Rat bx = Rat(b[0]) - Rat(d[0]), by = Rat(b[1]) - Rat(d[1]);
  const Rat cx = Rat(c[0]) - Rat(d[0]), cy = Rat(c[1]) - Rat(d[1]);
  const Rat det = (ax * ax + ay * ay) * (bx * cy - by * cx) -
                  (bx * bx + by * by) * (ax * cy - ay * cx) +
                  (cx * cx + cy * cy) * (ax * by - ay * bx);
  return det.sign();
}

}  // namespace

int orient2d(const double* a, const double* b, const double* c) {
  const double detl = (b[0] - a[0]) * (c[1] - a[1]);
  const double detr = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = detl - detr;
  // Error bound for the filtered evaluation (Shewchuk's ccwerrboundA form).
  const double detsum = std::abs(detl) + std::abs(detr);
  const double eps = 3.3306690738754716e-16 * detsum;
  if (det > eps) return 1;
  if (det < -eps) return -1;
  return exact_orient2d(a, b, c);
}

int incircle(const double* a, const double* b, const double* c, const double* d) {
  const double ax = a[0] - d[0], ay = a[1] - d[1];
  const double bx = b[0] - d[0], by = b[1] - d[1];
  const double cx = c[0] - d[0], cy = c[1] - d[1];
  const double alift = ax * ax + ay * ay;
  const double blift = bx * bx + by * by;
  const double clift = cx * cx + cy * cy;
  const double det = alift * (bx * cy - by * cx) - blift * (ax * cy - ay * cx) +
                     clift * (ax * by - ay * bx);
  const double permanent = alift * (std::abs(bx * cy) + std::abs(by * cx)) +
                           blift * (std::abs(ax * cy) + std::abs(ay * cx)) +
                           clift * (std::abs(ax * by) + std::abs(ay * bx));
  const double eps = 1.1102230246251565e-15 * permanent;
  if (det > eps) return 1;
  if (det < -eps) return -1;
  return exact_incircle(a, b, c, d);
}

}  // namespace stabsim
