#pragma once

namespace stabsim {

// Sign of the 2x2 determinant |b-a, c-a|: +1 if a,b,c counterclockwise,
// -1 clockwise, 0 collinear. Floating point filter with an exact rational
// fallback near zero.
int orient2d(const double* a, const double* b, const double* c);

// Sign of the in-circle determinant: +1 if d lies strictly inside the
// circumcircle of the counterclockwise triangle a,b,c, -1 outside, 0 on it.
int incircle(const double* a, const double* b, const double* c, const double* d);

}  // namespace stabsim
