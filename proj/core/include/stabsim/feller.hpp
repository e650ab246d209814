#pragma once

#include <cstdint>
#include <vector>

namespace stabsim {

// Partial sums of the classical stationary 1-dependent sequence whose
// variance stays bounded: with independent dyadic blocks
// U = sum over even digits 2^{-j} X_j and V = sum over odd digits, the terms
// xi_{2i-1} = U_i + V_i and xi_{2i} = -V_i - U_{i+1} are uniform(-1/2, 1/2),
// yet S_{2m-1} = U_1 + V_m and S_{2m} = U_1 - U_{m+1} telescope, so
// Var(S_n) <= 1/12 for every n. Digits are truncated at `depth` binary
// places (>= 30; 53 keeps the dyadic sums exact in doubles). Returns R
// samples of S_n, one per derived replicate seed.
std::vector<double> feller_partial_sums(long n, int depth, int reps, std::uint64_t seed);

}  // namespace stabsim
