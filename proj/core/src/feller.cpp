#include "stabsim/feller.hpp"

#include <stdexcept>

#include "stabsim/rng.hpp"

namespace stabsim {

namespace {

// Dyadic block over the digit positions of one parity: sum over j <= depth,
// j of the requested parity, of 2^{-j} (b_j - 1/2) with b_j fair bits.
double block(Rng& rng, int depth, int parity) {
  double s = 0;
  double w = 0.5;
  for (int j = 1; j <= depth; ++j) {
    w *= 0.5;  // w = 2^{-j-1} = 2^{-j} * (1/2)
    if (j % 2 == parity) {
      const bool bit = rng.next_u64() >> 63;
      s += bit ? w : -w;
    }
  }
  return s;
}

}  // namespace

std::vector<double> feller_partial_sums(long n, int depth, int reps, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("feller_partial_sums: n must be positive");
  if (depth < 30) throw std::invalid_argument("feller_partial_sums: depth must be >= 30");
  if (reps < 1) throw std::invalid_argument("feller_partial_sums: reps must be positive");
  std::vector<double> out;
  out.reserve(reps);
  const bool odd = (n % 2) != 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
    const double u1 = block(rng, depth, 0);
    // S_{2m-1} = U_1 + V_m and S_{2m} = U_1 - U_{m+1}; the second block is
    // independent of U_1, so each partial sum needs just two blocks.
    out.push_back(odd ? u1 + block(rng, depth, 1) : u1 - block(rng, depth, 0));
  }
  return out;
}

}  // namespace stabsim
