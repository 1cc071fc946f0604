#include "hkc/random.hpp"

#include <cmath>

#include "hkc/error.hpp"

namespace hkc {

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("RandomStream::below: bound must be positive");
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) throw UsageError("RandomStream::exponential: rate must be positive");
  // Open interval (0, 1) keeps the holding time strictly positive and finite.
  const double u = (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  return -std::log(u) / rate;
}

}  // namespace hkc
