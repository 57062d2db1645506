#pragma once

#include <random>

#include "emdyn/polyalg.hpp"

namespace testsupport {

inline emdyn::Rational random_rational(std::mt19937_64& rng, int range = 9, int den = 5) {
  std::uniform_int_distribution<int> n(-range, range), d(1, den);
  emdyn::Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

inline emdyn::MultiPoly random_poly(std::mt19937_64& rng, const emdyn::VarList& vars, int max_deg,
                                    int terms) {
  std::uniform_int_distribution<int> e(0, max_deg);
  emdyn::MultiPoly p(vars);
  for (int t = 0; t < terms; ++t) {
    emdyn::Exponents ex(vars.size(), 0);
    int budget = e(rng);
    for (std::size_t i = 0; i < vars.size() && budget > 0; ++i) {
      std::uniform_int_distribution<int> k(0, budget);
      ex[i] = static_cast<std::uint16_t>(k(rng));
      budget -= ex[i];
    }
    p += emdyn::MultiPoly::monomial(vars, ex, random_rational(rng));
  }
  return p;
}

}  // namespace testsupport
