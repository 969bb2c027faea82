#pragma once

// Template definitions for the random chart changes used by tests and the
// acceptance harness.

namespace adelix {

template <class Rng>
LoopPair random_chart_change(Rng& rng, RingPtr R, int n, bool positive, int steps, int maxdeg) {
  LMatrix m = laurent_identity(R, n), mi = m;
  if (n < 2) {
    // rank one: a unit constant
    Scalar c = Scalar::from_long(R, (rng() % 2) ? 1 : -1);
    m(0, 0) = Laurent::constant(c);
    mi(0, 0) = Laurent::constant(c);
    return {m, mi};
  }
  for (int s = 0; s < steps; ++s) {
    int i = static_cast<int>(rng() % static_cast<unsigned>(n));
    int j = static_cast<int>((i + 1 + rng() % static_cast<unsigned>(n - 1)) % static_cast<unsigned>(n));
    std::vector<Scalar> c;
    for (int k = 0; k <= maxdeg; ++k) c.push_back(Scalar::from_long(R, static_cast<long>(rng() % 7) - 3));
    Laurent a(R, 0, c);
    if (!positive) a = a.invert_variable();
    LMatrix E = laurent_identity(R, n), Ei = E;
    E(i, j) = a;
    Ei(i, j) = -a;
    m = m * E;
    mi = Ei * mi;
  }
  return {m, mi};
}

}  // namespace adelix
