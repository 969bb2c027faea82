#pragma once

namespace adelix {

template <class Rng>
RatFun random_ratfun(Rng& rng, RingPtr base, int h, int deg) {
  auto rnd_poly = [&](int d) {
    while (true) {
      std::vector<long> c;
      for (int i = 0; i <= d; ++i) c.push_back(static_cast<long>(rng() % static_cast<unsigned>(2 * h + 1)) - h);
      Poly f = Poly::from_ints(base, c);
      if (!f.is_zero()) return f;
    }
  };
  int dn = static_cast<int>(rng() % static_cast<unsigned>(deg + 1));
  int dd = static_cast<int>(rng() % static_cast<unsigned>(deg + 1));
  return RatFun::ratio(rnd_poly(dn), rnd_poly(dd));
}

}  // namespace adelix
