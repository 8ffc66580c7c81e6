#include "hcube/influence.hpp"

#include "hcube/rng.hpp"

#include <stdexcept>

namespace hcube {

namespace {

int check_coordinate(const CubeFunction& f, int i) {
  if (i < 0 || i >= f.n())
    throw std::invalid_argument("coordinate out of range");
  return i;
}

// Index of the pair member with bit i clear, for pair number j in
// [0, 2^(n-1)): j's bits below i stay, the rest shift up one slot.
inline Index pair_low(Index j, int i) {
  const Index low = j & ((Index{1} << i) - 1);
  return ((j >> i) << (i + 1)) | low;
}

double l1_influence_impl(const Vec& v, int n, int i) {
  const Index pairs = Index{1} << (n - 1);
  const Index bit = Index{1} << i;
  // Sum over edge pairs of |f(lo)-f(hi)| equals 2^n * E|f - f∘flip|/2.
  return blocked_sum(pairs,
                     [&](Index j) {
                       const Index lo = pair_low(j, i);
                       return std::abs(v[lo] - v[lo | bit]);
                     }) /
         static_cast<double>(Index{1} << n);
}

double l2_influence_impl(const Vec& v, int n, int i) {
  const Index pairs = Index{1} << (n - 1);
  const Index bit = Index{1} << i;
  return blocked_sum(pairs,
                     [&](Index j) {
                       const Index lo = pair_low(j, i);
                       const double d = v[lo] - v[lo | bit];
                       return 0.5 * d * d;
                     }) /
         static_cast<double>(Index{1} << n);
}

}  // namespace

double l1_influence(const CubeFunction& f, int i) {
  check_coordinate(f, i);
  return l1_influence_impl(f.values(), f.n(), i);
}

double l2_influence(const CubeFunction& f, int i) {
  check_coordinate(f, i);
  return l2_influence_impl(f.values(), f.n(), i);
}

InfluenceProfile influence_profile(const CubeFunction& f) {
  const int n = f.n();
  InfluenceProfile p;
  p.per_coordinate_l1 = Vec::Zero(n);
  p.per_coordinate_l2 = Vec::Zero(n);
  const auto& v = f.values();
  par::for_blocks(n, [&](Index i) {
    p.per_coordinate_l1[i] = l1_influence_impl(v, n, static_cast<int>(i));
    p.per_coordinate_l2[i] = l2_influence_impl(v, n, static_cast<int>(i));
  });
  CompensatedSum s1, s2;
  for (int i = 0; i < n; ++i) {
    s1.add(p.per_coordinate_l1[i]);
    s2.add(p.per_coordinate_l2[i]);
  }
  p.total_l1 = s1.value();
  p.total_l2 = s2.value();
  return p;
}

double total_l1(const CubeFunction& f) {
  CompensatedSum s;
  for (int i = 0; i < f.n(); ++i)
    s.add(l1_influence_impl(f.values(), f.n(), i));
  return s.value();
}

double total_l2(const CubeFunction& f) {
  CompensatedSum s;
  for (int i = 0; i < f.n(); ++i)
    s.add(l2_influence_impl(f.values(), f.n(), i));
  return s.value();
}

double total_l2_via_fourier(const FourierExpansion& e) {
  const auto& c = e.coeffs();
  return blocked_sum(c.size(), [&](Index s) {
    return popcount(static_cast<Mask>(s)) * c[s] * c[s];
  });
}

double total_l1_via_fourier(const FourierExpansion& e) {
  const int n = e.n();
  const Index size = e.size();
  CompensatedSum total;
  Vec deriv(size);
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    // Derivative in direction i keeps exactly the coefficients whose set
    // contains i; synthesizing it and averaging |.| gives the L1 influence.
    par::for_range(size, [&](Index b, Index en) {
      for (Index s = b; s < en; ++s)
        deriv[s] = (static_cast<Mask>(s) & bit) ? e.coeffs()[s] : 0.0;
    });
    walsh_hadamard_inplace(deriv);
    total.add(blocked_sum(size, [&](Index x) { return std::abs(deriv[x]); }) /
              static_cast<double>(size));
  }
  return total.value();
}

CubeFunction random_bounded_polynomial(int n, int d, std::uint64_t seed) {
  check_dimension(n);
  if (d < 0 || d > n)
    throw std::invalid_argument("degree must be in [0, n]");
  rng::Stream stream(rng::stream_seed(seed, rng::kStreamEnsemble));
  const Index size = Index{1} << n;
  Vec v(size);
  for (Index x = 0; x < size; ++x) v[x] = stream.uniform_pm1();
  CubeFunction raw(n, std::move(v));
  FourierExpansion e = fourier_transform(raw);
  auto& c = e.coeffs();
  par::for_range(c.size(), [&](Index b, Index en) {
    for (Index s = b; s < en; ++s)
      if (popcount(static_cast<Mask>(s)) > d) c[s] = 0.0;
  });
  CubeFunction g = inverse_transform(e);
  const double m = sup_norm(g);
  if (m > 1.0) return CubeFunction(n, g.values() / m);
  return g;
}

}  // namespace hcube
