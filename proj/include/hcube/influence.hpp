#pragma once

#include "hcube/cube.hpp"

#include <cstdint>

namespace hcube {

struct InfluenceProfile {
  Vec per_coordinate_l1;  // E|f - f∘flip_i| / 2 per coordinate
  Vec per_coordinate_l2;  // sum over S containing i of coeff(S)^2
  double total_l1 = 0.0;
  double total_l2 = 0.0;
};

// Coordinates are 0-based throughout the API.
double l1_influence(const CubeFunction& f, int i);
double l2_influence(const CubeFunction& f, int i);
double total_l1(const CubeFunction& f);
double total_l2(const CubeFunction& f);
InfluenceProfile influence_profile(const CubeFunction& f);

// Same totals through the coefficient side: total_l2 is sum |S| coeff(S)^2;
// total_l1 re-synthesizes each discrete derivative from the expansion and
// averages its absolute values. Used to cross-check the point-side routes.
double total_l1_via_fourier(const FourierExpansion& e);
double total_l2_via_fourier(const FourierExpansion& e);

// Random polynomial of degree <= d with sup norm <= 1: iid uniform values
// in [-1,1], coefficients above degree d projected away, then rescaled by
// max(1, sup norm). Deterministic in (n, d, seed).
CubeFunction random_bounded_polynomial(int n, int d, std::uint64_t seed);

}  // namespace hcube
