#pragma once

#include "hcube/common.hpp"

#include <atomic>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hcube {

// Points of {-1,+1}^n are encoded by the bits of an n-bit index: bit i
// clear means coordinate i is +1, bit i set means -1. Characters then
// reduce to a popcount parity and coordinate flips to an XOR.

namespace detail {
inline std::atomic<int>& dimension_cap_slot() {
  static std::atomic<int> cap{26};
  return cap;
}
}  // namespace detail

inline int dimension_cap() { return detail::dimension_cap_slot().load(); }

inline void set_dimension_cap(int n) {
  if (n < 0 || n > 30)
    throw std::invalid_argument("dimension cap must be in [0, 30]");
  detail::dimension_cap_slot().store(n);
}

inline int check_dimension(int n) {
  if (n < 0 || n > dimension_cap())
    throw std::invalid_argument("dimension out of range");
  return n;
}

struct CubePoint {
  Mask index = 0;
  int n = 0;
};

inline CubePoint flip_point(CubePoint x, Mask coords) {
  return {x.index ^ coords, x.n};
}

// chi_S(x) as +-1.
inline int chi(Mask s, Mask x) { return (popcount(s & x) & 1) ? -1 : 1; }

// Coordinate i of the point with the given index.
inline int coordinate_sign(Mask index, int i) {
  return (index >> i) & 1 ? -1 : 1;
}

template <class ScalarT>
class CubeFunctionT {
 public:
  using Scalar = ScalarT;
  using VecT = Eigen::Vector<ScalarT, Eigen::Dynamic>;

  CubeFunctionT() = default;

  template <class Derived>
  CubeFunctionT(int n, const Eigen::MatrixBase<Derived>& values)
      : n_(check_dimension(n)), values_(values) {
    if (values_.size() != Index{1} << n_)
      throw std::invalid_argument("value table must have 2^n entries");
    if (!values_.allFinite())
      throw std::invalid_argument("value table must be finite");
  }

  CubeFunctionT(int n, VecT&& values) : n_(check_dimension(n)) {
    if (values.size() != Index{1} << n_)
      throw std::invalid_argument("value table must have 2^n entries");
    if (!values.allFinite())
      throw std::invalid_argument("value table must be finite");
    values_ = std::move(values);
  }

  static CubeFunctionT constant(int n, ScalarT c) {
    return CubeFunctionT(
        n, VecT::Constant(Index{1} << check_dimension(n), c));
  }

  int n() const { return n_; }
  Index size() const { return values_.size(); }
  const VecT& values() const { return values_; }
  ScalarT operator()(Mask x) const {
    return values_[static_cast<Index>(x)];
  }
  ScalarT operator()(CubePoint x) const { return (*this)(x.index); }

 private:
  int n_ = 0;
  VecT values_ = VecT::Constant(1, ScalarT(0));
};

template <class ScalarT>
class FourierExpansionT {
 public:
  using Scalar = ScalarT;
  using VecT = Eigen::Vector<ScalarT, Eigen::Dynamic>;

  FourierExpansionT() = default;

  template <class Derived>
  FourierExpansionT(int n, const Eigen::MatrixBase<Derived>& coeffs)
      : n_(check_dimension(n)), coeffs_(coeffs) {
    if (coeffs_.size() != Index{1} << n_)
      throw std::invalid_argument("coefficient table must have 2^n entries");
    if (!coeffs_.allFinite())
      throw std::invalid_argument("coefficient table must be finite");
  }

  FourierExpansionT(int n, VecT&& coeffs) : n_(check_dimension(n)) {
    if (coeffs.size() != Index{1} << n_)
      throw std::invalid_argument("coefficient table must have 2^n entries");
    if (!coeffs.allFinite())
      throw std::invalid_argument("coefficient table must be finite");
    coeffs_ = std::move(coeffs);
  }

  static FourierExpansionT zero(int n) {
    return FourierExpansionT(n,
                             VecT::Zero(Index{1} << check_dimension(n)));
  }

  int n() const { return n_; }
  Index size() const { return coeffs_.size(); }
  const VecT& coeffs() const { return coeffs_; }
  VecT& coeffs() { return coeffs_; }
  ScalarT coeff(Mask s) const { return coeffs_[static_cast<Index>(s)]; }

 private:
  int n_ = 0;
  VecT coeffs_ = VecT::Constant(1, ScalarT(0));
};

using CubeFunction = CubeFunctionT<double>;
using FourierExpansion = FourierExpansionT<double>;

// In-place unnormalized Walsh-Hadamard butterflies. Involutive up to the
// factor 2^n. Each stratum's pairs are disjoint, so strata may be chunked
// across threads without changing a single rounding.
template <class VecT>
void walsh_hadamard_inplace(VecT& v) {
  const Index size = v.size();
  if (size <= 1) return;
  auto* data = v.data();
  for (int level = 0; (Index{1} << level) < size; ++level) {
    const Index h = Index{1} << level;
    par::for_range(size / 2, [data, h, level](Index begin, Index end) {
      for (Index p = begin; p < end; ++p) {
        const Index i0 = ((p >> level) << (level + 1)) | (p & (h - 1));
        const Index i1 = i0 + h;
        const auto a = data[i0];
        const auto b = data[i1];
        data[i0] = a + b;
        data[i1] = a - b;
      }
    });
  }
}

template <class ScalarT>
FourierExpansionT<ScalarT> fourier_transform(const CubeFunctionT<ScalarT>& f) {
  typename CubeFunctionT<ScalarT>::VecT buf = f.values();
  walsh_hadamard_inplace(buf);
  buf *= ScalarT(1) / static_cast<ScalarT>(Index{1} << f.n());
  return FourierExpansionT<ScalarT>(f.n(), std::move(buf));
}

template <class ScalarT>
CubeFunctionT<ScalarT> inverse_transform(const FourierExpansionT<ScalarT>& e) {
  typename FourierExpansionT<ScalarT>::VecT buf = e.coeffs();
  walsh_hadamard_inplace(buf);
  return CubeFunctionT<ScalarT>(e.n(), std::move(buf));
}

// Largest |S| carrying a coefficient above tol; -1 would make no sense for
// the zero function, which reports degree 0.
inline int degree(const FourierExpansion& e, double tol = 1e-12) {
  if (tol < 0) throw std::invalid_argument("degree: tol must be >= 0");
  int deg = 0;
  const auto& c = e.coeffs();
  for (Index s = 0; s < c.size(); ++s) {
    if (std::abs(c[s]) > tol)
      deg = std::max(deg, popcount(static_cast<Mask>(s)));
  }
  return deg;
}

inline double range_width(const CubeFunction& f) {
  return f.values().maxCoeff() - f.values().minCoeff();
}

inline double sup_norm(const CubeFunction& f) {
  return f.values().cwiseAbs().maxCoeff();
}

// Normalized q-norm (E|f|^q)^(1/q); q = inf gives the sup norm.
inline double norm(const CubeFunction& f, double q) {
  if (std::isnan(q) || q < 1.0)
    throw std::invalid_argument("norm: q must be >= 1");
  if (std::isinf(q)) return sup_norm(f);
  const auto& v = f.values();
  const double inv_size = 1.0 / static_cast<double>(v.size());
  if (q == 1.0)
    return inv_size * blocked_sum(v.size(),
                                  [&](Index i) { return std::abs(v[i]); });
  if (q == 2.0)
    return std::sqrt(inv_size *
                     blocked_sum(v.size(), [&](Index i) { return v[i] * v[i]; }));
  const double s = blocked_sum(
      v.size(), [&](Index i) { return std::pow(std::abs(v[i]), q); });
  return std::pow(inv_size * s, 1.0 / q);
}

// E[f g], compensated.
inline double inner_product(const CubeFunction& f, const CubeFunction& g) {
  if (f.n() != g.n())
    throw std::invalid_argument("inner_product: dimension mismatch");
  const auto& a = f.values();
  const auto& b = g.values();
  return blocked_sum(a.size(), [&](Index i) { return a[i] * b[i]; }) /
         static_cast<double>(a.size());
}

// Evaluates an expansion at one point without materializing the inverse
// transform.
inline double evaluate_expansion(const FourierExpansion& e, Mask x) {
  const auto& c = e.coeffs();
  return blocked_sum(c.size(), [&](Index s) {
    return chi(static_cast<Mask>(s), x) * c[s];
  });
}

}  // namespace hcube
