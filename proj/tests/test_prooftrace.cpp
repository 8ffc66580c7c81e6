#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcube/influence.hpp"
#include "hcube/prooftrace.hpp"
#include "hcube/rng.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdint>

using namespace hcube;

namespace {

FourierExpansion random_layer(int n, int d, std::uint64_t seed) {
  auto g = rng::Stream::for_block(seed, rng::kStreamEnsemble, 0);
  Vec c = Vec::Zero(Index{1} << n);
  for (Index r = 0; r < c.size(); ++r)
    if (popcount(static_cast<Mask>(r)) == d) c[r] = g.uniform_pm1();
  return FourierExpansion(n, c);
}

FourierExpansion random_low_degree(int n, int d, std::uint64_t seed) {
  auto g = rng::Stream::for_block(seed, rng::kStreamEnsemble, 1);
  Vec c = Vec::Zero(Index{1} << n);
  for (Index r = 0; r < c.size(); ++r)
    if (popcount(static_cast<Mask>(r)) <= d) c[r] = g.uniform_pm1();
  return FourierExpansion(n, c);
}

}  // namespace

TEST_CASE("selector part keeps exactly the singly-met characters") {
  Vec c = Vec::Zero(16);
  c[0] = 0.5;
  c[1] = 1.0;
  c[3] = 2.0;
  c[6] = 3.0;
  c[7] = 4.0;
  const FourierExpansion e(4, c);

  const FourierExpansion qa = q_s(e, Mask{1});
  CHECK(qa.coeffs()[1] == 1.0);
  CHECK(qa.coeffs()[3] == 2.0);
  CHECK(qa.coeffs()[7] == 4.0);
  CHECK(qa.coeffs()[0] == 0.0);
  CHECK(qa.coeffs()[6] == 0.0);

  const FourierExpansion qb = q_s(e, Mask{6});
  CHECK(qb.coeffs()[3] == 2.0);
  for (const Index r : {0, 1, 2, 4, 5, 6, 7})
    if (r != 3) CHECK(qb.coeffs()[r] == 0.0);

  const FourierExpansion qe = q_s(e, Mask{0});
  CHECK((qe.coeffs().array() == 0.0).all());
}

TEST_CASE("expected shift identity holds pointwise") {
  auto g = rng::Stream::for_block(11, rng::kStreamEnsemble, 2);
  const CubeFunction f = oracle::random_function(8, g);
  for (const Mask s : {Mask{0}, Mask{1}, Mask{0x35}, Mask{0xff}}) {
    for (const double alpha : {0.0, 0.25, 0.37, 1.0}) {
      CHECK(expected_shift_identity_gap(f, s, alpha) <= 1e-10);
    }
  }
}

TEST_CASE("expected shift rejects bad arguments") {
  auto g = rng::Stream::for_block(12, rng::kStreamEnsemble, 3);
  const CubeFunction f = oracle::random_function(4, g);
  CHECK_THROWS_AS(expected_shift_identity_gap(f, Mask{1}, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_shift_identity_gap(f, Mask{1}, 1.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_shift_identity_gap(f, Mask{1} << 4, 0.5),
                  std::invalid_argument);
  const CubeFunction wide = CubeFunction::constant(21, 0.0);
  CHECK_THROWS_AS(
      expected_shift_identity_gap(wide, (Mask{1} << 21) - 1, 0.5),
      std::invalid_argument);
}

TEST_CASE("homogeneous estimator matches the parity closed form") {
  // Full parity on d coordinates: the inner sum is 1 exactly when the
  // selector picks one coordinate, so the mean is d (1/d) (1-1/d)^(d-1).
  const int d = 4;
  Vec c = Vec::Zero(16);
  c[15] = 1.0;
  const CubeFunction f = inverse_transform(FourierExpansion(4, c));
  const McEstimate est = estimate_b_homogeneous(f, d, 200000, 99);
  const double exact = d * (1.0 / d) * std::pow(1.0 - 1.0 / d, d - 1);
  CHECK(std::abs(est.mean - exact) <= 5.0 * est.std_error + 1e-9);
  CHECK(est.trials == 200000);
  CHECK(est.std_error > 0.0);
}

TEST_CASE("general estimator matches the parity closed form") {
  const int d = 3;
  Vec c = Vec::Zero(8);
  c[7] = 1.0;
  const FourierExpansion e(3, c);
  const McEstimate est = estimate_b_general(e, d, 200000, 7);
  // rho'^3 * 3 * (1/9) * (8/9)^2 = 0.375 exactly.
  CHECK(std::abs(est.mean - 0.375) <= 5.0 * est.std_error + 1e-9);
}

TEST_CASE("homogeneous estimator agrees with full enumeration") {
  const FourierExpansion e = random_layer(8, 3, 2024);
  const CubeFunction f = inverse_transform(e);
  const double exact = oracle::exhaustive_b(e, 1.0 / 3.0);
  const McEstimate est = estimate_b_homogeneous(f, 3, 300000, 17);
  CHECK(exact > 0.0);
  CHECK(std::abs(est.mean - exact) <= 4.0 * est.std_error + 1e-9);
}

TEST_CASE("general estimator agrees with full enumeration") {
  const int d = 3;
  const FourierExpansion e = random_low_degree(8, d, 513);
  const double rho = 1.0 + 1.0 / (static_cast<double>(d) * d - 1.0);
  Vec weighted = e.coeffs();
  for (Index r = 0; r < weighted.size(); ++r)
    weighted[r] *= std::pow(rho, popcount(static_cast<Mask>(r)));
  const double exact =
      oracle::exhaustive_b(FourierExpansion(8, weighted), 1.0 / 9.0);
  const McEstimate est = estimate_b_general(e, d, 300000, 31);
  CHECK(std::abs(est.mean - exact) <= 4.0 * est.std_error + 1e-9);
}

TEST_CASE("estimators are seed-deterministic and thread-stable") {
  const FourierExpansion e = random_low_degree(6, 3, 88);
  const McEstimate a = estimate_b_general(e, 3, 50000, 5);
  const McEstimate b = estimate_b_general(e, 3, 50000, 5);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);

  par::set_thread_count(4);
  const McEstimate c = estimate_b_general(e, 3, 50000, 5);
  par::set_thread_count(1);
  CHECK(c.mean == a.mean);
  CHECK(c.std_error == a.std_error);

  const McEstimate other = estimate_b_general(e, 3, 50000, 6);
  CHECK(other.mean != a.mean);
}

TEST_CASE("estimator input validation") {
  Vec c = Vec::Zero(8);
  c[3] = 1.0;
  c[1] = 0.5;
  const FourierExpansion e(3, c);
  const CubeFunction f = inverse_transform(e);
  CHECK_THROWS_AS(estimate_b_homogeneous(f, 2, 1000, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_b_homogeneous(f, 0, 1000, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_b_general(e, 1, 1000, 0), std::invalid_argument);
  Vec high = Vec::Zero(8);
  high[7] = 1.0;
  CHECK_THROWS_AS(estimate_b_general(FourierExpansion(3, high), 2, 1000, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_b_general(e, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("trace flags degree below two instead of running the chain") {
  Vec c = Vec::Zero(4);
  c[1] = 1.0;
  const CubeFunction dict = inverse_transform(FourierExpansion(2, c));
  const TraceReport rep = theorem_trace(dict);
  CHECK(rep.degenerate_low_degree);
  CHECK(rep.d == 1);
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.inf_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.b_estimate == 0.0);
}

TEST_CASE("trace takes the homogeneous branch on a single layer") {
  Vec c = Vec::Zero(8);
  c[7] = 1.0;
  const CubeFunction f = inverse_transform(FourierExpansion(3, c));
  TraceOptions opts;
  opts.trials = 100000;
  opts.seed = 3;
  const TraceReport rep = theorem_trace(f, opts);
  CHECK(rep.homogeneous);
  CHECK(!rep.degenerate_low_degree);
  CHECK(rep.d == 3);
  CHECK(rep.inf_total == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(rep.b_estimate - 4.0 / 9.0) <=
        5.0 * rep.b_std_error + 1e-9);
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.qs_max >= 0.0);
  CHECK(rep.ratio_b_lower == doctest::Approx(rep.b_estimate /
                                             (rep.inf_total / 3.0)));
}

TEST_CASE("trace general branch satisfies both contracts on mixed input") {
  const CubeFunction f = random_bounded_polynomial(8, 3, 41);
  TraceOptions opts;
  opts.trials = 60000;
  opts.seed = 41;
  const TraceReport rep = theorem_trace(f, opts);
  CHECK(!rep.homogeneous);
  CHECK(rep.d == 3);
  CHECK(rep.range_width <= 2.0 + 1e-12);
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.ratio_qs >= 0.0);
}

TEST_CASE("trace mode forcing") {
  const CubeFunction f = random_bounded_polynomial(6, 3, 4242);
  TraceOptions opts;
  opts.trials = 20000;
  opts.mode = 1;
  CHECK_THROWS_AS(theorem_trace(f, opts), std::invalid_argument);

  Vec c = Vec::Zero(8);
  c[7] = 0.75;
  const CubeFunction layer = inverse_transform(FourierExpansion(3, c));
  opts.mode = 2;
  const TraceReport rep = theorem_trace(layer, opts);
  CHECK(!rep.homogeneous);
  CHECK(rep.d == 3);
}

TEST_CASE("trace reports are reproducible") {
  const CubeFunction f = random_bounded_polynomial(7, 3, 555);
  TraceOptions opts;
  opts.trials = 30000;
  opts.seed = 12;
  const TraceReport a = theorem_trace(f, opts);
  const TraceReport b = theorem_trace(f, opts);
  CHECK(a.b_estimate == b.b_estimate);
  CHECK(a.b_std_error == b.b_std_error);
  CHECK(a.qs_max == b.qs_max);
  CHECK(a.inf_total == b.inf_total);
}
