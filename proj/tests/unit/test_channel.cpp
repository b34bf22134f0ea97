#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "qillum/channel.hpp"
#include "qillum/eigensystem.hpp"
#include "qillum/engineer.hpp"
#include "qillum/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qillum;
using namespace qillum::channel;
using fock::FockDims;

namespace {

double mean_photons(const DensityOperator& single) {
  double m = 0.0;
  for (Eigen::Index n = 0; n < single.matrix().rows(); ++n) m += static_cast<double>(n) * single.matrix()(n, n).real();
  return m;
}

DensityOperator mode(const DensityOperator& rho, std::size_t m) {
  const std::array<std::size_t, 1> keep{m};
  return fock::partial_trace(rho, keep);
}

}  // namespace

TEST(Attenuator, TransparentIsIdentityMap) {
  gen::Source src(1);
  const FockDims d = FockDims::uniform(2, 5);
  const DensityOperator rho(d, src.density(36));
  const auto k = thermal_attenuator_kraus(1.0, 1.0, 5);
  EXPECT_LT(fock::max_abs(apply_channel(k, rho, 1).matrix() - rho.matrix()), 1e-8);
  for (const auto& op : k.operators()) {
    const CMatrix& m = op.matrix();
    EXPECT_LT(fock::max_abs(m - m(0, 0) * CMatrix::Identity(6, 6)), 1e-15);
  }
}

TEST(Attenuator, FullSwapOutputsEnvironment) {
  gen::Source src(2);
  const FockDims d = FockDims::uniform(2, 8);
  for (int trial = 0; trial < 3; ++trial) {
    const DensityOperator rho(d, src.density(81));
    const auto out = apply_channel(thermal_attenuator_kraus(0.0, 0.7, 8), rho, 1);
    EXPECT_LT(fock::max_abs(mode(out, 1).matrix() - fock::thermal_state(0.7, 8).matrix()), 1e-8);
  }
}

TEST(Attenuator, MatchesThreeModeDilation) {
  const int n = 6;
  const int env = 12;
  const double kappa = 0.3;
  const double n_env = 1.0;
  const oracle::CMatrix u = oracle::beam_splitter(std::acos(std::sqrt(kappa)), n + env);
  const auto k = thermal_attenuator_kraus(kappa, n_env, n, env, 1.0);
  gen::Source src(606);
  const FockDims d = FockDims::uniform(2, n);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho(d, src.density(49));
    const CMatrix ref = oracle::dilate_attenuator(rho.matrix(), n, env, u, n_env);
    EXPECT_LE(fock::max_abs(apply_channel(k, rho, 1).matrix() - ref), 1e-10);
  }
}

TEST(Attenuator, RejectsShallowEnvironment) {
  EXPECT_THROW(thermal_attenuator_kraus(0.3, 1.0, 6, 12), InvalidArgument);
  EXPECT_EQ(default_env_cutoff(1.0 / 0.99, 24), 26);
  EXPECT_EQ(default_env_cutoff(0.01, 24), 24);
}

TEST(Attenuator, CompletenessAndTracePreservation) {
  const int n = 40;
  const auto k = thermal_attenuator_kraus(0.2, 1.0, n);
  const int env = default_env_cutoff(1.0, n);
  EXPECT_LE(k.completeness_defect(n - env - 1), 1e-8);
  EXPECT_TRUE(k.dense_operators().empty());

  gen::Source src(9);
  const FockDims single({n});
  CMatrix low = CMatrix::Zero(n + 1, n + 1);
  low.topLeftCorner(n - env, n - env) = src.density(n - env);
  const DensityOperator rho(single, low);
  const auto out = apply_channel(k, rho, 0);
  EXPECT_NEAR(out.trace(), rho.trace(), 1e-8);
  EXPECT_GE(fock::HermitianEigensystem(out.matrix()).min_value(), -1e-10);
}

TEST(PureLoss, Examples) {
  gen::Source src(4);
  const FockDims d = FockDims::uniform(2, 4);
  const DensityOperator rho(d, src.density(25));
  EXPECT_LT(fock::max_abs(pure_loss(rho, 1, 1.0).matrix() - rho.matrix()), 1e-15);
  const auto vac = mode(pure_loss(rho, 1, 0.0), 1);
  CMatrix v = CMatrix::Zero(5, 5);
  v(0, 0) = 1.0;
  EXPECT_LT(fock::max_abs(vac.matrix() - v), 1e-10);

  const auto one = DensityOperator::pure(fock::FockRegister::basis(FockDims({3}), std::array<int, 1>{1}));
  const auto damped = pure_loss(one, 0, 0.64);
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 0.36;
  expect(1, 1) = 0.64;
  EXPECT_LT(fock::max_abs(damped.matrix() - expect), 1e-15);
  EXPECT_THROW(pure_loss(one, 0, 1.2), InvalidArgument);
}

TEST(PureLoss, MatchesVacuumDilationAndPreservesTrace) {
  gen::Source src(77);
  const int n = 6;
  const FockDims d = FockDims::uniform(2, n);
  for (int trial = 0; trial < 20; ++trial) {
    const double eta = src.uniform();
    const DensityOperator rho(d, src.density(49));
    const auto out = pure_loss(rho, 1, eta);
    EXPECT_LE(fock::max_abs(out.matrix() - oracle::dilate_loss(rho.matrix(), n, eta)), 1e-10);
    EXPECT_NEAR(out.trace(), rho.trace(), 1e-10);
  }
}

TEST(Hypotheses, LimitsAndTraces) {
  const auto sq = engineer::SqueezeParams::from_mean_photons(0.05);
  const auto probe = DensityOperator::pure(engineer::tmss(sq, 24));

  ChannelParams cp;
  const auto pair = hypothesis_pair(probe, cp);
  EXPECT_NEAR(pair.rho0.trace(), 1.0, 1e-6);
  EXPECT_NEAR(pair.rho1.trace(), 1.0, 1e-6);
  EXPECT_NEAR(mean_photons(mode(pair.rho1, 1)), cp.kappa * 0.05 + cp.n_th, 1e-6);

  ChannelParams mirror = cp;
  mirror.kappa = 1.0;
  EXPECT_LT(fock::max_abs(hypothesis_pair(probe, mirror).rho1.matrix() - probe.matrix()), 1e-15);
}

TEST(Hypotheses, NoReflectionLimitTraceNorm) {
  const auto sq = engineer::SqueezeParams::from_mean_photons(0.05);
  const auto probe = DensityOperator::pure(engineer::tmss(sq, 24));
  ChannelParams faint;
  faint.kappa = 1e-6;
  const auto near = hypothesis_pair(probe, faint);
  EXPECT_LE(fock::trace_norm(near.rho1.matrix() - near.rho0.matrix()), 1e-6);
}

TEST(Hypotheses, TraceDistanceVanishesAsRootKappa) {
  const auto sq = engineer::SqueezeParams::from_mean_photons(0.05);
  const auto probe = DensityOperator::pure(engineer::tmss(sq, 12));
  auto distance = [&](double kappa) {
    ChannelParams cp;
    cp.kappa = kappa;
    const auto pair = hypothesis_pair(probe, cp);
    return fock::trace_norm(pair.rho1.matrix() - pair.rho0.matrix());
  };
  const double d1 = distance(1e-6);
  const double d4 = distance(4e-6);
  EXPECT_NEAR(d4 / d1, 2.0, 1e-2);
  EXPECT_LT(distance(1e-10), 1e-4);
}

TEST(Hypotheses, ReturnPhotonNumberMatchesDilation) {
  const int n = 6;
  const int env = 12;
  const double kappa = 0.01;
  const double n_th = 0.05;
  const auto sq = engineer::SqueezeParams::from_mean_photons(0.05);
  const auto probe = DensityOperator::pure(engineer::tmss(sq, n));
  ChannelParams cp;
  cp.kappa = kappa;
  cp.n_th = n_th;
  cp.env_cutoff = env;
  const auto rho1 = hypothesis_pair(probe, cp).rho1;
  const oracle::CMatrix u = oracle::beam_splitter(std::acos(std::sqrt(kappa)), n + env);
  const CMatrix ref = oracle::dilate_attenuator(probe.matrix(), n, env, u, cp.injected_n_th());
  EXPECT_LE(fock::max_abs(rho1.matrix() - ref), 1e-10);
  const DensityOperator ref_op(probe.dims(), ref);
  EXPECT_NEAR(mean_photons(mode(rho1, 1)), mean_photons(mode(ref_op, 1)), 1e-10);
  EXPECT_NEAR(mean_photons(mode(rho1, 1)), kappa * 0.05 + n_th, 1e-6);
}

TEST(Hypotheses, LossOnlyTouchesTargetPresentState) {
  const auto sq = engineer::SqueezeParams::from_mean_photons(0.05);
  const auto probe = DensityOperator::pure(engineer::tmss(sq, 10));
  ChannelParams cp;
  const auto clean = hypothesis_pair(probe, cp);
  cp.eta = 0.1;
  const auto lossy = hypothesis_pair(probe, cp);
  EXPECT_LT(fock::max_abs(clean.rho0.matrix() - lossy.rho0.matrix()), 1e-15);
  EXPECT_GT(fock::max_abs(clean.rho1.matrix() - lossy.rho1.matrix()), 1e-3);
  EXPECT_LT(fock::max_abs(lossy.rho1.matrix() - pure_loss(clean.rho1, 1, 0.1).matrix()), 1e-15);
}

TEST(ChannelParams, Validation) {
  ChannelParams cp;
  cp.kappa = 1.5;
  EXPECT_THROW(cp.validate(), InvalidArgument);
  cp.kappa = 0.5;
  cp.eta = -0.1;
  EXPECT_THROW(cp.validate(), InvalidArgument);
  cp.eta.reset();
  EXPECT_NEAR(cp.injected_n_th(), 2.0, 1e-15);
}
