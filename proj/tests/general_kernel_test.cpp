// Copyright 2026 The mhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mhmc/general_kernel.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "mhmc/diagnostics.hpp"
#include "mhmc/laplace_kernel.hpp"
#include "mhmc/models/binary_quadratic.hpp"
#include "mhmc/models/gmm.hpp"
#include "mhmc/proposal.hpp"
#include "test_models.hpp"

namespace mhmc {
namespace {

// Three 3-valued sites coupled to two continuous coordinates:
// U = sum_j c_j[x_j] + 0.5 sum_i (q_i - m(x))^2 with m(x) = 0.4 sum_j x_j - 1.
class CoupledModel final : public Model {
 public:
  using Model::potential;
  std::string name() const override { return "coupled"; }
  std::size_t n_discrete() const override { return 3; }
  std::size_t n_continuous() const override { return 2; }
  std::size_t site_cardinality(std::size_t) const override { return 3; }
  double potential(std::span<const int> x, std::span<const double> q) const override {
    double u = 0.0;
    for (std::size_t j = 0; j < 3; ++j) u += cost_[j][static_cast<std::size_t>(x[j])];
    const double m = mean(x);
    for (double v : q) u += 0.5 * (v - m) * (v - m);
    return u;
  }
  void grad_q(std::span<const int> x, std::span<const double> q, std::span<double> out) const override {
    const double m = mean(x);
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i] - m;
  }

 private:
  static double mean(std::span<const int> x) { return 0.4 * (x[0] + x[1] + x[2]) - 1.0; }
  double cost_[3][3] = {{0.0, 0.5, 1.0}, {0.3, 0.0, 0.2}, {1.2, 0.1, 0.0}};
};

// Records the values an informed proposal draws, or replays a fixed script.
class ScriptedProposal final : public Proposal {
 public:
  ScriptedProposal() = default;
  explicit ScriptedProposal(std::vector<int> script) : replay_(true), script_(std::move(script)) {}
  ProposedMove propose(std::size_t j, const MixedPoint& point, const Model& model, Rng& rng) override {
    if (!replay_) return inner_.propose(j, point, model, rng);
    if (next_ >= script_.size()) throw std::out_of_range("script exhausted");
    return inner_.evaluate(j, point, script_[next_++], model);
  }
  ProposedMove evaluate(std::size_t j, const MixedPoint& point, int to, const Model& model) const override {
    return inner_.evaluate(j, point, to, model);
  }
  std::size_t used() const { return next_; }

 private:
  LocallyInformedProposal inner_;
  bool replay_ = false;
  std::vector<int> script_;
  std::size_t next_ = 0;
};

TEST(InitialHitTime, UnitSpeedExamples) {
  const PowerKinetic laplace(1.0);
  EXPECT_DOUBLE_EQ(initial_hit_time(0.3, 1.7, 1.0, laplace), 0.7);
  EXPECT_DOUBLE_EQ(initial_hit_time(0.3, -0.2, 1.0, laplace), 0.3);
  EXPECT_DOUBLE_EQ(initial_hit_time(0.5, 0.1, 2.0, laplace), 1.5);
  EXPECT_THROW(initial_hit_time(0.3, 0.0, 1.0, laplace), std::invalid_argument);
}

TEST(InitialHitTime, GaussianMomentumAgreesWithTimeStepping) {
  const PowerKinetic kin(2.0);
  const double t = initial_hit_time(0.25, 0.5, 1.0, kin);
  EXPECT_DOUBLE_EQ(t, 0.75);
  // Flat potential: p stays constant and q^D moves at k'(p) until it reaches tau.
  double q = 0.25;
  double elapsed = 0.0;
  const double dt = 1e-6;
  while (q < 1.0) {
    q += dt * 2.0 * 0.5;
    elapsed += dt;
  }
  EXPECT_NEAR(elapsed, t, 1e-4);
}

TEST(Refract, Examples) {
  const PowerKinetic laplace(1.0);
  const PowerKinetic gauss(2.0);
  EXPECT_EQ(refract(1.3, 0.0, laplace), 1.3);
  EXPECT_EQ(refract(-0.4, 0.0, gauss), -0.4);
  EXPECT_DOUBLE_EQ(refract(2.0, 0.5, laplace), 1.5);
  const double p = refract(-2.0, 1.0, gauss);
  EXPECT_NEAR(p, -std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(p * p, 4.0 - 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(refract(1.0, -2.0, laplace), 3.0);
  EXPECT_THROW(refract(1.0, 1.0, laplace), std::domain_error);
  EXPECT_THROW(refract(1.0, 1.5, laplace), std::domain_error);
}

TEST(GeneralStep, NoDiscreteSitesIsBitForBitHmc) {
  const testing::GaussianModel model(2);
  const PowerKinetic kin(1.0);
  Rng rng(1);
  Rng oracle(1);
  MixedPoint point{{}, {0.8, -0.6}};
  std::vector<double> q = point.q;
  AuxiliaryState aux;
  std::size_t accepts = 0;
  for (int it = 0; it < 100; ++it) {
    std::vector<double> pC{std::sin(it + 1.0), std::cos(it + 1.0)};
    std::vector<double> p = pC;
    const StepStats stats = general_step(point, aux, pC, 1.3, model, kin, 0.1, rng);

    auto energy = [](const std::vector<double>& qv, const std::vector<double>& pv) {
      double u = 0.0;
      for (double v : qv) u += 0.5 * v * v;
      double k = 0.0;
      for (double v : pv) k += v * v * 1.0;
      return (u + 0.0) + 0.5 * k;
    };
    std::vector<double> qq = q;
    const double h0 = energy(qq, p);
    const auto n = static_cast<std::size_t>(std::ceil(1.3 / 0.1));
    const double eta = 1.3 / static_cast<double>(n);
    double g[2] = {qq[0], qq[1]};
    for (std::size_t s = 0; s < n; ++s) {
      for (int i = 0; i < 2; ++i) p[i] -= 0.5 * eta * g[i];
      for (int i = 0; i < 2; ++i) qq[i] += eta * p[i] * 1.0;
      g[0] = qq[0];
      g[1] = qq[1];
      for (int i = 0; i < 2; ++i) p[i] -= 0.5 * eta * g[i];
    }
    const double err = energy(qq, p) - h0;
    ASSERT_EQ(stats.energy_error, err);
    const bool accept = oracle.uniform() < std::exp(-err);
    ASSERT_EQ(stats.accepted, accept);
    if (accept) {
      ++accepts;
      q = qq;
      ASSERT_EQ(pC[0], -p[0]);
      ASSERT_EQ(pC[1], -p[1]);
    }
    ASSERT_EQ(point.q, q);
  }
  EXPECT_GT(accepts, 50u);
}

TEST(IntegrateTrajectory, FlatPotentialRefractsEveryEvent) {
  const testing::FlatModel model(3, 1, 2);
  for (double beta : {2.0 / 3.0, 1.0, 2.0}) {
    const PowerKinetic kin(beta);
    Rng rng(2);
    MixedPoint point{{0, 1, 0}, {0.0}};
    AuxiliaryState aux = sample_auxiliary(3, 1.0, kin, rng);
    const AuxiliaryState before = aux;
    std::vector<double> pC{0.7};
    std::vector<BoundaryEvent> events;
    LocallyInformedProposal proposal;
    const auto stats =
        integrate_trajectory(point, aux, pC, 20.0, model, kin, 0.5, proposal, rng, {}, &events);
    ASSERT_GT(events.size(), 5u) << "beta " << beta;
    EXPECT_EQ(stats.n_events, events.size());
    EXPECT_EQ(stats.n_discrete_accepts, events.size());
    double k0 = 0.0;
    double k1 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(std::abs(aux.pD[i]), std::abs(before.pD[i]), 1e-12);
      k0 += kin.k(before.pD[i]);
      k1 += kin.k(aux.pD[i]);
    }
    EXPECT_NEAR(k1, k0, 1e-12);
    for (const auto& e : events) {
      EXPECT_TRUE(e.refracted);
      EXPECT_EQ(e.delta_energy, 0.0);
      EXPECT_NE(e.proposed, e.from);
    }
    EXPECT_DOUBLE_EQ(pC[0], 0.7);
    EXPECT_NEAR(point.q[0], 0.7 * 20.0, 1e-10);
  }
}

TEST(IntegrateTrajectory, SimultaneousHitsResolveToLowestIndex) {
  const testing::FlatModel model(3, 0, 2);
  const PowerKinetic kin(1.0);
  Rng rng(3);
  MixedPoint point{{0, 0, 0}, {}};
  AuxiliaryState aux{{0.5, 0.5, 0.5}, {1.0, 1.0, 1.0}, 1.0};
  std::vector<double> pC;
  std::vector<BoundaryEvent> events;
  LocallyInformedProposal proposal;
  integrate_trajectory(point, aux, pC, 0.6, model, kin, 0.1, proposal, rng, {}, &events);
  ASSERT_EQ(events.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(events[i].site, i);
    EXPECT_DOUBLE_EQ(events[i].time, 0.5);
  }
  EXPECT_EQ(point.x, (std::vector<int>{1, 1, 1}));
}

TEST(IntegrateTrajectory, ReflectsWhenKineticEnergyIsInsufficient) {
  // Site 0 costs 5 to leave value 0; a momentum of 0.5 cannot pay for it.
  const testing::TableModel model(std::vector<std::vector<double>>{{0.0, 5.0}});
  const PowerKinetic kin(1.0);
  Rng rng(4);
  MixedPoint point{{0}, {}};
  AuxiliaryState aux{{0.9}, {0.5}, 1.0};
  std::vector<double> pC;
  std::vector<BoundaryEvent> events;
  LocallyInformedProposal proposal;
  integrate_trajectory(point, aux, pC, 0.5, model, kin, 0.1, proposal, rng, {}, &events);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_FALSE(events[0].refracted);
  EXPECT_DOUBLE_EQ(events[0].delta_energy, 5.0);
  EXPECT_EQ(point.x[0], 0);
  EXPECT_EQ(aux.pD[0], -0.5);
  EXPECT_NEAR(aux.qD[0], 0.6, 1e-15);
}

TEST(IntegrateTrajectory, PathReversalWithReplayedProposals) {
  const CoupledModel model;
  for (double beta : {2.0 / 3.0, 1.0, 2.0}) {
    const PowerKinetic kin(beta);
    Rng rng(5);
    std::size_t total_events = 0;
    for (int trial = 0; trial < 50; ++trial) {
      MixedPoint point{{static_cast<int>(rng.index(3)), static_cast<int>(rng.index(3)),
                        static_cast<int>(rng.index(3))},
                       {rng.normal(), rng.normal()}};
      AuxiliaryState aux = sample_auxiliary(3, 1.0, kin, rng);
      std::vector<double> pC{rng.normal(), rng.normal()};
      const MixedPoint point0 = point;
      const AuxiliaryState aux0 = aux;
      const std::vector<double> pC0 = pC;
      const double T = 2.0 + rng.uniform();

      ScriptedProposal recorder;
      std::vector<BoundaryEvent> events;
      ASSERT_TRUE(integrate_trajectory(point, aux, pC, T, model, kin, 0.05, recorder, rng, {}, &events)
                      .finite);
      total_events += events.size();

      // Backwards the last event comes first. A refraction has to propose the
      // value it left; a reflection proposes the same rejected value again.
      std::vector<int> script;
      for (auto it = events.rbegin(); it != events.rend(); ++it) {
        script.push_back(it->refracted ? it->from : it->proposed);
      }
      for (auto& p : aux.pD) p = -p;
      for (auto& p : pC) p = -p;
      ScriptedProposal replay(script);
      Rng unused(0);
      std::vector<BoundaryEvent> back;
      integrate_trajectory(point, aux, pC, T, model, kin, 0.05, replay, unused, {}, &back);
      for (auto& p : aux.pD) p = -p;
      for (auto& p : pC) p = -p;

      ASSERT_EQ(back.size(), events.size()) << "beta " << beta << " trial " << trial;
      EXPECT_EQ(replay.used(), script.size());
      EXPECT_EQ(point.x, point0.x);
      for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(point.q[i], point0.q[i], 1e-8);
        EXPECT_NEAR(pC[i], pC0[i], 1e-8);
      }
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(aux.qD[i], aux0.qD[i], 1e-8);
        EXPECT_NEAR(aux.pD[i], aux0.pD[i], 1e-8);
      }
    }
    EXPECT_GT(total_events, 100u) << "beta " << beta;
  }
}

TEST(GeneralStep, RejectRestoresEveryInput) {
  const CoupledModel model;
  const PowerKinetic kin(1.0);
  Rng rng(6);
  std::size_t rejects = 0;
  for (int it = 0; it < 300 && rejects < 5; ++it) {
    MixedPoint point{{0, 1, 2}, {0.3, -0.2}};
    AuxiliaryState aux = sample_auxiliary(3, 1.0, kin, rng);
    std::vector<double> pC{rng.normal(), rng.normal()};
    const MixedPoint point0 = point;
    const AuxiliaryState aux0 = aux;
    const std::vector<double> pC0 = pC;
    // A coarse integrator makes rejections common.
    const StepStats s = general_step(point, aux, pC, 3.0, model, kin, 1.5, rng);
    if (s.accepted) continue;
    ++rejects;
    EXPECT_EQ(point, point0);
    EXPECT_EQ(aux, aux0);
    EXPECT_EQ(pC, pC0);
  }
  EXPECT_EQ(rejects, 5u);
}

TEST(GeneralStep, InvalidInputsThrow) {
  const CoupledModel model;
  const PowerKinetic kin(1.0);
  Rng rng(7);
  MixedPoint point{{0, 0, 0}, {0.0, 0.0}};
  AuxiliaryState aux = sample_auxiliary(3, 1.0, kin, rng);
  std::vector<double> pC{0.0, 0.0};
  std::vector<double> short_pC{0.0};
  AuxiliaryState short_aux = sample_auxiliary(2, 1.0, kin, rng);
  EXPECT_THROW(general_step(point, short_aux, pC, 1.0, model, kin, 0.1, rng), std::invalid_argument);
  EXPECT_THROW(general_step(point, aux, short_pC, 1.0, model, kin, 0.1, rng), std::invalid_argument);
  EXPECT_THROW(general_step(point, aux, pC, 0.0, model, kin, 0.1, rng), std::invalid_argument);
  EXPECT_THROW(general_step(point, aux, pC, 1.0, model, kin, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(validate(GeneralKernelParams{1.0, 0.0, 0.1, 1.0, true, {}}), std::invalid_argument);
  EXPECT_THROW(validate(GeneralKernelParams{-1.0, 1.0, 0.1, 1.0, true, {}}), std::invalid_argument);
  EXPECT_THROW(validate(GeneralKernelParams{1.0, 1.0, 0.1, 0.0, true, {}}), std::invalid_argument);
}

std::vector<double> enumerate_binary_frequencies(const models::BinaryQuadraticModel& model,
                                                 GeneralKernelParams params, std::size_t n,
                                                 std::uint64_t seed) {
  GeneralSampler sampler(model, params);
  Rng rng(seed);
  MixedPoint point = model.initial_point();
  for (int b = 0; b < 1000; ++b) sampler.step(point, rng);
  std::vector<double> freq(model.n_discrete(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sampler.step(point, rng);
    for (std::size_t j = 0; j < freq.size(); ++j) freq[j] += point.x[j];
  }
  for (auto& f : freq) f /= static_cast<double>(n);
  return freq;
}

TEST(GeneralSampler, BinaryMarginalsMatchEnumeration) {
  const auto spec = models::random_binary_quadratic(5, 11);
  const models::BinaryQuadraticModel model(spec);
  const auto exact = models::binary_quadratic_enumerate(spec).marginals;
  for (double beta : {1.0, 2.0}) {
    GeneralKernelParams params;
    params.T = 2.5;
    params.beta = beta;
    const auto freq = enumerate_binary_frequencies(model, params, 50000, 8);
    for (std::size_t j = 0; j < exact.size(); ++j) {
      EXPECT_NEAR(freq[j], exact[j], 0.015) << "beta " << beta << " site " << j;
    }
  }
}

TEST(GeneralSampler, PersistentAuxiliaryLocationIsStillExact) {
  const auto spec = models::random_binary_quadratic(5, 11);
  const models::BinaryQuadraticModel model(spec);
  const auto exact = models::binary_quadratic_enumerate(spec).marginals;
  GeneralKernelParams params;
  params.T = 2.5;
  params.resample_aux = false;
  const auto freq = enumerate_binary_frequencies(model, params, 50000, 9);
  for (std::size_t j = 0; j < exact.size(); ++j) EXPECT_NEAR(freq[j], exact[j], 0.015);
}

TEST(GeneralSampler, PersistentAuxiliaryRedrawsOnlyMomenta) {
  const CoupledModel model;
  GeneralKernelParams params;
  params.T = 1.5;
  params.resample_aux = false;
  GeneralSampler sampler(model, params);
  Rng rng(10);
  MixedPoint point{{0, 1, 2}, {0.1, 0.2}};
  EXPECT_FALSE(sampler.auxiliary().has_value());
  sampler.step(point, rng);
  ASSERT_TRUE(sampler.auxiliary().has_value());

  for (int it = 0; it < 20; ++it) {
    // Oracle: keep q^D, redraw p^D then p^C, then one general_step.
    AuxiliaryState aux = *sampler.auxiliary();
    MixedPoint expected = point;
    Rng oracle = rng;
    const PowerKinetic kin(1.0);
    for (auto& p : aux.pD) {
      p = 0.0;
      while (p == 0.0) p = kin.sample(oracle);
    }
    std::vector<double> pC{oracle.normal(), oracle.normal()};
    LocallyInformedProposal proposal;
    general_step(expected, aux, pC, 1.5, model, kin, 0.1, oracle, proposal);

    sampler.step(point, rng);
    ASSERT_EQ(point, expected);
    ASSERT_EQ(sampler.auxiliary()->qD, aux.qD);
  }
}

// Many short chains started from exact draws: the end points are again exact
// draws, so their distribution is compared against fresh reference draws.
std::vector<double> end_points(Sampler& sampler, const Model& model, std::size_t chains,
                               std::size_t steps, std::size_t column, Rng& rng) {
  std::vector<double> out;
  out.reserve(chains);
  for (std::size_t c = 0; c < chains; ++c) {
    MixedPoint p = model.sample_exact(rng);
    for (std::size_t s = 0; s < steps; ++s) sampler.step(p, rng);
    out.push_back(column == 0 ? static_cast<double>(p.x[0]) : p.q[column - 1]);
  }
  return out;
}

TEST(GeneralSampler, UnitBetaAgreesWithLaplaceKernel) {
  const models::GmmModel model(models::gmm1d_preset());
  GeneralKernelParams gp;
  gp.T = 5.0;
  gp.integrator_eps = 0.05;
  GeneralSampler general(model, gp);
  LaplaceSampler laplace(model, LaplaceKernelParams{0.05, 5.0, 20, 1, {}});
  Rng rng(11);
  const std::size_t n = 4000;
  const auto g = end_points(general, model, n, 3, 1, rng);
  const auto l = end_points(laplace, model, n, 3, 1, rng);
  std::vector<double> ref(n);
  for (auto& v : ref) v = model.sample_exact(rng).q[0];
  EXPECT_GT(ks_two_sample_pvalue(ks_two_sample(g, l), n, n), 0.01);
  EXPECT_GT(ks_two_sample_pvalue(ks_two_sample(g, ref), n, n), 0.01);
}

}  // namespace
}  // namespace mhmc
