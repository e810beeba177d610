#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fog/common/errors.hpp"
#include "fog/common/random.hpp"
#include "fog/env/channel.hpp"
#include "fog/env/environment.hpp"
#include "fog/env/latency.hpp"
#include "fog/env/service_node.hpp"
#include "fog/env/topology.hpp"

namespace fog::env {
namespace {

ServiceRateModel constant_rate() {
  ServiceRateModel m;
  m.stddev = 0.0;
  m.mode = ServiceRateMode::kPerRun;
  return m;
}

ServiceNode make_node(double lambda, double mu, std::uint64_t seed = 1,
                      ServiceRateModel model = constant_rate()) {
  return ServiceNode(0, lambda, mu, model, derive_stream(seed, 0, StreamId::kQueueEvents),
                     derive_stream(seed, 0, StreamId::kServiceRate));
}

TEST(Channel, ShannonRateUnitCases) {
  EXPECT_DOUBLE_EQ(shannon_rate(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(shannon_rate(1.0, 3.0), 2.0);
}

// Values from tests/oracles/link_budget_oracle.py.
TEST(Channel, DefaultLinkBudgetMatchesOracle) {
  const ChannelParams p;
  EXPECT_NEAR(link_snr(p, 1.0), 0.7780902899885612, 1e-12);
  EXPECT_NEAR(link_rate_bps(p, 1.0), 8303285.8491650804, 1e-4);
  EXPECT_NEAR(transmission_rate(p, 1.0), 83.032858491650804, 1e-9);
  EXPECT_NEAR(transmission_rate(p, 0.5), 352.87599433268341, 1e-8);
  EXPECT_NEAR(transmission_rate(p, 2.0), 8.0565481601021463, 1e-10);
  EXPECT_NEAR(dispatch_latency({2.0, 1.0}, transmission_rate(p, 1.0)), 0.024086849908956294, 1e-14);
  EXPECT_NEAR(dispatch_latency({2.0, 1.0}, transmission_rate(p, 2.0)), 0.24824527331748026, 1e-13);
}

TEST(Channel, RateMonotoneInSnrBandwidthAndDistance) {
  ChannelParams p;
  double prev = std::numeric_limits<double>::infinity();
  for (double d = 0.05; d < 2.0; d += 0.1) {
    const double r = transmission_rate(p, d);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(shannon_rate(1.0, 2.0), shannon_rate(1.0, 2.5));
  const double narrow = transmission_rate(p, 1.0);
  p.bandwidth_hz *= 2;
  EXPECT_GT(transmission_rate(p, 1.0), narrow);
}

TEST(Channel, ValidationRejectsBadParameters) {
  ChannelParams p;
  p.bandwidth_hz = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.radius_km = -1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.tx_power_w = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Latency, DispatchLatency) {
  EXPECT_DOUBLE_EQ(dispatch_latency({1.0, 1.0}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dispatch_latency({1.0, 1.0}, 4.0), 0.25);
  EXPECT_THROW(dispatch_latency({1.0, 1.0}, 0.0), ModelError);
}

TEST(Latency, ComputationEstimate) {
  EXPECT_DOUBLE_EQ(computation_latency_estimate(4, {1.0, 1.0}, 5.0), 1.0);
  EXPECT_DOUBLE_EQ(computation_latency_estimate(0, {1.0, 1.0}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(computation_latency_estimate(9, {0.5, 2.0}, 4.0), 2.5);
  EXPECT_THROW(computation_latency_estimate(1, {1.0, 1.0}, 0.0), ModelError);
}

TEST(Latency, NormalizeLossClamp) {
  const LossConfig c{5.0};
  EXPECT_DOUBLE_EQ(normalize_loss(2.5, c), 0.5);
  EXPECT_EQ(normalize_loss(7.0, c), 1.0);
  EXPECT_EQ(normalize_loss(5.0, c), 1.0);
  EXPECT_EQ(normalize_loss(std::numeric_limits<double>::infinity(), c), 1.0);
  const auto b = combine_latency(0.25, 1.5);
  EXPECT_EQ(b.total, b.dispatch + b.compute);
}

TEST(ServiceNode, PureDeathChainEmpties) {
  auto n = make_node(0.0, 6.0);
  n.preload(3);
  n.advance(100.0);
  EXPECT_EQ(n.queue_length(), 0u);
}

TEST(ServiceNode, FastServerStaysNearEmpty) {
  auto n = make_node(1.0, 1000.0);
  double area = 0;
  for (int t = 1; t <= 2000; ++t) {
    n.advance(t);
    area += static_cast<double>(n.queue_length());
  }
  EXPECT_LT(area / 2000, 0.05);
}

TEST(ServiceNode, TimeRegressionIsAnError) {
  auto n = make_node(5.0, 6.0);
  n.advance(10.0);
  EXPECT_THROW(n.advance(9.0), ModelError);
}

TEST(ServiceNode, ClockMonotoneAndQueueNonNegative) {
  auto n = make_node(5.0, 6.0, 3, ServiceRateModel{});
  double clock = 0.0;
  for (int t = 1; t <= 500; ++t) {
    n.advance(t * 0.5);
    EXPECT_GE(n.clock(), clock);
    clock = n.clock();
    if (t % 7 == 0) {
      EXPECT_GE(n.execute(0.2), 0.0);
    }
  }
}

TEST(ServiceNode, EmptyQueueHugeRateSojournNearZero) {
  auto n = make_node(0.0, 1e6);
  EXPECT_LT(n.execute(1.0), 1e-4);
}

TEST(ServiceNode, ReplayIsDeterministic) {
  auto a = make_node(5.0, 6.0, 9, ServiceRateModel{});
  auto b = make_node(5.0, 6.0, 9, ServiceRateModel{});
  a.advance(50.0);
  b.advance(50.0);
  EXPECT_EQ(a.execute(1.0), b.execute(1.0));
  EXPECT_EQ(a.state_hash(), b.state_hash());
}

TEST(ServiceNode, PerSlotRatesVaryAndRespectFloor) {
  ServiceRateModel m;
  m.stddev = 3.0;
  auto n = make_node(0.0, 1.0, 4, m);
  double lo = 1e9, hi = -1e9;
  for (Slot s = 0; s < 200; ++s) {
    const double r = n.service_rate_in_slot(s);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  EXPECT_GE(lo, m.floor);
  EXPECT_GT(hi, lo);
}

TEST(Topology, NodesInsideDisk) {
  EnvConfig c;
  c.num_service_nodes = 6;
  Rng rng = derive_stream(42, 0, StreamId::kTopology);
  const auto t = build_topology(c, rng);
  ASSERT_EQ(t.service_positions.size(), 6u);
  for (const auto& p : t.service_positions) EXPECT_LE(p.distance_to(t.task_node), 2.0);
}

TEST(Topology, SeedDeterminism) {
  EnvConfig c;
  Rng a = derive_stream(42, 0, StreamId::kTopology), b = derive_stream(42, 0, StreamId::kTopology);
  const auto ta = build_topology(c, a), tb = build_topology(c, b);
  EXPECT_EQ(ta.service_positions, tb.service_positions);
  EXPECT_EQ(ta.link_rates, tb.link_rates);
  ASSERT_EQ(ta.nodes.size(), tb.nodes.size());
  for (std::size_t i = 0; i < ta.nodes.size(); ++i) {
    EXPECT_EQ(ta.nodes[i].arrival_rate, tb.nodes[i].arrival_rate);
    EXPECT_EQ(ta.nodes[i].service_rate, tb.nodes[i].service_rate);
  }
}

TEST(Topology, PinnedAtCentreHasMaximalRate) {
  EnvConfig c;
  c.num_service_nodes = 1;
  c.positions = {{0.0, 0.0}};
  Rng rng = derive_stream(1, 0, StreamId::kTopology);
  const double centre = build_topology(c, rng).link_rates[0];
  for (double d : {0.1, 0.5, 1.9}) {
    c.positions = {{d, 0.0}};
    EXPECT_GT(centre, build_topology(c, rng).link_rates[0]);
  }
}

TEST(Topology, ConfigErrors) {
  EnvConfig c;
  c.num_service_nodes = 0;
  Rng rng(1);
  EXPECT_THROW(build_topology(c, rng), ConfigError);
  c = {};
  c.channel.radius_km = 0.0;
  EXPECT_THROW(build_topology(c, rng), ConfigError);
}

TEST(Topology, ArrivalRules) {
  Rng rng(3);
  ArrivalRule linear;
  const auto l = linear.resolve(6, rng);
  EXPECT_EQ(l, (std::vector<double>{5.0, 5.5, 6.0, 6.5, 7.0, 7.5}));
  ArrivalRule bpu;
  bpu.kind = ArrivalRuleKind::kBestPlusUniform;
  const auto r = bpu.resolve(50, rng);
  EXPECT_EQ(r[0], 5.0);
  for (std::size_t i = 1; i < r.size(); ++i) {
    EXPECT_GE(r[i], 6.0);
    EXPECT_LE(r[i], 10.0);
  }
}

Environment make_env(std::size_t k, std::vector<double> rates, std::uint64_t seed = 5) {
  EnvConfig c;
  c.num_service_nodes = k;
  c.arrivals.kind = ArrivalRuleKind::kList;
  c.arrivals.rates = std::move(rates);
  c.service = constant_rate();
  for (std::size_t i = 0; i < k; ++i) c.positions.push_back({0.5, 0.0});
  Rng rng = derive_stream(seed, 0, StreamId::kTopology);
  return Environment(c, build_topology(c, rng), seed, 0);
}

TEST(Environment, CounterfactualsDoNotMutate) {
  auto env = make_env(3, {5, 5.5, 6});
  env.advance_to(20.0);
  const auto before = env.state_hash();
  const auto cf = env.counterfactual_losses();
  EXPECT_EQ(env.state_hash(), before);
  EXPECT_EQ(cf.size(), 3u);
  for (double l : cf) {
    EXPECT_GE(l, 0.0);
    EXPECT_LE(l, 1.0);
  }
}

TEST(Environment, CounterfactualsMatchManualEvaluation) {
  auto env = make_env(3, {0, 0, 0});
  env.node(0).preload(2);
  env.node(1).preload(5);
  env.node(2).preload(40);
  const auto cf = env.counterfactual_losses();
  const LossConfig loss{5.0};
  for (Arm j = 0; j < 3; ++j) {
    const double o = env.dispatch_latency(j) +
                     computation_latency_estimate(static_cast<double>(env.node(j).queue_length()),
                                                  env.task(), env.node(j).nominal_service_rate());
    EXPECT_DOUBLE_EQ(cf[j], normalize_loss(o, loss));
  }
  EXPECT_EQ(cf[2], 1.0);
}

TEST(Environment, IdenticalNodesGiveEqualCounterfactuals) {
  auto env = make_env(4, {0, 0, 0, 0});
  const auto cf = env.counterfactual_losses();
  for (double l : cf) EXPECT_EQ(l, cf[0]);
}

TEST(Environment, SingleArmCounterfactualIsItsEstimate) {
  auto env = make_env(1, {5});
  env.advance_to(3.0);
  const auto cf = env.counterfactual_losses();
  ASSERT_EQ(cf.size(), 1u);
  EXPECT_DOUBLE_EQ(cf[0], normalize_loss(env.estimate_latency(0).total, LossConfig{5.0}));
}

}  // namespace
}  // namespace fog::env
