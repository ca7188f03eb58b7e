#include <benchmark/benchmark.h>

#include "kontact/chart.hpp"
#include "kontact/construct.hpp"
#include "kontact/kmu.hpp"
#include "kontact/registry.hpp"
#include "kontact/structure.hpp"

namespace {

const kontact::Vec kPoint{0.3, -0.4, 0.2, 0.7, -0.1};

void BM_JetEval(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::darboux_weak(2);
  const kontact::ExprPtr& e = s.chart().g.at({0, 0});
  for (auto _ : state) {
    kontact::Jet j = kontact::eval_jet(e, kPoint, 2);
    benchmark::DoNotOptimize(j.v);
  }
}
BENCHMARK(BM_JetEval);

void BM_ChartRiemann(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::darboux_weak(2);
  kontact::Point p(kPoint);
  for (auto _ : state) {
    kontact::TensorValue r = kontact::riemann(s.chart().g, p);
    benchmark::DoNotOptimize(r.c.data());
  }
}
BENCHMARK(BM_ChartRiemann);

void BM_ChartGeometry(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::darboux_weak(2);
  const auto& cd = s.chart();
  kontact::Point p(kPoint);
  for (auto _ : state) {
    kontact::ChartGeometry geo = kontact::compute_chart_geometry(cd.eta, cd.xi, cd.phi, cd.g, p);
    benchmark::DoNotOptimize(geo.l.a.data());
  }
}
BENCHMARK(BM_ChartGeometry);

void BM_FrameGeometry(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::lie_family(4.0, 2.0);
  for (auto _ : state) {
    kontact::FrameGeometry geo = kontact::compute_frame_geometry(s.frame());
    benchmark::DoNotOptimize(geo.l.a.data());
  }
}
BENCHMARK(BM_FrameGeometry);

void BM_KmuFitChart(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::darboux_weak(2);
  for (auto _ : state) {
    kontact::KappaMuReport rep = kontact::estimate_kappa_mu(s, kPoint);
    benchmark::DoNotOptimize(rep.kappa);
  }
}
BENCHMARK(BM_KmuFitChart);

void BM_BuildKcontact(benchmark::State& state) {
  kontact::ContactMetricStructure s = kontact::lie_family(4.0, 2.0);
  for (auto _ : state) {
    kontact::ConstructionResult res = kontact::build_kcontact(s);
    benchmark::DoNotOptimize(res.plan.normalizer);
  }
}
BENCHMARK(BM_BuildKcontact);

} // namespace

BENCHMARK_MAIN();
