#include <benchmark/benchmark.h>

#include "bt/integraltools.hpp"

using namespace bt;

namespace {

void BM_ActionExtension(benchmark::State& state) {
  auto cfg = make_field(5, 12);
  auto base = pgl2_identity_triple(cfg);
  JetMap map = pgl2_action_jet_map();
  int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extension_test(map, base, level));
}
BENCHMARK(BM_ActionExtension)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CongruencePresentation(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(congruence_presentation(n));
}
BENCHMARK(BM_CongruencePresentation)->DenseRange(1, 4);

void BM_Compatibility(benchmark::State& state) {
  GroupModel model = GroupModel::from_label("PGL3", 5, 12);
  ApartmentPoint x = ApartmentPoint::base(model.form());
  ConcaveFn g = standard_concave(model.form(), ConcaveKind::zero);
  ConcaveFn f = standard_concave(model.form(), ConcaveKind::moy_prasad, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(dilatation_compatibility_check(model, x, f, g, 10, 3));
}
BENCHMARK(BM_Compatibility)->Unit(benchmark::kMillisecond);

}  // namespace
