#include <benchmark/benchmark.h>

#include "bt/action.hpp"

using namespace bt;

namespace {

const char* kLabels[] = {"PGL2", "PGL3", "PGL4", "PU3"};

void BM_NormalForm(benchmark::State& state) {
  GroupModel model = GroupModel::from_label(kLabels[state.range(0)], 5, 12);
  state.SetLabel(model.label());
  Rng rng(7);
  ApartmentPoint x = ApartmentPoint::base(model.form());
  ConcaveFn f = standard_concave(model.form(), ConcaveKind::zero);
  std::vector<EmbeddedPoint> points;
  for (int i = 0; i < 16; ++i)
    points.push_back({random_parahoric(model, x, f, rng, 3), random_big_cell_point(model, x, f, CellKind::omega, rng, 3),
                      random_parahoric(model, x, f, rng, 3), 0});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(model, points[i++ % points.size()]));
}
BENCHMARK(BM_NormalForm)->DenseRange(0, 3);

void BM_Compose(benchmark::State& state) {
  GroupModel model = GroupModel::from_label(kLabels[state.range(0)], 5, 12);
  state.SetLabel(model.label());
  Rng rng(8);
  BigCellPoint p = random_big_cell_point(model, ApartmentPoint::base(model.form()),
                                         standard_concave(model.form(), ConcaveKind::zero), CellKind::omega, rng, 4);
  for (auto _ : state) benchmark::DoNotOptimize(model.compose(p));
}
BENCHMARK(BM_Compose)->DenseRange(0, 3);

void BM_ThetaIdentitySplit(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta_identity_split(n));
}
BENCHMARK(BM_ThetaIdentitySplit)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ThetaIdentitySU3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theta_identity_su3());
}
BENCHMARK(BM_ThetaIdentitySU3)->Unit(benchmark::kMillisecond);

}  // namespace
