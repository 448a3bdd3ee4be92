#include <benchmark/benchmark.h>

#include <edifice/flagpoint.hpp>
#include <edifice/kempf.hpp>

using namespace edifice;

namespace {

ApartmentData sl3_data() {
  auto iv = [](std::initializer_list<long> xs) {
    IVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
  };
  IMat s1(2, 2), s2(2, 2);
  s1(0, 0) = -1;
  s1(0, 1) = 1;
  s1(1, 1) = 1;
  s2(0, 0) = 1;
  s2(1, 0) = 1;
  s2(1, 1) = -1;
  return ApartmentData("SL3", 2,
                       {iv({2, -1}), iv({-1, 2}), iv({1, 1}), iv({-2, 1}), iv({1, -2}),
                        iv({-1, -1})},
                       {s1, s2});
}

void bm_fan_sl3(benchmark::State& state) {
  auto a = sl3_data();
  for (auto _ : state) {
    auto fan = enumerate_fan(a);
    benchmark::DoNotOptimize(fan.cells.size());
  }
}
BENCHMARK(bm_fan_sl3);

void bm_fan_product(benchmark::State& state) {
  auto prod = product(sl3_data(), sl3_data());
  for (auto _ : state) {
    auto fan = enumerate_fan(prod, 6);
    benchmark::DoNotOptimize(fan.regions.size());
  }
}
BENCHMARK(bm_fan_product)->Unit(benchmark::kMillisecond);

void bm_cochar_approx(benchmark::State& state) {
  auto a = sl3_data();
  Rng rng(1);
  std::vector<SVec> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(rng.sqrt_vector(2, 2));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cochar_approx(a, inputs[i++ % inputs.size()]));
  }
}
BENCHMARK(bm_cochar_approx);

void bm_min_norm_qp(benchmark::State& state) {
  SPDForm form(QMat::identity(3));
  Rng rng(2);
  std::vector<std::vector<IVec>> instances;
  for (int i = 0; i < 32; ++i) {
    std::vector<IVec> cons;
    for (int c = 0; c < 6; ++c) {
      IVec w(3);
      for (auto& x : w) x = rng.int_in(-2, 2);
      cons.push_back(w);
    }
    instances.push_back(cons);
  }
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_norm_qp(instances[i++ % instances.size()], form));
  }
}
BENCHMARK(bm_min_norm_qp)->Unit(benchmark::kMillisecond);

void bm_common_apartment_gl4(benchmark::State& state) {
  auto gl4 = BlockGroupSpec::gl(4);
  Rng rng(3);
  auto x = point_from_cochar(gl4, {gl4->sample(rng), {rat(2), rat(1), rat(0), rat(-1)}});
  auto y = point_from_cochar(gl4, {gl4->sample(rng), {rat(1), rat(1), rat(-1), rat(-2)}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(common_apartment(x, y));
  }
}
BENCHMARK(bm_common_apartment_gl4);

void bm_equal_points_borel(benchmark::State& state) {
  auto b = BlockGroupSpec::borel_sl2();
  auto x = point_from_cochar(b, {QMat::identity(2), {rat(1), rat(-1)}});
  QMat u = QMat::identity(2);
  u(0, 1) = 1;
  auto y = point_from_cochar(b, {u, {rat(1), rat(-1)}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(equal_points(x, y));
  }
}
BENCHMARK(bm_equal_points_borel);

void bm_gen_eig_bounds(benchmark::State& state) {
  QMat a0(3, 3);
  Rng rng(4);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) a0(i, j) = rng.rational(3);
  SPDForm a(a0.transpose() * a0 + QMat::identity(3));
  SPDForm b(QMat::identity(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_eig_bounds(a, b));
  }
}
BENCHMARK(bm_gen_eig_bounds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
