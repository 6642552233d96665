// OpenMP kernels against the serial reference loop nests.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "deeppoison/kernels.hpp"

using namespace deeppoison;

namespace {

Tensor random_tensor(Shape s, std::uint64_t seed) {
  Tensor t(s);
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g;
  for (float& v : t.values()) v = g(rng);
  return t;
}

// Args: channels, spatial extent, stride. Batch of 16.
void conv_args(benchmark::internal::Benchmark* b) {
  b->Args({16, 32, 1})->Args({32, 16, 2})->Args({64, 8, 1})->Args({128, 4, 1});
}

template <bool Reference>
void BM_conv_forward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const kernels::ConvGeometry g{3, static_cast<int>(state.range(2)), 1};
  const Tensor x = random_tensor({16, c, h, h}, 1);
  const Tensor w = random_tensor({c, c, 3, 3}, 2);
  for (auto _ : state) {
    Tensor y = Reference ? kernels::reference::conv2d_forward(x, w, {}, g)
                         : kernels::conv2d_forward(x, w, {}, g);
    benchmark::DoNotOptimize(y.data());
  }
  const int ho = g.out_extent(h);
  state.counters["MAC/s"] = benchmark::Counter(16.0 * c * c * 9 * ho * ho,
                                               benchmark::Counter::kIsIterationInvariantRate);
}

template <bool Reference>
void BM_conv_backward_input(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const kernels::ConvGeometry g{3, static_cast<int>(state.range(2)), 1};
  const Shape in{16, c, h, h};
  const Tensor w = random_tensor({c, c, 3, 3}, 2);
  const Tensor gy = random_tensor({16, c, g.out_extent(h), g.out_extent(h)}, 3);
  for (auto _ : state) {
    Tensor gx = Reference ? kernels::reference::conv2d_backward_input(gy, w, in, g)
                          : kernels::conv2d_backward_input(gy, w, in, g);
    benchmark::DoNotOptimize(gx.data());
  }
}

template <bool Reference>
void BM_conv_backward_weight(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const kernels::ConvGeometry g{3, static_cast<int>(state.range(2)), 1};
  const Tensor x = random_tensor({16, c, h, h}, 1);
  const Tensor gy = random_tensor({16, c, g.out_extent(h), g.out_extent(h)}, 3);
  Tensor gw(Shape{c, c, 3, 3});
  for (auto _ : state) {
    if (Reference) {
      kernels::reference::conv2d_backward_weight(x, gy, g, gw, {});
    } else {
      kernels::conv2d_backward_weight(x, gy, g, gw, {});
    }
    benchmark::DoNotOptimize(gw.data());
  }
}

template <bool Reference>
void BM_batchnorm_train(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const Tensor x = random_tensor({64, c, 8, 8}, 4);
  const std::vector<float> gamma(c, 1.0f);
  const std::vector<float> beta(c, 0.0f);
  kernels::ChannelStats stats;
  std::vector<float> var;
  for (auto _ : state) {
    Tensor y = Reference ? kernels::reference::batchnorm_forward_train(x, gamma, beta, 1e-5f)
                         : kernels::batchnorm_forward_train(x, gamma, beta, 1e-5f, stats, var);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Reference>
void BM_channel_filter(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Tensor x = random_tensor({64, 64, 8, 8}, 5);
  const std::vector<float> kernel(static_cast<std::size_t>(k) * k, 1.0f / (k * k));
  for (auto _ : state) {
    Tensor y = Reference ? kernels::reference::channel_filter(x, kernel, k)
                         : kernels::channel_filter(x, kernel, k);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Reference>
void BM_upsample(benchmark::State& state) {
  const Tensor x = random_tensor({64, 64, 8, 8}, 6);
  for (auto _ : state) {
    Tensor y = Reference ? kernels::reference::upsample_nearest_forward(x, 2)
                         : kernels::upsample_nearest_forward(x, 2);
    benchmark::DoNotOptimize(y.data());
  }
}

}  // namespace

BENCHMARK(BM_conv_forward<false>)->Name("conv_forward/parallel")->Apply(conv_args);
BENCHMARK(BM_conv_forward<true>)->Name("conv_forward/reference")->Apply(conv_args);
BENCHMARK(BM_conv_backward_input<false>)->Name("conv_backward_input/parallel")->Apply(conv_args);
BENCHMARK(BM_conv_backward_input<true>)->Name("conv_backward_input/reference")->Apply(conv_args);
BENCHMARK(BM_conv_backward_weight<false>)->Name("conv_backward_weight/parallel")->Apply(conv_args);
BENCHMARK(BM_conv_backward_weight<true>)->Name("conv_backward_weight/reference")->Apply(conv_args);
BENCHMARK(BM_batchnorm_train<false>)->Name("batchnorm_train/parallel")->Arg(64)->Arg(128);
BENCHMARK(BM_batchnorm_train<true>)->Name("batchnorm_train/reference")->Arg(64)->Arg(128);
BENCHMARK(BM_channel_filter<false>)->Name("channel_filter/parallel")->Arg(3)->Arg(5);
BENCHMARK(BM_channel_filter<true>)->Name("channel_filter/reference")->Arg(3)->Arg(5);
BENCHMARK(BM_upsample<false>)->Name("upsample_nearest/parallel");
BENCHMARK(BM_upsample<true>)->Name("upsample_nearest/reference");

BENCHMARK_MAIN();
