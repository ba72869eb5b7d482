#include <benchmark/benchmark.h>

#include <vector>

#include "sealrestore/inpaint.hpp"
#include "sealrestore/metrics.hpp"
#include "sealrestore/procedural.hpp"
#include "sealrestore/seal_mask.hpp"
#include "sealrestore/synth.hpp"

namespace {

using namespace sealrestore;

Image sealed_page(int w, int h) {
  std::vector<SealTemplate> templates;
  for (int i = 0; i < 4; ++i) {
    const int size = std::min(w, h) / 12 + 8 * i;
    templates.push_back(make_template(render_seal_template(size, 40 + i)));
  }
  SynthOptions opt;
  opt.seed = 7;
  return generate_synthetic(render_text_page(w, h, 3), templates, opt).image;
}

void BM_DetectSealMask(benchmark::State& state) {
  const Image page = sealed_page(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const RestoreParams params;
  for (auto _ : state) benchmark::DoNotOptimize(detect_seal_mask(page, params));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(page.pixel_count()));
}
BENCHMARK(BM_DetectSealMask)->Args({480, 640})->Args({1000, 1400});

void BM_Dilate(benchmark::State& state) {
  const Image page = sealed_page(1000, 1400);
  const SealMask m = detect_seal_mask(page, RestoreParams{});
  for (auto _ : state) benchmark::DoNotOptimize(dilate(m, 3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Dilate)->Arg(1)->Arg(3);

void BM_RestoreDocument(benchmark::State& state) {
  const Image page = sealed_page(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const RestoreParams params;
  double coverage = 0.0;
  for (auto _ : state) {
    const RestoreResult r = restore_document(page, params);
    coverage = mask_coverage(r.mask);
    benchmark::DoNotOptimize(r.restored.samples().data());
  }
  state.counters["coverage"] = coverage;
}
BENCHMARK(BM_RestoreDocument)->Args({480, 640})->Args({1000, 1400})->Unit(benchmark::kMillisecond);

void BM_Ssim(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const GrayImage a = to_gray(render_text_page(w, h, 1));
  const GrayImage b = to_gray(sealed_page(w, h));
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
}
BENCHMARK(BM_Ssim)->Args({480, 640})->Args({1000, 1400})->Unit(benchmark::kMillisecond);

void BM_Psnr(benchmark::State& state) {
  const Image a = render_text_page(1000, 1400, 1);
  const Image b = sealed_page(1000, 1400);
  for (auto _ : state) benchmark::DoNotOptimize(psnr(a, b));
}
BENCHMARK(BM_Psnr)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
