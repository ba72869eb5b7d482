#include "sealrestore/sweep.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "sealrestore/error.hpp"
#include "sealrestore/inpaint.hpp"
#include "sealrestore/parallel.hpp"

namespace sealrestore {
namespace {

struct LoadedPair {
  std::string image_id;
  std::optional<Image> synthetic;
  std::optional<Image> clean;
  std::optional<std::string> error;
};

SweepCell cell_from(const MetricsReport& report) {
  SweepCell c;
  c.mean_psnr_db = report.mean_psnr_db;
  c.mean_ssim = report.mean_ssim;
  c.infinite_psnr_count = report.infinite_psnr_count;
  c.failed_count = report.failed_count;
  return c;
}

template <typename Transform>
MetricsReport score_all(const std::vector<LoadedPair>& pairs, int jobs, Transform&& transform) {
  std::vector<ImageScore> scores(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const auto& p = pairs[i];
    scores[i].image_id = p.image_id;
    if (p.error) {
      scores[i].error = p.error;
      return;
    }
    try {
      scores[i] = score_pair(p.image_id, transform(*p.synthetic), *p.clean);
    } catch (const std::exception& e) {
      scores[i].error = e.what();
    }
  });
  return summarize(std::move(scores));
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void SweepGrid::validate() const {
  if (tau_r.empty() || ratios.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep grid lists must be non-empty");
  }
  for (double r : ratios) {
    if (!(r >= 1.0)) throw Error(ErrorCode::InvalidArgument, "sweep ratios must be >= 1");
  }
  for (double t : tau_r) params_for(t, ratios.front()).validate();
}

RestoreParams SweepGrid::params_for(double t, double ratio) const {
  RestoreParams p;
  p.tau_r = t;
  p.tau_rg = ratio;
  p.tau_rb = ratio;
  p.kernel = kernel;
  p.iterations = iterations;
  p.radius = radius;
  return p;
}

SweepResult run_sweep(const SweepGrid& grid, const std::vector<PathPair>& pairs, int jobs) {
  grid.validate();
  std::vector<LoadedPair> loaded(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    loaded[i].image_id = pairs[i].image_id;
    try {
      loaded[i].synthetic = load_image(pairs[i].first);
      loaded[i].clean = load_image(pairs[i].second);
    } catch (const std::exception& e) {
      loaded[i].error = e.what();
    }
  });

  SweepResult result;
  result.baseline = cell_from(score_all(loaded, jobs, [](const Image& img) { return img; }));
  result.baseline.baseline = true;

  for (double t : grid.tau_r) {
    for (double ratio : grid.ratios) {
      const RestoreParams params = grid.params_for(t, ratio);
      SweepCell cell = cell_from(score_all(
          loaded, jobs, [&](const Image& img) { return restore_document(img, params).restored; }));
      cell.tau_r = t;
      cell.ratio = ratio;
      result.cells.push_back(cell);
    }
  }
  for (std::size_t i = 1; i < result.cells.size(); ++i) {
    if (result.cells[i].mean_psnr_db > result.cells[result.best].mean_psnr_db) result.best = i;
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "tau_r,tau_rg_rb,psnr_db,ssim,best\n";
  out << "--,--," << fmt(result.baseline.mean_psnr_db, "%.4f") << ','
      << fmt(result.baseline.mean_ssim, "%.6f") << ",0\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& c = result.cells[i];
    out << fmt(c.tau_r, "%g") << ',' << fmt(c.ratio, "%g") << ',' << fmt(c.mean_psnr_db, "%.4f")
        << ',' << fmt(c.mean_ssim, "%.6f") << ',' << (i == result.best ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_to_json(const SweepResult& result) {
  using ojson = nlohmann::ordered_json;
  auto row = [](const SweepCell& c) {
    ojson j;
    if (c.baseline) {
      j["tau_r"] = nullptr;
      j["tau_rg_rb"] = nullptr;
    } else {
      j["tau_r"] = c.tau_r;
      j["tau_rg_rb"] = c.ratio;
    }
    j["psnr_db"] = c.mean_psnr_db;
    j["ssim"] = c.mean_ssim;
    j["infinite_psnr_count"] = c.infinite_psnr_count;
    j["failed_count"] = c.failed_count;
    return j;
  };
  ojson doc;
  doc["baseline"] = row(result.baseline);
  auto cells = ojson::array();
  for (const auto& c : result.cells) cells.push_back(row(c));
  doc["cells"] = std::move(cells);
  if (!result.cells.empty()) doc["best"] = row(result.cells[result.best]);
  return doc.dump(2) + "\n";
}

}  // namespace sealrestore
