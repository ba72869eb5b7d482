#include "sealrestore/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "sealrestore/error.hpp"
#include "sealrestore/parallel.hpp"

namespace sealrestore {
namespace {

void require_same_dims(int aw, int ah, int bw, int bh) {
  if (aw != bw || ah != bh) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(aw) + "x" + std::to_string(ah) +
                                                  " vs " + std::to_string(bw) + "x" +
                                                  std::to_string(bh));
  }
}

std::vector<double> gaussian_1d(int window, double sigma) {
  std::vector<double> g(static_cast<std::size_t>(window));
  const double center = (window - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - center;
    g[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += g[i];
  }
  for (auto& v : g) v /= sum;
  return g;
}

std::string format_number(double v) {
  if (is_infinite_psnr(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  require_same_dims(a.width(), a.height(), b.width(), b.height());
  const auto sa = a.samples();
  const auto sb = b.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - static_cast<double>(sb[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(sa.size());
}

double psnr(const Image& a, const Image& b) {
  const double err = mse(a, b);
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / err);
}

std::vector<double> gaussian_window(int window, double sigma) {
  const auto g = gaussian_1d(window, sigma);
  std::vector<double> w(g.size() * g.size());
  for (std::size_t y = 0; y < g.size(); ++y) {
    for (std::size_t x = 0; x < g.size(); ++x) w[y * g.size() + x] = g[y] * g[x];
  }
  return w;
}

double ssim(const GrayImage& a, const GrayImage& b, const SsimConfig& config) {
  require_same_dims(a.width(), a.height(), b.width(), b.height());
  const int win = config.window;
  if (a.width() < win || a.height() < win) {
    throw Error(ErrorCode::TooSmall, "SSIM needs at least " + std::to_string(win) +
                                         " pixels per side");
  }
  const double c1 = (config.k1 * config.dynamic_range) * (config.k1 * config.dynamic_range);
  const double c2 = (config.k2 * config.dynamic_range) * (config.k2 * config.dynamic_range);
  const auto g = gaussian_1d(win, config.sigma);

  const int w = a.width();
  const int h = a.height();
  const int ow = w - win + 1;
  const int oh = h - win + 1;

  // Horizontal pass over every row for the five moment images.
  const auto cols = static_cast<std::size_t>(ow);
  std::vector<double> ha(cols * h), hb(cols * h), haa(cols * h), hbb(cols * h), hab(cols * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
      for (int k = 0; k < win; ++k) {
        const double va = a.at(x + k, y);
        const double vb = b.at(x + k, y);
        const double gk = g[k];
        sa += gk * va;
        sb += gk * vb;
        saa += gk * va * va;
        sbb += gk * vb * vb;
        sab += gk * va * vb;
      }
      const std::size_t i = static_cast<std::size_t>(y) * cols + x;
      ha[i] = sa;
      hb[i] = sb;
      haa[i] = saa;
      hbb[i] = sbb;
      hab[i] = sab;
    }
  }

  double total = 0.0;
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double mu_a = 0, mu_b = 0, eaa = 0, ebb = 0, eab = 0;
      for (int k = 0; k < win; ++k) {
        const std::size_t i = static_cast<std::size_t>(y + k) * cols + x;
        const double gk = g[k];
        mu_a += gk * ha[i];
        mu_b += gk * hb[i];
        eaa += gk * haa[i];
        ebb += gk * hbb[i];
        eab += gk * hab[i];
      }
      const double var_a = eaa - mu_a * mu_a;
      const double var_b = ebb - mu_b * mu_b;
      const double cov = eab - mu_a * mu_b;
      const double num = (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2);
      const double den = (mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2);
      total += num / den;
    }
  }
  return total / (static_cast<double>(ow) * static_cast<double>(oh));
}

ImageScore score_pair(const std::string& image_id, const Image& restored, const Image& reference) {
  ImageScore s;
  s.image_id = image_id;
  s.psnr_db = psnr(restored, reference);
  s.ssim = ssim(to_gray(restored), to_gray(reference));
  return s;
}

MetricsReport summarize(std::vector<ImageScore> scores) {
  MetricsReport report;
  report.per_image = std::move(scores);
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  int finite = 0;
  for (const auto& s : report.per_image) {
    if (s.error) {
      ++report.failed_count;
      continue;
    }
    ++report.scored_count;
    ssim_sum += s.ssim;
    if (is_infinite_psnr(s.psnr_db)) {
      ++report.infinite_psnr_count;
    } else {
      psnr_sum += s.psnr_db;
      ++finite;
    }
  }
  report.mean_psnr_db = finite > 0 ? psnr_sum / finite : 0.0;
  report.mean_ssim = report.scored_count > 0 ? ssim_sum / report.scored_count : 0.0;
  return report;
}

MetricsReport evaluate_set(const std::vector<EvalPair>& pairs, int jobs) {
  std::vector<ImageScore> scores(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const auto& pair = pairs[i];
    try {
      scores[i] = score_pair(pair.image_id, load_image(pair.restored), load_image(pair.reference));
    } catch (const std::exception& e) {
      scores[i].image_id = pair.image_id;
      scores[i].error = e.what();
    }
  });
  return summarize(std::move(scores));
}

std::string report_to_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "image_id,psnr_db,ssim\n";
  for (const auto& s : report.per_image) {
    out << s.image_id << ',';
    if (s.error) {
      out << ",\n";
    } else {
      out << format_number(s.psnr_db) << ',' << format_number(s.ssim) << '\n';
    }
  }
  return out.str();
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  auto items = nlohmann::ordered_json::array();
  for (const auto& s : report.per_image) {
    nlohmann::ordered_json item;
    item["image_id"] = s.image_id;
    if (s.error) {
      item["psnr_db"] = nullptr;
      item["ssim"] = nullptr;
      item["error"] = *s.error;
    } else {
      if (is_infinite_psnr(s.psnr_db)) {
        item["psnr_db"] = "inf";
      } else {
        item["psnr_db"] = s.psnr_db;
      }
      item["ssim"] = s.ssim;
    }
    items.push_back(std::move(item));
  }
  doc["per_image"] = std::move(items);
  doc["mean_psnr_db"] = report.mean_psnr_db;
  doc["mean_ssim"] = report.mean_ssim;
  doc["infinite_psnr_count"] = report.infinite_psnr_count;
  doc["scored_count"] = report.scored_count;
  doc["failed_count"] = report.failed_count;
  return doc.dump(2) + "\n";
}

}  // namespace sealrestore
