#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <cmath>
#include <system_error>

#include "sealrestore/error.hpp"
#include "sealrestore/image.hpp"
#include "sealrestore/seal_mask.hpp"

namespace sealrestore {
namespace {

cv::Mat read_raw(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  cv::Mat raw;
  try {
    raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
  if (raw.empty()) {
    throw Error(ErrorCode::DecodeError, path.string());
  }
  if (raw.dims != 2 || raw.cols < 1 || raw.rows < 1) {
    throw Error(ErrorCode::ZeroDimension, path.string());
  }
  if (raw.depth() == CV_16U) {
    cv::Mat narrow;
    raw.convertTo(narrow, CV_8U, 1.0 / 257.0);
    raw = narrow;
  } else if (raw.depth() != CV_8U) {
    throw Error(ErrorCode::DecodeError, path.string() + ": unsupported sample depth");
  }
  return raw;
}

std::uint8_t over_white(std::uint8_t value, std::uint8_t alpha) {
  const double a = alpha / 255.0;
  return static_cast<std::uint8_t>(std::lround(a * value + (1.0 - a) * 255.0));
}

void write_png(const cv::Mat& mat, const std::filesystem::path& path) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat, {cv::IMWRITE_PNG_COMPRESSION, 6});
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
  }
  if (!ok) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
}

}  // namespace

Image load_image(const std::filesystem::path& path) {
  const cv::Mat raw = read_raw(path);
  const int channels = raw.channels();
  Image img(raw.cols, raw.rows);
  for (int y = 0; y < raw.rows; ++y) {
    const std::uint8_t* row = raw.ptr<std::uint8_t>(y);
    for (int x = 0; x < raw.cols; ++x) {
      const std::uint8_t* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      Rgb out;
      switch (channels) {
        case 1:
          out = {px[0], px[0], px[0]};
          break;
        case 2:
          out.r = out.g = out.b = over_white(px[0], px[1]);
          break;
        case 3:  // OpenCV stores BGR
          out = {px[2], px[1], px[0]};
          break;
        case 4:
          out = {over_white(px[2], px[3]), over_white(px[1], px[3]), over_white(px[0], px[3])};
          break;
        default:
          throw Error(ErrorCode::DecodeError, path.string() + ": unsupported channel count");
      }
      img.set_pixel(x, y, out);
    }
  }
  return img;
}

void save_image(const Image& img, const std::filesystem::path& path) {
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* row = bgr.ptr<std::uint8_t>(y);
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img.pixel(x, y);
      row[3 * x] = p.b;
      row[3 * x + 1] = p.g;
      row[3 * x + 2] = p.r;
    }
  }
  write_png(bgr, path);
}

void save_mask(const SealMask& mask, const std::filesystem::path& path) {
  cv::Mat gray(mask.height(), mask.width(), CV_8UC1);
  for (int y = 0; y < mask.height(); ++y) {
    auto* row = gray.ptr<std::uint8_t>(y);
    for (int x = 0; x < mask.width(); ++x) {
      row[x] = mask.at(x, y) ? 255 : 0;
    }
  }
  write_png(gray, path);
}

SealMask load_mask(const std::filesystem::path& path) {
  const Image img = load_image(path);
  SealMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      mask.set(x, y, img.sample(x, y, 0) >= 128);
    }
  }
  return mask;
}

}  // namespace sealrestore
