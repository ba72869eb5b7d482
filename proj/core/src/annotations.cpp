#include "sealrestore/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "sealrestore/error.hpp"

namespace sealrestore {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(trim(current));
  return fields;
}

[[noreturn]] void parse_fail(const std::string& where, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ":" + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& s, const std::string& where, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    parse_fail(where, line, "expected integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(ErrorCode::FileNotFound, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

GroundTruthSet parse_ground_truth_csv(const std::string& text, const std::string& default_image_id) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  const std::string where = default_image_id.empty() ? "<csv>" : default_image_id;

  int col_unicode = -1, col_x = -1, col_y = -1, col_w = -1, col_h = -1, col_image = -1;
  bool have_header = false;
  GroundTruthSet out;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);

    if (!have_header) {
      for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
        const std::string name = lower(fields[i]);
        if (name == "unicode") col_unicode = i;
        else if (name == "x") col_x = i;
        else if (name == "y") col_y = i;
        else if (name == "w" || name == "width") col_w = i;
        else if (name == "h" || name == "height") col_h = i;
        else if (name == "image" || name == "image_id") col_image = i;
      }
      if (col_unicode < 0 || col_x < 0 || col_y < 0 || col_w < 0 || col_h < 0) {
        parse_fail(where, line_no, "header must name unicode,x,y,w,h");
      }
      have_header = true;
      continue;
    }

    const int needed = std::max({col_unicode, col_x, col_y, col_w, col_h, col_image});
    if (static_cast<int>(fields.size()) <= needed) {
      parse_fail(where, line_no, "expected at least " + std::to_string(needed + 1) + " fields");
    }
    GroundTruth gt;
    try {
      gt.codepoint = parse_codepoint(fields[col_unicode]);
    } catch (const Error& e) {
      parse_fail(where, line_no, e.what());
    }
    gt.box = {parse_int(fields[col_x], where, line_no), parse_int(fields[col_y], where, line_no),
              parse_int(fields[col_w], where, line_no), parse_int(fields[col_h], where, line_no)};
    if (!gt.box.valid()) parse_fail(where, line_no, "box width and height must be positive");
    const std::string image_id = col_image >= 0 ? fields[col_image] : default_image_id;
    out[image_id].push_back(gt);
  }
  if (!have_header) parse_fail(where, line_no, "missing header");
  return out;
}

GroundTruthSet load_ground_truth(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file() && lower(entry.path().extension().string()) == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    GroundTruthSet merged;
    for (const auto& f : files) {
      for (auto& [id, boxes] : parse_ground_truth_csv(read_text_file(f), f.stem().string())) {
        auto& dst = merged[id];
        dst.insert(dst.end(), boxes.begin(), boxes.end());
      }
    }
    return merged;
  }
  return parse_ground_truth_csv(read_text_file(path), path.stem().string());
}

std::vector<PredictionRecord> parse_predictions_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<PredictionRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      parse_fail("<jsonl>", line_no, e.what());
    }
    if (!obj.is_object()) parse_fail("<jsonl>", line_no, "expected a JSON object");
    PredictionRecord rec;
    try {
      rec.image_id = obj.at("image_id").get<std::string>();
      auto coord = [&](const char* key) {
        const json& v = obj.at(key);
        if (!v.is_number_integer()) parse_fail("<jsonl>", line_no, std::string(key) + " must be an integer");
        return v.get<int>();
      };
      rec.detection.box = {coord("x"), coord("y"), coord("w"), coord("h")};
      const json& conf = obj.at("confidence");
      if (!conf.is_number()) parse_fail("<jsonl>", line_no, "confidence must be a number");
      rec.detection.confidence = conf.get<double>();
      if (auto it = obj.find("unicode"); it != obj.end() && !it->is_null()) {
        rec.detection.label = parse_codepoint(it->get<std::string>());
      }
    } catch (const json::exception& e) {
      parse_fail("<jsonl>", line_no, e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      parse_fail("<jsonl>", line_no, e.what());
    }
    if (!rec.detection.box.valid()) parse_fail("<jsonl>", line_no, "box width and height must be positive");
    if (!(rec.detection.confidence >= 0.0 && rec.detection.confidence <= 1.0)) {
      parse_fail("<jsonl>", line_no, "confidence must lie in [0, 1]");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path) {
  return parse_predictions_jsonl(read_text_file(path));
}

std::string prediction_to_jsonl(const PredictionRecord& record) {
  nlohmann::ordered_json obj;
  obj["image_id"] = record.image_id;
  obj["x"] = record.detection.box.x;
  obj["y"] = record.detection.box.y;
  obj["w"] = record.detection.box.w;
  obj["h"] = record.detection.box.h;
  obj["confidence"] = record.detection.confidence;
  if (record.detection.label) obj["unicode"] = format_codepoint(*record.detection.label);
  return obj.dump();
}

std::vector<Detection> detections_for(const std::vector<PredictionRecord>& records,
                                      const std::string& image_id) {
  std::vector<Detection> out;
  for (const auto& r : records) {
    if (r.image_id == image_id) out.push_back(r.detection);
  }
  return out;
}

MatchReport match_annotations(const GroundTruthSet& gt, const std::vector<PredictionRecord>& preds,
                              double iou_threshold, double confidence_threshold) {
  MatchReport report;
  report.iou_threshold = iou_threshold;
  report.confidence_threshold = confidence_threshold;

  std::set<std::string> ids;
  for (const auto& [id, _] : gt) ids.insert(id);
  for (const auto& p : preds) ids.insert(p.image_id);

  static const std::vector<GroundTruth> kNone;
  for (const auto& id : ids) {
    const auto it = gt.find(id);
    const auto& truth = it == gt.end() ? kNone : it->second;
    const auto dets = filter_by_confidence(detections_for(preds, id), confidence_threshold);
    const MatchResult m = match_boxes(truth, dets, iou_threshold);
    MatchReport::PerImage row{id, static_cast<long long>(truth.size()),
                              static_cast<long long>(dets.size()),
                              static_cast<long long>(m.pairs.size())};
    report.ground_truth_count += row.ground_truth;
    report.predicted_count += row.predicted;
    report.matched_pairs += row.matched;
    report.per_image.push_back(std::move(row));
  }
  return report;
}

std::string match_report_to_json(const MatchReport& report) {
  nlohmann::ordered_json doc;
  doc["iou_threshold"] = report.iou_threshold;
  doc["confidence_threshold"] = report.confidence_threshold;
  doc["ground_truth_count"] = report.ground_truth_count;
  doc["predicted_count"] = report.predicted_count;
  doc["matched_pairs"] = report.matched_pairs;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.per_image) {
    rows.push_back({{"image_id", r.image_id},
                    {"ground_truth", r.ground_truth},
                    {"predicted", r.predicted},
                    {"matched", r.matched}});
  }
  doc["per_image"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string match_report_to_csv(const MatchReport& report) {
  std::ostringstream out;
  out << "image_id,ground_truth,predicted,matched\n";
  for (const auto& r : report.per_image) {
    out << r.image_id << ',' << r.ground_truth << ',' << r.predicted << ',' << r.matched << '\n';
  }
  out << "TOTAL," << report.ground_truth_count << ',' << report.predicted_count << ','
      << report.matched_pairs << '\n';
  return out.str();
}

}  // namespace sealrestore
