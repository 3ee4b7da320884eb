// File emission: CSV tables, versioned JSON documents and a small SVG canvas.
#ifndef PAINLEVE_IO_HPP
#define PAINLEVE_IO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace painleve::io {

using cplx = std::complex<double>;
using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// A double at 17 significant digits (enough to round-trip), "nan"/"inf" spelled out.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) { row_strings(header); }

  CsvWriter& cell(double x) { return cell(fmt(x)); }
  CsvWriter& cell(long long x) { return cell(std::to_string(x)); }
  CsvWriter& cell(const std::string& s) {
    if (!pending_.empty()) pending_ += ',';
    pending_ += s;
    ++filled_;
    return *this;
  }
  void end_row() {
    if (filled_ != columns_) throw std::logic_error("CsvWriter: row has wrong number of cells");
    text_ += pending_;
    text_ += '\n';
    pending_.clear();
    filled_ = 0;
  }
  const std::string& str() const { return text_; }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (const auto& c : cells) cell(c);
    end_row();
  }
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string pending_, text_;
};

inline json point_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json polyline_json(const std::vector<cplx>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

/// Wraps a payload with the schema header every emitted JSON document carries.
inline json document(const std::string& kind) {
  json j;
  j["schema"] = "painleve-airy/" + kind;
  j["schema_version"] = kSchemaVersion;
  return j;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Equal-aspect SVG canvas over a rectangle of the complex plane (imaginary axis up).
class Svg {
 public:
  Svg(cplx lo, cplx hi, double pixels = 800) : lo_(lo), hi_(hi) {
    scale_ = pixels / std::max(hi.real() - lo.real(), hi.imag() - lo.imag());
    w_ = (hi.real() - lo.real()) * scale_;
    h_ = (hi.imag() - lo.imag()) * scale_;
  }

  double px(cplx z) const { return (z.real() - lo_.real()) * scale_; }
  double py(cplx z) const { return (hi_.imag() - z.imag()) * scale_; }
  double pixel_size() const { return 1.0 / scale_; }

  void polyline(const std::vector<cplx>& pts, const std::string& stroke, double width = 1.0, bool closed = false,
                const std::string& dash = "") {
    if (pts.size() < 2) return;
    std::ostringstream o;
    o << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
      << "\"";
    if (!dash.empty()) o << " stroke-dasharray=\"" << dash << "\"";
    o << " points=\"";
    for (const auto& p : pts) o << num(px(p)) << ',' << num(py(p)) << ' ';
    o << "\"/>\n";
    body_ += o.str();
  }
  void circle(cplx z, double r, const std::string& fill, const std::string& stroke = "none") {
    std::ostringstream o;
    o << "<circle cx=\"" << num(px(z)) << "\" cy=\"" << num(py(z)) << "\" r=\"" << r << "\" fill=\"" << fill
      << "\" stroke=\"" << stroke << "\"/>\n";
    body_ += o.str();
  }
  void cross(cplx z, double r, const std::string& stroke) {
    const double x = px(z), y = py(z);
    std::ostringstream o;
    o << "<path d=\"M" << num(x - r) << ' ' << num(y - r) << "L" << num(x + r) << ' ' << num(y + r) << "M"
      << num(x - r) << ' ' << num(y + r) << "L" << num(x + r) << ' ' << num(y - r) << "\" stroke=\"" << stroke
      << "\" stroke-width=\"1.2\"/>\n";
    body_ += o.str();
  }
  void rect(cplx lo, cplx hi, const std::string& fill) {
    std::ostringstream o;
    o << "<rect x=\"" << num(px(cplx(lo.real(), hi.imag()))) << "\" y=\"" << num(py(cplx(lo.real(), hi.imag())))
      << "\" width=\"" << num((hi.real() - lo.real()) * scale_) << "\" height=\""
      << num((hi.imag() - lo.imag()) * scale_) << "\" fill=\"" << fill << "\" shape-rendering=\"crispEdges\"/>\n";
    body_ += o.str();
  }
  void text(cplx z, const std::string& s, int size = 12) {
    std::ostringstream o;
    o << "<text x=\"" << num(px(z)) << "\" y=\"" << num(py(z)) << "\" font-size=\"" << size
      << "\" font-family=\"sans-serif\">" << s << "</text>\n";
    body_ += o.str();
  }
  void axes(const std::string& stroke = "#bbb") {
    if (lo_.imag() < 0 && hi_.imag() > 0) polyline({cplx(lo_.real(), 0), cplx(hi_.real(), 0)}, stroke, 0.5);
    if (lo_.real() < 0 && hi_.real() > 0) polyline({cplx(0, lo_.imag()), cplx(0, hi_.imag())}, stroke, 0.5);
  }

  std::string str(const std::string& version_comment) const {
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- " << version_comment << " -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w_) << "\" height=\"" << num(h_)
      << "\" viewBox=\"0 0 " << num(w_) << ' ' << num(h_) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_ << "</svg>\n";
    return o.str();
  }

 private:
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }
  cplx lo_, hi_;
  double scale_, w_, h_;
  std::string body_;
};

}  // namespace painleve::io

#endif
