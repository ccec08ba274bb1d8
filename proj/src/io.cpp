#include "frontlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;

namespace frontlab {

void writeCsv(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::vector<double>>& rows) {
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size())
      throw std::invalid_argument("writeCsv: row " + std::to_string(r) + " width mismatch");
    for (size_t c = 0; c < rows[r].size(); ++c)
      if (!std::isfinite(rows[r][c]))
        throw std::invalid_argument("writeCsv: non-finite value at row " + std::to_string(r) +
                                    ", column " + std::to_string(c) + " (" + columns[c] + ")");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("writeCsv: cannot open " + path);
  for (size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  std::ostringstream body;
  body << std::setprecision(17);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c)
      body << row[c] << (c + 1 < row.size() ? "," : "\n");
  }
  out << body.str();
  if (!out) throw std::runtime_error("writeCsv: write failed for " + path);
}

void writeFieldDump(const std::string& base, const Eigen::ArrayXXd& v, const FieldDumpInfo& info) {
  nlohmann::ordered_json j;
  j["dtype"] = info.dtype;
  j["order"] = "column-major";
  j["endianness"] = "little";
  j["rows"] = v.rows();
  j["cols"] = v.cols();
  j["dx"] = info.dx;
  j["dy"] = info.dy;
  j["origin_x"] = info.origin_x;
  j["origin_y"] = info.origin_y;
  j["time"] = info.time;
  {
    std::ofstream side(base + ".json", std::ios::binary);
    if (!side) throw std::runtime_error("writeFieldDump: cannot open " + base + ".json");
    side << j.dump(2) << "\n";
  }
  std::ofstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("writeFieldDump: cannot open " + base + ".bin");
  bin.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(sizeof(double) * v.size()));
  if (!bin) throw std::runtime_error("writeFieldDump: write failed for " + base + ".bin");
}

Eigen::ArrayXXd readFieldDump(const std::string& base, FieldDumpInfo* info) {
  std::ifstream side(base + ".json");
  if (!side) throw std::runtime_error("readFieldDump: cannot open " + base + ".json");
  nlohmann::json j;
  side >> j;
  long rows = j.at("rows").get<long>();
  long cols = j.at("cols").get<long>();
  if (info) {
    info->rows = static_cast<int>(rows);
    info->cols = static_cast<int>(cols);
    info->dx = j.value("dx", 0.0);
    info->dy = j.value("dy", 0.0);
    info->origin_x = j.value("origin_x", 0.0);
    info->origin_y = j.value("origin_y", 0.0);
    info->time = j.value("time", 0.0);
    info->dtype = j.value("dtype", "float64");
  }
  Eigen::ArrayXXd v(rows, cols);
  std::ifstream bin(base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("readFieldDump: cannot open " + base + ".bin");
  bin.read(reinterpret_cast<char*>(v.data()),
           static_cast<std::streamsize>(sizeof(double) * v.size()));
  if (bin.gcount() != static_cast<std::streamsize>(sizeof(double) * v.size()))
    throw std::runtime_error("readFieldDump: short read from " + base + ".bin");
  return v;
}

namespace {

std::string svgEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void writeSvgLines(const std::string& path, const std::string& title, const std::string& xlabel,
                   const std::string& ylabel, const std::vector<SvgSeries>& series) {
  const double W = 760, H = 520, ml = 80, mr = 30, mt = 50, mb = 60;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series) {
    for (double x : s.x) {
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
    }
    for (double y : s.y) {
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (!(xlo < xhi)) { xlo -= 1.0; xhi = xlo + 2.0; }
  if (!(ylo < yhi)) { ylo -= 1.0; yhi = ylo + 2.0; }
  double ypad = 0.05 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;
  auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - ylo) / (yhi - ylo) * (H - mt - mb); };

  std::ostringstream os;
  os << std::setprecision(8);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << svgEscape(title) << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
     << H - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double xv = xlo + (xhi - xlo) * i / 5, yv = ylo + (yhi - ylo) * i / 5;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv) << "\" y2=\""
       << H - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
       << "\" text-anchor=\"middle\" font-size=\"11\">" << std::setprecision(4) << xv
       << std::setprecision(8) << "</text>\n";
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
       << py(yv) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << std::setprecision(4) << yv
       << std::setprecision(8) << "</text>\n";
  }
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 18
     << "\" text-anchor=\"middle\" font-size=\"13\">" << svgEscape(xlabel) << "</text>\n";
  os << "<text x=\"20\" y=\"" << (mt + H - mb) / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
     << (mt + H - mb) / 2 << ")\">" << svgEscape(ylabel) << "</text>\n";
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "\"/>\n";
  }
  double ly = mt + 6;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    os << "<line x1=\"" << W - mr - 150 << "\" y1=\"" << ly << "\" x2=\"" << W - mr - 130
       << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - mr - 125 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << svgEscape(s.label) << "</text>\n";
    ly += 16;
    if (ly > mt + 120) break;  // legend cap
  }
  os << "</svg>\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("writeSvgLines: cannot open " + path);
  out << os.str();
}

uint64_t fnv1a(const void* data, size_t n, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t fnv1aFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1aFile: cannot open " + path);
  uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h = fnv1a(buf, static_cast<size_t>(in.gcount()), h);
  }
  return h;
}

std::string hashHex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct RunManifest::Impl {
  nlohmann::ordered_json j;
};

RunManifest::RunManifest() : impl_(std::make_shared<Impl>()) {
  impl_->j["format"] = "frontlab-manifest-v1";
  impl_->j["params"] = nlohmann::ordered_json::object();
  impl_->j["tolerances"] = nlohmann::ordered_json::object();
  impl_->j["outputs"] = nlohmann::ordered_json::array();
}

void RunManifest::set(const std::string& key, const std::string& value) { impl_->j[key] = value; }
void RunManifest::set(const std::string& key, double value) { impl_->j[key] = value; }
void RunManifest::set(const std::string& key, long value) { impl_->j[key] = value; }

void RunManifest::setParams(const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) impl_->j["params"][k] = v;
}

void RunManifest::setTolerance(const std::string& name, double value) {
  impl_->j["tolerances"][name] = value;
}

void RunManifest::addOutput(const std::string& relpath, uint64_t content_hash) {
  impl_->j["outputs"].push_back({{"path", relpath}, {"fnv1a", hashHex(content_hash)}});
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot open " + path);
  out << impl_->j.dump(2) << "\n";
}

std::string RunManifest::toJson() const { return impl_->j.dump(2); }

std::string makeRunDir(const std::string& out_root, uint64_t config_hash) {
  fs::create_directories(out_root);
  std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::gmtime(&now));
  std::string base = out_root + "/run-" + stamp + "-" + hashHex(config_hash).substr(8);
  std::string dir = base;
  int suffix = 1;
  while (fs::exists(dir)) dir = base + "-" + std::to_string(suffix++);
  fs::create_directories(dir);
  return dir;
}

}  // namespace frontlab
