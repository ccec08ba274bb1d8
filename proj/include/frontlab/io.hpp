#ifndef FRONTLAB_IO_HPP
#define FRONTLAB_IO_HPP

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace frontlab {

/** CSV with a header row and 17-significant-digit formatting, so re-runs are
 * byte-identical. Refuses non-finite values, reporting the first bad index. */
void writeCsv(const std::string& path, const std::vector<std::string>& columns,
              const std::vector<std::vector<double>>& rows);

struct FieldDumpInfo {
  int rows = 0, cols = 0;
  double dx = 0.0, dy = 0.0;
  double origin_x = 0.0, origin_y = 0.0;
  double time = 0.0;
  std::string dtype = "float64";
};

// Flat little-endian binary (column-major) at <base>.bin with a JSON sidecar
// at <base>.json carrying shape, grid and time.
void writeFieldDump(const std::string& base, const Eigen::ArrayXXd& v, const FieldDumpInfo& info);
Eigen::ArrayXXd readFieldDump(const std::string& base, FieldDumpInfo* info = nullptr);

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x, y;
};

// Minimal line plot (no plotting dependency): axes, ticks, labeled series.
void writeSvgLines(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<SvgSeries>& series);

uint64_t fnv1a(const void* data, size_t n, uint64_t seed = 1469598103934665603ull);
uint64_t fnv1aFile(const std::string& path);
std::string hashHex(uint64_t h);

/** Reproducibility record: parameter echo, scheme identifiers and tolerances,
 * grids, version, wall clock and step counts, and the output index with
 * content hashes. Thin wrapper over a JSON object. */
class RunManifest {
 public:
  RunManifest();
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long value);
  void setParams(const std::map<std::string, std::string>& kv);
  void setTolerance(const std::string& name, double value);
  void addOutput(const std::string& relpath, uint64_t content_hash);
  void write(const std::string& path) const;
  std::string toJson() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Creates out_root/run-<config hash>[-n]/ and returns its path.
std::string makeRunDir(const std::string& out_root, uint64_t config_hash);

}  // namespace frontlab

#endif
