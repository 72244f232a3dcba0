#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randwave/tower.hpp"
#include "randwave/wiener.hpp"

namespace randwave {

struct RunConfig {
  std::string experiment;  // randomize | expand | solve | tail | smooth-fit |
                           // counterexample | dispersive | bilinear | gain
  // grid
  int m = 32;
  int oversampling = 4;
  double dealias = 2.0 / 3.0;
  // time
  double horizon = 0.5;
  int time_nodes = 65;
  // randomization
  std::string window = "sharp";
  double window_width = 0.25;
  std::string law = "gaussian";
  std::uint64_t seed = 1;
  int ensemble = 100;
  // regularity
  double s = 0.3;
  double sigma = 0.5;
  int k = 0;  // 0 = auto via the step-count bracket
  // orchestration
  std::string out_dir = "out";
  int workers = 0;
  // experiment-specific knobs (consumed per experiment)
  std::map<std::string, std::string> extra;

  std::vector<std::string> warnings;
  std::string raw_text;

  int resolved_k() const;
};

// Flat key = value text; '#' starts a comment.  Unknown keys, duplicate keys
// (both lines named) and out-of-range values are rejected with the line
// number; a k inconsistent with the s-bracket is a warning, not an error.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

struct RunManifest {
  std::string artifact_version;
  double wall_clock_seconds = 0.0;
  std::map<std::string, bool> experiment_pass;
  std::map<std::string, std::string> file_hashes;  // path (relative) -> sha256
  std::string config_echo;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// CSV with a "# randwave-csv v1 <name>" schema line; numbers are printed
// with %.17g so identical doubles give identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& name,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  void close();
  ~CsvWriter();

 private:
  std::string path_;
  std::string buffer_;
  bool open_ = true;
};

std::string format_double(double v);

// ExpansionSet persistence: one directory per order of node snapshots plus a
// JSON manifest naming orders, seed and quadrature settings.
void save_expansion(const ExpansionSet& set, const std::string& dir);
ExpansionSet load_expansion(const std::string& dir);

// Manifest is written to <dir>/manifest.json atomically (tmp + rename).
void write_manifest(const RunManifest& manifest, const std::string& dir);

}  // namespace randwave
