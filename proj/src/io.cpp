#include "randwave/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace randwave {

// --- sha256 -------------------------------------------------------------------

namespace {

struct Sha256 {
  std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                        0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::uint64_t length = 0;
  unsigned char block[64];
  std::size_t fill = 0;

  static constexpr std::uint32_t k[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void compress(const unsigned char* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6],
                  hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const unsigned char* data, std::size_t n) {
    length += n;
    while (n > 0) {
      const std::size_t take = std::min<std::size_t>(n, 64 - fill);
      std::memcpy(block + fill, data, take);
      fill += take;
      data += take;
      n -= take;
      if (fill == 64) {
        compress(block);
        fill = 0;
      }
    }
  }

  std::string finish() {
    const std::uint64_t bits = length * 8;
    const unsigned char pad = 0x80;
    update(&pad, 1);
    const unsigned char zero = 0;
    while (fill != 56) update(&zero, 1);
    unsigned char len[8];
    for (int i = 0; i < 8; ++i) len[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
    update(len, 8);
    char out[65];
    for (int i = 0; i < 8; ++i) std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 64);
  }
};

constexpr std::uint32_t Sha256::k[];

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 s;
  s.update(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
  return s.finish();
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256_file: can not open " + path);
  Sha256 s;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    s.update(reinterpret_cast<const unsigned char*>(buf),
             static_cast<std::size_t>(in.gcount()));
  }
  return s.finish();
}

// --- config --------------------------------------------------------------------

namespace {

struct RawEntry {
  std::string value;
  int line = 0;
};

[[noreturn]] void config_error(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const RawEntry& e, const std::string& key) {
  // accept simple fractions like 2/3
  const auto slash = e.value.find('/');
  try {
    if (slash != std::string::npos) {
      const double a = std::stod(e.value.substr(0, slash));
      const double b = std::stod(e.value.substr(slash + 1));
      return a / b;
    }
    return std::stod(e.value);
  } catch (const std::exception&) {
    config_error(e.line, "value of '" + key + "' is not a number: " + e.value);
  }
}

long long parse_int(const RawEntry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    config_error(e.line, "value of '" + key + "' is not an integer: " + e.value);
  }
}

}  // namespace

int RunConfig::resolved_k() const { return k > 0 ? k : step_count_for(s); }

RunConfig parse_config(const std::string& text) {
  std::map<std::string, RawEntry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(lineno, "expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) config_error(lineno, "empty key");
    if (value.empty()) config_error(lineno, "empty value for '" + key + "'");
    const auto [it, inserted] = entries.emplace(key, RawEntry{value, lineno});
    if (!inserted)
      config_error(lineno, "duplicate key '" + key + "' (first set on line " +
                               std::to_string(it->second.line) + ")");
  }

  RunConfig cfg;
  cfg.raw_text = text;

  auto take = [&](const std::string& key) -> std::optional<RawEntry> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    RawEntry e = it->second;
    entries.erase(it);
    return e;
  };

  if (auto e = take("experiment")) cfg.experiment = e->value;
  if (auto e = take("m")) {
    cfg.m = static_cast<int>(parse_int(*e, "m"));
    if (cfg.m < 8 || (cfg.m & (cfg.m - 1)) != 0)
      config_error(e->line, "m must be a power of two >= 8");
  }
  if (auto e = take("oversampling")) {
    cfg.oversampling = static_cast<int>(parse_int(*e, "oversampling"));
    if (cfg.oversampling < 1) config_error(e->line, "oversampling must be >= 1");
  }
  if (auto e = take("dealias")) {
    cfg.dealias = parse_number(*e, "dealias");
    if (!(cfg.dealias > 0.0) || cfg.dealias > 1.0)
      config_error(e->line, "dealias must lie in (0, 1]");
  }
  if (auto e = take("horizon")) {
    cfg.horizon = parse_number(*e, "horizon");
    if (!(cfg.horizon > 0.0)) config_error(e->line, "horizon must be positive");
  }
  if (auto e = take("time_nodes")) {
    cfg.time_nodes = static_cast<int>(parse_int(*e, "time_nodes"));
    if (cfg.time_nodes < 2) config_error(e->line, "time_nodes must be >= 2");
  }
  if (auto e = take("window")) {
    cfg.window = e->value;
    if (cfg.window != "sharp" && cfg.window != "smooth")
      config_error(e->line, "window must be 'sharp' or 'smooth'");
  }
  if (auto e = take("window_width")) {
    cfg.window_width = parse_number(*e, "window_width");
    if (!(cfg.window_width > 0.0) || !(cfg.window_width < 0.5))
      config_error(e->line, "window_width must lie in (0, 1/2)");
  }
  if (auto e = take("law")) {
    cfg.law = e->value;
    if (cfg.law != "gaussian" && cfg.law != "uniform-circle")
      config_error(e->line, "law must be 'gaussian' or 'uniform-circle'");
  }
  if (auto e = take("seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_int(*e, "seed"));
  if (auto e = take("ensemble")) {
    cfg.ensemble = static_cast<int>(parse_int(*e, "ensemble"));
    if (cfg.ensemble < 1) config_error(e->line, "ensemble must be positive");
  }
  std::optional<RawEntry> s_entry = take("s");
  if (s_entry) {
    cfg.s = parse_number(*s_entry, "s");
    if (!(cfg.s > 0.0) || !(cfg.s < 1.0)) config_error(s_entry->line, "s must lie in (0, 1)");
  }
  if (auto e = take("sigma")) cfg.sigma = parse_number(*e, "sigma");
  std::optional<RawEntry> k_entry = take("k");
  if (k_entry && k_entry->value != "auto") {
    cfg.k = static_cast<int>(parse_int(*k_entry, "k"));
    if (cfg.k < 1) config_error(k_entry->line, "k must be >= 1 or 'auto'");
  }
  if (auto e = take("out")) cfg.out_dir = e->value;
  if (auto e = take("workers")) {
    cfg.workers = static_cast<int>(parse_int(*e, "workers"));
    if (cfg.workers < 0) config_error(e->line, "workers must be >= 0");
  }

  static const std::map<std::string, std::vector<std::string>> kExtraKeys = {
      {"randomize", {}},
      {"expand", {"variant", "quadrature", "band", "amplitude"}},
      {"solve", {"tolerance", "max_iterations", "band", "amplitude", "t_list", "quadrature"}},
      {"tail", {"q", "r", "tail_kind", "band", "lambda_count"}},
      {"smooth-fit",
       {"band", "t_eval", "fit_n_min", "fit_n_max", "quadrature", "k_max", "delta"}},
      {"counterexample", {"kind", "n_list", "lambda_box", "offset_factor", "lambda_ratio"}},
      {"dispersive", {"r", "bump_width", "t_min", "t_max", "t_count"}},
      {"bilinear", {"n1", "n2_list", "data"}},
      {"gain", {"q", "r", "n_list", "t_list", "band"}},
  };

  if (!cfg.experiment.empty()) {
    const auto it = kExtraKeys.find(cfg.experiment);
    if (it == kExtraKeys.end())
      throw std::invalid_argument("config: unknown experiment '" + cfg.experiment + "'");
    for (const std::string& key : it->second)
      if (auto e = take(key)) cfg.extra[key] = e->value;
  }

  if (!entries.empty()) {
    const auto& [key, entry] = *entries.begin();
    config_error(entry.line, "unknown key '" + key + "'");
  }

  // regularity gates
  if (cfg.experiment == "solve" || cfg.experiment == "expand") {
    if (cfg.s <= 1.0 / 6.0)
      config_error(s_entry ? s_entry->line : 0,
                   "s = " + std::to_string(cfg.s) + " is below the s_inf = 1/6 floor");
  }
  if (cfg.k > 0 && cfg.s > 1.0 / 6.0 && cfg.s < 0.5) {
    const int bracket = step_count_for(cfg.s);
    if (bracket != cfg.k)
      cfg.warnings.push_back("k = " + std::to_string(cfg.k) +
                             " is inconsistent with the step-count bracket for s (expected " +
                             std::to_string(bracket) + ")");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("can not open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// --- csv ------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& name,
                     const std::vector<std::string>& columns)
    : path_(path) {
  buffer_ = "# randwave-csv v1 " + name + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    buffer_ += (i ? "," : "") + columns[i];
  buffer_ += "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    buffer_ += (i ? "," : "") + format_double(values[i]);
  buffer_ += "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) buffer_ += (i ? "," : "") + values[i];
  buffer_ += "\n";
}

void CsvWriter::close() {
  if (!open_) return;
  open_ = false;
  std::ofstream out(path_, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("CsvWriter: can not open " + path_);
  out << buffer_;
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

// --- expansion persistence ---------------------------------------------------------

void save_expansion(const ExpansionSet& set, const std::string& dir) {
  fs::create_directories(dir);
  json meta;
  meta["variant"] = set.variant == ExpansionVariant::FullZ ? "full-z" : "unbalanced-zeta";
  meta["quadrature"] = set.quadrature == Quadrature::Gauss2 ? "gauss2" : "trapezoid";
  meta["seed"] = set.seed;
  meta["m"] = set.grid.points_per_axis;
  meta["oversampling"] = set.grid.oversampling;
  meta["dealias"] = set.grid.dealias_fraction;
  meta["horizon"] = set.time_grid.horizon;
  meta["time_nodes"] = set.time_grid.node_count;
  meta["orders"] = json::array();
  for (int l = 1; l <= set.depth(); ++l) {
    const int order = 2 * l - 1;
    meta["orders"].push_back(order);
    const std::string sub = dir + "/order_" + std::to_string(order);
    fs::create_directories(sub);
    for (int m = 0; m < set.time_grid.node_count; ++m)
      save_snapshot(set.order(order).node(m), sub + "/node_" + std::to_string(m) + ".rwv");
  }
  std::ofstream out(dir + "/expansion.json");
  out << meta.dump(2) << "\n";
}

ExpansionSet load_expansion(const std::string& dir) {
  std::ifstream in(dir + "/expansion.json");
  if (!in) throw std::runtime_error("load_expansion: missing manifest in " + dir);
  json meta = json::parse(in);
  ExpansionSet set;
  set.variant = meta["variant"] == "full-z" ? ExpansionVariant::FullZ
                                            : ExpansionVariant::UnbalancedZeta;
  set.quadrature =
      meta["quadrature"] == "gauss2" ? Quadrature::Gauss2 : Quadrature::Trapezoid;
  set.seed = meta["seed"].get<std::uint64_t>();
  set.grid = GridSpec(meta["m"].get<int>(), meta["oversampling"].get<int>(),
                      meta["dealias"].get<double>());
  set.time_grid = TimeGrid(meta["horizon"].get<double>(), meta["time_nodes"].get<int>());
  for (const auto& order_json : meta["orders"]) {
    const int order = order_json.get<int>();
    FieldTrajectory traj(set.grid, set.time_grid);
    const std::string sub = dir + "/order_" + std::to_string(order);
    for (int m = 0; m < set.time_grid.node_count; ++m)
      traj.node(m) = load_snapshot(sub + "/node_" + std::to_string(m) + ".rwv");
    set.terms.push_back(std::move(traj));
  }
  return set;
}

// --- manifest ----------------------------------------------------------------------

void write_manifest(const RunManifest& manifest, const std::string& dir) {
  json j;
  j["artifact_version"] = manifest.artifact_version;
  j["wall_clock_seconds"] = manifest.wall_clock_seconds;
  j["experiments"] = manifest.experiment_pass;
  j["files"] = manifest.file_hashes;
  j["config"] = manifest.config_echo;
  const std::string tmp = dir + "/manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_manifest: can not open " + tmp);
    out << j.dump(2) << "\n";
  }
  fs::rename(tmp, dir + "/manifest.json");
}

}  // namespace randwave
