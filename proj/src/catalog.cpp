#include "clex/catalog.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

namespace clex {

using nlohmann::json;

namespace {

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json record_json(const CoefficientKey& key, const CoefficientEstimate& e) {
  return json{{"potential_hash", hex(key.potential_hash)},
              {"beta", key.beta},
              {"order", key.order},
              {"kind", to_string(key.kind)},
              {"detail", key.detail},
              {"version", key.version},
              {"value", e.value},
              {"std_error", e.std_error},
              {"method", to_string(e.method)},
              {"samples", e.samples},
              {"seed", e.seed}};
}

std::pair<CoefficientKey, CoefficientEstimate> parse_record(const std::string& line) {
  const json j = json::parse(line);
  CoefficientKey key;
  key.potential_hash = std::stoull(j.at("potential_hash").get<std::string>(), nullptr, 16);
  key.beta = j.at("beta").get<double>();
  key.order = j.at("order").get<int>();
  key.kind = parse_coefficient_kind(j.at("kind").get<std::string>());
  key.detail = j.at("detail").get<std::string>();
  key.version = j.at("version").get<std::string>();
  CoefficientEstimate e;
  e.value = j.at("value").get<double>();
  e.std_error = j.at("std_error").get<double>();
  e.method = parse_estimate_method(j.at("method").get<std::string>());
  e.samples = j.at("samples").get<std::uint64_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
  return {key, e};
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& p) {
    fd_ = ::open((p.string() + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::string to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::Exact1D: return "exact-1d";
    case EstimateMethod::MonteCarlo: return "monte-carlo";
    case EstimateMethod::Quadrature: return "quadrature";
  }
  return "unknown";
}

EstimateMethod parse_estimate_method(const std::string& name) {
  for (auto m : {EstimateMethod::Exact1D, EstimateMethod::MonteCarlo, EstimateMethod::Quadrature})
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown estimate method: " + name);
}

std::string to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::ClusterB: return "b_n";
    case CoefficientKind::IrreducibleBeta: return "beta_n";
    case CoefficientKind::VirialB: return "B_n_virial";
    case CoefficientKind::HOrder: return "h-order";
    case CoefficientKind::COrder: return "c-order";
    case CoefficientKind::ActivityKernel: return "a_n";
  }
  return "unknown";
}

CoefficientKind parse_coefficient_kind(const std::string& name) {
  for (auto k : {CoefficientKind::ClusterB, CoefficientKind::IrreducibleBeta,
                 CoefficientKind::VirialB, CoefficientKind::HOrder, CoefficientKind::COrder,
                 CoefficientKind::ActivityKernel})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown coefficient kind: " + name);
}

std::string CoefficientKey::text() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", beta);
  std::ostringstream os;
  os << hex(potential_hash) << '|' << buf << '|' << order << '|' << to_string(kind) << '|'
     << detail << '|' << version;
  return os.str();
}

bool consistent(const CoefficientEstimate& a, const CoefficientEstimate& b) {
  const double tol = 3.0 * std::hypot(a.std_error, b.std_error) +
                     1e-12 * std::max({1.0, std::abs(a.value), std::abs(b.value)});
  return std::abs(a.value - b.value) <= tol;
}

CoefficientTable::CoefficientTable(std::filesystem::path catalog) : path_(std::move(catalog)) {
  std::ifstream in(*path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto [key, e] = parse_record(line);
      if (key.version != kCodeVersion) continue;
      entries_.emplace(key.text(), e);
    } catch (const std::exception&) {
      // Corrupt lines are left for catalog_gc to quarantine.
    }
  }
}

std::optional<CoefficientEstimate> CoefficientTable::find(const CoefficientKey& key) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key.text());
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void CoefficientTable::insert(const CoefficientKey& key, const CoefficientEstimate& value) {
  std::lock_guard lock(mutex_);
  const auto text = key.text();
  auto it = entries_.find(text);
  if (it != entries_.end()) {
    if (!consistent(it->second, value))
      throw std::runtime_error("inconsistent duplicate coefficient for key " + text);
    return;
  }
  entries_.emplace(text, value);
  if (path_) append(key, value);
}

void CoefficientTable::append(const CoefficientKey& key, const CoefficientEstimate& value) const {
  FileLock lock(*path_);
  std::ofstream out(*path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to catalog " + path_->string());
  out << record_json(key, value).dump() << '\n';
}

std::size_t CoefficientTable::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::size_t CoefficientTable::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t CoefficientTable::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

GcReport catalog_gc(const std::filesystem::path& catalog, const std::string& current_version) {
  GcReport report;
  if (!std::filesystem::exists(catalog)) return report;
  FileLock lock(catalog);
  std::ifstream in(catalog);
  std::vector<std::string> kept_lines;
  std::vector<std::string> quarantine;
  std::map<std::string, CoefficientEstimate> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto [key, e] = parse_record(line);
      if (key.version != current_version) {
        ++report.stale_removed;
        continue;
      }
      const auto text = key.text();
      auto it = seen.find(text);
      if (it == seen.end()) {
        seen.emplace(text, e);
        kept_lines.push_back(line);
      } else if (consistent(it->second, e)) {
        ++report.duplicates_removed;
      } else {
        quarantine.push_back(line);
      }
    } catch (const std::exception&) {
      quarantine.push_back(line);
    }
  }
  in.close();
  report.kept = kept_lines.size();
  report.quarantined = quarantine.size();
  if (!quarantine.empty()) {
    std::ofstream q(catalog.string() + ".quarantine", std::ios::app);
    for (const auto& l : quarantine) q << l << '\n';
  }
  const auto tmp = catalog.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (const auto& l : kept_lines) out << l << '\n';
  }
  std::filesystem::rename(tmp, catalog);
  return report;
}

}  // namespace clex
