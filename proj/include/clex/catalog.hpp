#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "clex/estimate.hpp"
#include "clex/version.hpp"

namespace clex {

enum class CoefficientKind { ClusterB, IrreducibleBeta, VirialB, HOrder, COrder, ActivityKernel };

std::string to_string(CoefficientKind kind);
CoefficientKind parse_coefficient_kind(const std::string& name);

struct CoefficientKey {
  std::uint64_t potential_hash = 0;
  double beta = 1.0;
  int order = 0;
  CoefficientKind kind = CoefficientKind::ClusterB;
  std::string detail;  // extra qualifiers such as evaluation positions
  std::string version = kCodeVersion;

  std::string text() const;
};

// Two estimates of the same quantity agree: exact ones to round-off, Monte Carlo ones
// within three combined standard errors.
bool consistent(const CoefficientEstimate& a, const CoefficientEstimate& b);

// Memo of coefficient estimates, optionally backed by an append-only JSON-lines file.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  explicit CoefficientTable(std::filesystem::path catalog);

  std::optional<CoefficientEstimate> find(const CoefficientKey& key);
  // Throws std::runtime_error on a value-inconsistent duplicate.
  void insert(const CoefficientKey& key, const CoefficientEstimate& value);

  std::size_t size() const;
  std::size_t hits() const;
  std::size_t misses() const;
  const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

 private:
  void append(const CoefficientKey& key, const CoefficientEstimate& value) const;

  mutable std::mutex mutex_;
  std::map<std::string, CoefficientEstimate> entries_;
  std::optional<std::filesystem::path> path_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct GcReport {
  std::size_t kept = 0;
  std::size_t stale_removed = 0;
  std::size_t duplicates_removed = 0;
  std::size_t quarantined = 0;
};

// Drops records from other code versions and consistent duplicates; unparseable or
// conflicting records move to "<catalog>.quarantine".
GcReport catalog_gc(const std::filesystem::path& catalog,
                    const std::string& current_version = kCodeVersion);

}  // namespace clex
