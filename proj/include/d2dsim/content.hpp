#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/random.hpp"

namespace d2dsim {

// Files are numbered 1..M.
using FileId = std::int32_t;

// Zipf popularity pmf: p(n) = n^-gamma / sum_m m^-gamma. gamma = 0 is uniform.
class ZipfPmf {
 public:
  ZipfPmf(double exponent, int file_count);

  double exponent() const { return exponent_; }
  int file_count() const { return static_cast<int>(probs_.size()); }
  double prob(FileId file) const { return probs_[static_cast<std::size_t>(file - 1)]; }
  const std::vector<double>& probs() const { return probs_; }

  // Inverse-CDF draw of one file id.
  FileId sample(RandomStream& rng) const;

 private:
  double exponent_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

// The set of files stored at one transmitter; kept sorted, no duplicates.
class CacheConfig {
 public:
  CacheConfig() = default;
  static CacheConfig from_files(std::vector<FileId> files);

  bool contains(FileId file) const;
  int size() const { return static_cast<int>(files_.size()); }
  const std::vector<FileId>& files() const { return files_; }
  bool operator==(const CacheConfig&) const = default;

 private:
  std::vector<FileId> files_;
};

// Draws cache_size distinct files by successive weighted sampling without
// replacement from the placement pmf (weights renormalized after each draw).
CacheConfig sample_cache(const ZipfPmf& placement, int cache_size, RandomStream& rng);

// One iid request per receiver.
std::vector<FileId> sample_requests(const ZipfPmf& request_pmf, int n_receivers,
                                    RandomStream& rng);

}  // namespace d2dsim
