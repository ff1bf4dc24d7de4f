#include "d2dsim/content.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2dsim {

ZipfPmf::ZipfPmf(double exponent, int file_count) : exponent_(exponent) {
  if (exponent < 0.0) {
    throw std::invalid_argument("ZipfPmf: exponent must be >= 0");
  }
  if (file_count < 1) {
    throw std::invalid_argument("ZipfPmf: file_count must be >= 1");
  }
  probs_.resize(static_cast<std::size_t>(file_count));
  double norm = 0.0;
  for (int n = 1; n <= file_count; ++n) {
    const double w = std::pow(static_cast<double>(n), -exponent);
    probs_[static_cast<std::size_t>(n - 1)] = w;
    norm += w;
  }
  cdf_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    probs_[i] /= norm;
    acc += probs_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

FileId ZipfPmf::sample(RandomStream& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = std::min<std::size_t>(
      static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  return static_cast<FileId>(idx + 1);
}

CacheConfig CacheConfig::from_files(std::vector<FileId> files) {
  std::sort(files.begin(), files.end());
  if (std::adjacent_find(files.begin(), files.end()) != files.end()) {
    throw std::invalid_argument("CacheConfig: duplicate file id");
  }
  if (!files.empty() && files.front() < 1) {
    throw std::invalid_argument("CacheConfig: file ids start at 1");
  }
  CacheConfig c;
  c.files_ = std::move(files);
  return c;
}

bool CacheConfig::contains(FileId file) const {
  return std::binary_search(files_.begin(), files_.end(), file);
}

CacheConfig sample_cache(const ZipfPmf& placement, int cache_size, RandomStream& rng) {
  const int m = placement.file_count();
  if (cache_size >= m) {
    throw std::invalid_argument("sample_cache: cache_size must be < file_count");
  }
  if (cache_size < 0) {
    throw std::invalid_argument("sample_cache: cache_size must be >= 0");
  }
  std::vector<double> weights = placement.probs();
  double total = 1.0;
  std::vector<FileId> chosen;
  chosen.reserve(static_cast<std::size_t>(cache_size));
  for (int draw = 0; draw < cache_size; ++draw) {
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    int pick = -1;
    for (int i = 0; i < m; ++i) {
      acc += weights[static_cast<std::size_t>(i)];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    if (pick < 0) {  // u landed on accumulated round-off past the last weight
      for (int i = m - 1; i >= 0; --i) {
        if (weights[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
    }
    chosen.push_back(static_cast<FileId>(pick + 1));
    total -= weights[static_cast<std::size_t>(pick)];
    weights[static_cast<std::size_t>(pick)] = 0.0;
  }
  return CacheConfig::from_files(std::move(chosen));
}

std::vector<FileId> sample_requests(const ZipfPmf& request_pmf, int n_receivers,
                                    RandomStream& rng) {
  std::vector<FileId> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n_receivers)));
  for (int i = 0; i < n_receivers; ++i) {
    out.push_back(request_pmf.sample(rng));
  }
  return out;
}

}  // namespace d2dsim
