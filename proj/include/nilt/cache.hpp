#pragma once

#include "nilt/cme.hpp"

#include <string>
#include <vector>

namespace nilt {

struct CacheRecord {
    CmeSpectralForm form;
    double scv_value = 0.0;
    std::string generator_version;
    unsigned seed = 0;
};

/// Writes the coefficient cache as versioned JSON, reals encoded as
/// full-precision decimal strings. The write is atomic (temp file + rename).
void save_cache(const std::vector<CacheRecord>& records, const std::string& path);

/// Loads and validates a cache file. Every record is checked against the
/// CmeSpectralForm invariants and the f_main >= 0.99 main-lobe sanity bound
/// before it is returned.
std::vector<CacheRecord> load_cache(const std::string& path);

/// Convenience: the record for order n, or throws std::invalid_argument with
/// a regeneration hint.
CacheRecord load_cached_order(const std::string& path, int n);

/// Default cache location: $NILT_CACHE_DIR/cme_cache.json when the variable
/// is set, otherwise data/cme_cache.json relative to the working directory.
std::string default_cache_path();

}  // namespace nilt
