#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "otoc/classical.hpp"
#include "otoc/pf.hpp"
#include "otoc/types.hpp"

namespace otoc::io {

/// t, re_o1, im_o1, abs_o1, o2, c
void write_correlators_csv(const CorrelatorSeries& series, const std::filesystem::path& path);

/// q, p, trajectory_id
void write_portrait_csv(const std::vector<classical::PortraitPoint>& points,
                        const std::filesystem::path& path);

/// K, area, n_total, steps
void write_area_csv(const std::vector<classical::RegularAreaEstimate>& estimates,
                    const std::filesystem::path& path);

/// re, im, modulus, rank, preceded by a JSON metadata comment line.
void write_spectrum_csv(const Spectrum& spec, const std::string& metadata_json,
                        const std::filesystem::path& path);

/// Binary CorrelatorSeries cache. Entries are versioned; a corrupt or
/// version-mismatched file reads back as absent.
struct SeriesCache {
    std::filesystem::path directory;

    std::filesystem::path entry_path(const std::string& key) const;
    std::optional<CorrelatorSeries> load(const std::string& key) const;
    void store(const std::string& key, const CorrelatorSeries& series) const;
};

std::string series_cache_key(double kick_strength, int dim, int t_max,
                             const std::string& grid_convention);

}  // namespace otoc::io
