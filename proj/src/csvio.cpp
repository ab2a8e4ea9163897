#include "otoc/csvio.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace otoc::io {

namespace {

constexpr std::uint32_t kCacheMagic = 0x4f544f43;  // "OTOC"
constexpr std::uint32_t kCacheVersion = 1;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.precision(17);
    return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& payload) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
    std::filesystem::rename(tmp, path);
}

template <typename T>
void put(std::string& buffer, const T& value) {
    const char* raw = reinterpret_cast<const char*>(&value);
    buffer.append(raw, sizeof(T));
}

template <typename T>
bool get(const std::string& buffer, std::size_t& offset, T& value) {
    if (offset + sizeof(T) > buffer.size()) return false;
    std::memcpy(&value, buffer.data() + offset, sizeof(T));
    offset += sizeof(T);
    return true;
}

}  // namespace

void write_correlators_csv(const CorrelatorSeries& series, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,re_o1,im_o1,abs_o1,o2,c\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << series.times[i] << ',' << series.o1[i].real() << ',' << series.o1[i].imag()
            << ',' << std::abs(series.o1[i]) << ',' << series.o2[i] << ',' << series.c[i]
            << '\n';
}

void write_portrait_csv(const std::vector<classical::PortraitPoint>& points,
                        const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "q,p,trajectory_id\n";
    for (const auto& pt : points) out << pt.q << ',' << pt.p << ',' << pt.trajectory_id << '\n';
}

void write_area_csv(const std::vector<classical::RegularAreaEstimate>& estimates,
                    const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "K,area,n_total,steps\n";
    for (const auto& e : estimates)
        out << e.kick_strength << ',' << e.area << ',' << e.n_total << ',' << e.steps << '\n';
}

void write_spectrum_csv(const Spectrum& spec, const std::string& metadata_json,
                        const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "# " << metadata_json << '\n';
    out << "re,im,modulus,rank\n";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
        out << spec.eigenvalues[i].real() << ',' << spec.eigenvalues[i].imag() << ','
            << std::abs(spec.eigenvalues[i]) << ',' << i << '\n';
}

std::string series_cache_key(double kick_strength, int dim, int t_max,
                             const std::string& grid_convention) {
    std::ostringstream key;
    key.precision(17);
    key << "otoc_K" << kick_strength << "_D" << dim << "_T" << t_max << "_" << grid_convention;
    return key.str();
}

std::filesystem::path SeriesCache::entry_path(const std::string& key) const {
    return directory / (key + ".bin");
}

void SeriesCache::store(const std::string& key, const CorrelatorSeries& series) const {
    std::filesystem::create_directories(directory);
    std::string buffer;
    put(buffer, kCacheMagic);
    put(buffer, kCacheVersion);
    put(buffer, series.kick_strength);
    put(buffer, static_cast<std::int64_t>(series.dim));
    put(buffer, static_cast<std::int64_t>(series.size()));
    for (std::size_t i = 0; i < series.size(); ++i) {
        put(buffer, static_cast<std::int64_t>(series.times[i]));
        put(buffer, series.o1[i].real());
        put(buffer, series.o1[i].imag());
        put(buffer, series.o2[i]);
        put(buffer, series.c[i]);
    }
    atomic_write(entry_path(key), buffer);
}

std::optional<CorrelatorSeries> SeriesCache::load(const std::string& key) const {
    std::ifstream in(entry_path(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string buffer((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t offset = 0;
    std::uint32_t magic = 0, version = 0;
    std::int64_t dim = 0, count = 0;
    CorrelatorSeries series;
    if (!get(buffer, offset, magic) || magic != kCacheMagic) return std::nullopt;
    if (!get(buffer, offset, version) || version != kCacheVersion) return std::nullopt;
    if (!get(buffer, offset, series.kick_strength)) return std::nullopt;
    if (!get(buffer, offset, dim) || !get(buffer, offset, count) || count < 0)
        return std::nullopt;
    series.dim = static_cast<int>(dim);
    for (std::int64_t i = 0; i < count; ++i) {
        std::int64_t t = 0;
        double re = 0, im = 0, o2 = 0, c = 0;
        if (!get(buffer, offset, t) || !get(buffer, offset, re) || !get(buffer, offset, im) ||
            !get(buffer, offset, o2) || !get(buffer, offset, c))
            return std::nullopt;
        series.times.push_back(static_cast<int>(t));
        series.o1.emplace_back(re, im);
        series.o2.push_back(o2);
        series.c.push_back(c);
    }
    if (offset != buffer.size()) return std::nullopt;
    return series;
}

}  // namespace otoc::io
