#ifndef POBK_BENCH_FETCH_HPP
#define POBK_BENCH_FETCH_HPP

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <curl/curl.h>
#include <zlib.h>

#include "pobk/error.hpp"

namespace pobk::bench {

/// Downloads SuiteSparse matrices in Matrix Market form and caches the
/// extracted `.mtx` files. Needs libcurl and zlib at link time.

/// Known collection groups for the matrices this project benchmarks on. Any
/// other matrix can be named as "Group/Name".
inline const std::map<std::string, std::string>& known_groups() {
    static const std::map<std::string, std::string> groups = {
        {"bcsstm39", "Boeing"},      {"blckhole", "HB"},         {"bodyy4", "Pothen"},
        {"chem97ztz", "Bates"},      {"Chem97ZtZ", "Bates"},     {"crystm03", "Boeing"},
        {"dixmaanl", "GHS_indef"},   {"ex29", "FIDAP"},          {"jagmesh4", "HB"},
        {"kim1", "Kim"},             {"linverse", "GHS_indef"},  {"obstclae", "GHS_psdef"},
        {"poli", "Grund"},           {"poli3", "Grund"},         {"poli_large", "Grund"},
        {"qpband", "GHS_indef"},     {"rajat07", "Rajat"},       {"spmsrtls", "GHS_indef"},
        {"tols4000", "Bai"},         {"torsion1", "GHS_psdef"},  {"wathen100", "GHS_psdef"},
    };
    return groups;
}

/// Collection spelling for names whose case or form differs from common usage.
inline std::string canonical_name(const std::string& name) {
    if (name == "chem97ztz") return "Chem97ZtZ";
    if (name == "polilarge") return "poli_large";
    if (name == "obstalae") return "obstclae";
    return name;
}

struct MatrixId {
    std::string group;
    std::string name;
};

inline MatrixId resolve_matrix_id(const std::string& spec) {
    if (const auto slash = spec.find('/'); slash != std::string::npos)
        return {spec.substr(0, slash), spec.substr(slash + 1)};
    const std::string name = canonical_name(spec);
    const auto& groups = known_groups();
    const auto it = groups.find(name);
    if (it == groups.end()) throw invalid_argument("unknown matrix '" + spec + "'; name it as Group/Name");
    return {it->second, name};
}

/// $POBK_MATRIX_DIR, else $XDG_CACHE_HOME/pobk/matrices, else ~/.cache/pobk/matrices.
inline std::filesystem::path default_cache_dir() {
    if (const char* d = std::getenv("POBK_MATRIX_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "pobk" / "matrices";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "pobk" / "matrices";
    return std::filesystem::temp_directory_path() / "pobk" / "matrices";
}

namespace detail {

inline std::size_t curl_sink(char* data, std::size_t size, std::size_t n, void* user) {
    auto* buf = static_cast<std::string*>(user);
    buf->append(data, size * n);
    return size * n;
}

inline std::string http_get(const std::string& url, long timeout_s) {
    static const bool init = [] { return curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK; }();
    if (!init) throw error("libcurl initialisation failed");
    CURL* h = curl_easy_init();
    if (!h) throw error("libcurl handle allocation failed");
    std::string body;
    char err[CURL_ERROR_SIZE] = {0};
    curl_easy_setopt(h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(h, CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(h, CURLOPT_CONNECTTIMEOUT, 15L);
    curl_easy_setopt(h, CURLOPT_TIMEOUT, timeout_s);
    curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, curl_sink);
    curl_easy_setopt(h, CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(h, CURLOPT_ERRORBUFFER, err);
    const CURLcode rc = curl_easy_perform(h);
    curl_easy_cleanup(h);
    if (rc != CURLE_OK) throw error("download of " + url + " failed: " + (err[0] ? err : curl_easy_strerror(rc)));
    return body;
}

inline std::string gunzip(const std::string& in) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw error("zlib initialisation failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    std::string out;
    char buf[1 << 16];
    int rc = Z_OK;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw error("corrupt gzip stream");
        }
        out.append(buf, sizeof buf - zs.avail_out);
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

/// Contents of the regular tar member whose base name is `wanted`.
inline std::optional<std::string> tar_member(const std::string& tar, const std::string& wanted) {
    std::size_t pos = 0;
    while (pos + 512 <= tar.size()) {
        const char* hdr = tar.data() + pos;
        if (hdr[0] == '\0') break;
        std::string name(hdr, strnlen(hdr, 100));
        const std::string prefix(hdr + 345, strnlen(hdr + 345, 155));
        if (!prefix.empty()) name = prefix + "/" + name;
        const std::size_t size = std::strtoull(std::string(hdr + 124, strnlen(hdr + 124, 12)).c_str(), nullptr, 8);
        const char type = hdr[156];
        pos += 512;
        if ((type == '0' || type == '\0') && std::filesystem::path(name).filename() == wanted) {
            if (pos + size > tar.size()) throw error("truncated tar member " + name);
            return tar.substr(pos, size);
        }
        pos += (size + 511) / 512 * 512;
    }
    return std::nullopt;
}

} // namespace detail

inline std::filesystem::path cached_path(const MatrixId& id, const std::filesystem::path& cache_dir) {
    return cache_dir / (id.name + ".mtx");
}

/// Path of the cached `.mtx`, downloading and extracting it first when absent.
inline std::filesystem::path fetch_matrix(const std::string& spec, const std::filesystem::path& cache_dir = default_cache_dir(),
                                          long timeout_s = 600) {
    const MatrixId id = resolve_matrix_id(spec);
    const auto target = cached_path(id, cache_dir);
    if (std::filesystem::exists(target)) return target;
    if (const char* off = std::getenv("POBK_OFFLINE"); off && *off && std::string(off) != "0")
        throw error(id.name + " is not cached in " + cache_dir.string() + " and POBK_OFFLINE is set");

    const std::vector<std::string> mirrors = {
        "https://suitesparse-collection-website.herokuapp.com/MM/",
        "https://sparse.tamu.edu/MM/",
    };
    std::string last_error;
    for (const auto& base : mirrors) {
        try {
            const std::string tar = detail::gunzip(detail::http_get(base + id.group + "/" + id.name + ".tar.gz", timeout_s));
            const auto body = detail::tar_member(tar, id.name + ".mtx");
            if (!body) throw error("archive for " + id.name + " holds no " + id.name + ".mtx");
            std::filesystem::create_directories(cache_dir);
            const auto partial = target.string() + ".part";
            {
                std::ofstream out(partial, std::ios::binary);
                out.write(body->data(), static_cast<std::streamsize>(body->size()));
                if (!out) throw error("cannot write " + partial);
            }
            std::filesystem::rename(partial, target);
            return target;
        } catch (const error& e) {
            last_error = e.what();
        }
    }
    throw error("could not fetch " + id.group + "/" + id.name + ": " + last_error);
}

/// A local path when `spec` names an existing file, else the fetched cache entry.
/// Specs ending in .mtx are always treated as paths.
inline std::filesystem::path locate_matrix(const std::string& spec, const std::filesystem::path& cache_dir = default_cache_dir()) {
    if (std::filesystem::is_regular_file(spec)) return spec;
    if (std::filesystem::path(spec).extension() == ".mtx") throw error("no such file: " + spec);
    return fetch_matrix(spec, cache_dir);
}

} // namespace pobk::bench

#endif // POBK_BENCH_FETCH_HPP
