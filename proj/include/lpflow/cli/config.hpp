#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace lpflow::cli {

/// Flat key=value configuration. '#' starts a comment line. Keys are kept
/// sorted so the persisted form is canonical.
class RunConfig {
public:
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::filesystem::path& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    std::map<std::string, std::string> values_;
};

/// "dxN" or "dxNxL".
struct GridArg {
    int dim = 2;
    std::size_t points = 256;
    std::optional<double> half_width;
};
GridArg parse_grid_arg(const std::string& text);

}  // namespace lpflow::cli
