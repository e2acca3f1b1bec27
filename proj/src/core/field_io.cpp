#include "lpflow/core/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace lpflow {

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error("truncated field file");
    return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write("LLAB", 4);
    put<std::uint32_t>(out, kFieldFormatVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.grid().dim()));
    put<std::uint64_t>(out, field.grid().points());
    put<double>(out, field.grid().half_width());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.rank()));
    const auto s = field.samples();
    out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Field read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "LLAB", 4) != 0) throw std::runtime_error("not a field file: " + path.string());
    const auto version = get<std::uint32_t>(in);
    if (version != kFieldFormatVersion) throw std::runtime_error("unsupported field file version");
    const auto d = get<std::uint32_t>(in);
    const auto n = get<std::uint64_t>(in);
    const auto L = get<double>(in);
    const auto rank = get<std::uint32_t>(in);
    if (rank > 2) throw std::runtime_error("bad rank in field file");
    const GridSpec grid = make_grid(static_cast<int>(d), L, n);
    Field f(grid, static_cast<Rank>(rank));
    auto s = f.samples();
    in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated field file");
    return f;
}

}  // namespace lpflow
