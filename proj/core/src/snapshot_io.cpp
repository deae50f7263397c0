#include "nslab/snapshot_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nslab {

namespace {

constexpr char magic[4] = {'N', 'S', 'L', 'F'};
constexpr std::uint32_t format_version = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in, const std::string& what) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw std::runtime_error("snapshot file truncated while reading " + what);
    return value;
}

}  // namespace

void write_snapshot(const SpectralField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot file for writing: " + path.string());
    out.write(magic, 4);
    write_raw(out, format_version);
    write_raw(out, static_cast<std::int32_t>(field.grid().dim));
    write_raw(out, static_cast<std::int32_t>(field.grid().n));
    write_raw(out, field.grid().dealias);
    for (const auto& c : field.raw()) {
        write_raw(out, c.real());
        write_raw(out, c.imag());
    }
    if (!out) throw std::runtime_error("failed writing snapshot file: " + path.string());
}

SpectralField read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot file: " + path.string());
    char head[4];
    in.read(head, 4);
    if (!in || std::memcmp(head, magic, 4) != 0)
        throw std::runtime_error("not a field snapshot file (bad magic): " + path.string());
    const auto version = read_raw<std::uint32_t>(in, "version");
    if (version != format_version)
        throw std::runtime_error("unsupported snapshot format version " + std::to_string(version));
    GridSpec grid;
    grid.dim = read_raw<std::int32_t>(in, "dim");
    grid.n = read_raw<std::int32_t>(in, "n");
    grid.dealias = read_raw<double>(in, "dealias");
    grid.validate();
    SpectralField field(grid);
    for (auto& c : field.raw()) {
        const double re = read_raw<double>(in, "coefficients");
        const double im = read_raw<double>(in, "coefficients");
        c = {re, im};
    }
    return field;
}

}  // namespace nslab
