#include "mixsch/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace mixsch {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'G', 'F', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<unsigned char, 8> b{};
    for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>((v >> (8 * k)) & 0xffu);
    out.write(reinterpret_cast<const char*>(b.data()), 8);
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    if (!in) throw std::runtime_error("MGF1: truncated stream");
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
    return v;
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_mgf1(std::ostream& out, const Field& f) {
    const Grid2D& g = f.grid();
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, g.nx());
    put_u64(out, g.ny());
    put_f64(out, g.lx());
    put_f64(out, g.ly());
    for (double v : f.values()) put_f64(out, v);
    if (!out) throw std::runtime_error("MGF1: write failed");
}

void write_mgf1(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_mgf1(out, f);
}

Field read_mgf1(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw std::runtime_error("MGF1: bad magic");
    const auto nx = get_u64(in);
    const auto ny = get_u64(in);
    const double lx = get_f64(in);
    const double ly = get_f64(in);
    if (nx > (1u << 20) || ny > (1u << 20)) throw std::runtime_error("MGF1: implausible grid size");
    Grid2D grid(nx, ny, lx, ly);
    Field f(grid);
    for (auto& v : f.values()) v = get_f64(in);
    return f;
}

Field read_mgf1(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_mgf1(in);
}

void write_csv(std::ostream& out, const Field& f) {
    const Grid2D& g = f.grid();
    out << "x,y,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < g.nx(); ++i) {
        for (std::size_t j = 0; j < g.ny(); ++j) out << g.x(i) << ',' << g.y(j) << ',' << f(i, j) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const Field& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_csv(out, f);
}

}  // namespace mixsch
