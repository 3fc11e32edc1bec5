#include "nsc/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nsc {

namespace {
constexpr char magic[4] = {'N', 'S', 'C', 'F'};
constexpr std::uint32_t format_version = 1;
} // namespace

void save_field(const std::string& path, const SpectralField& f)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_field: cannot open " + path);
    char header[64] = {};
    std::memcpy(header, magic, 4);
    const std::uint32_t ver = format_version, n = static_cast<std::uint32_t>(f.grid.n),
                        nc = static_cast<std::uint32_t>(f.n_components);
    std::memcpy(header + 4, &ver, 4);
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 12, &nc, 4);
    std::memcpy(header + 16, &f.grid.length, 8);
    out.write(header, 64);
    out.write(reinterpret_cast<const char*>(f.coeffs.data()),
              static_cast<std::streamsize>(f.coeffs.size() * sizeof(cplx)));
    if (!out) throw std::runtime_error("save_field: write failed for " + path);
}

SpectralField load_field(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_field: cannot open " + path);
    char header[64];
    in.read(header, 64);
    if (!in || std::memcmp(header, magic, 4) != 0)
        throw std::runtime_error("load_field: bad magic in " + path);
    std::uint32_t ver, n, nc;
    double length;
    std::memcpy(&ver, header + 4, 4);
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&nc, header + 12, 4);
    std::memcpy(&length, header + 16, 8);
    if (ver != format_version)
        throw std::runtime_error("load_field: unsupported version in " + path);
    SpectralField f(Grid3(static_cast<int>(n), length), static_cast<int>(nc));
    in.read(reinterpret_cast<char*>(f.coeffs.data()),
            static_cast<std::streamsize>(f.coeffs.size() * sizeof(cplx)));
    if (!in) throw std::runtime_error("load_field: truncated file " + path);
    return f;
}

} // namespace nsc
