#include "choquard/snapshot.hpp"
#include "choquard/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>

namespace choquard {

static_assert(std::endian::native == std::endian::little,
              "cfd snapshots assume a little-endian host");

void write_cfd(const std::string& path, const ComplexField& u) {
    u.check_finite("write_cfd");
    nlohmann::json header = {
        {"dim", u.grid.dim},
        {"points_per_axis", u.grid.n},
        {"box_length", u.grid.L},
        {"dtype", "c128"},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("write_cfd: cannot open '" + path + "' for writing");
    }
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(u.v.data()),
              static_cast<std::streamsize>(u.v.size() * sizeof(cplx)));
    if (!out) {
        throw ValidationError("write_cfd: short write to '" + path + "'");
    }
}

ComplexField read_cfd(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("read_cfd: cannot open '" + path + "'");
    }
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw ValidationError("read_cfd: missing header line in '" + path + "'");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_line);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("read_cfd: malformed header in '" + path + "': " + e.what());
    }
    for (const auto& key : {"dim", "points_per_axis", "box_length", "dtype"}) {
        if (!header.contains(key)) {
            throw ValidationError(std::string("read_cfd: header missing key '") + key + "'");
        }
    }
    if (header["dtype"] != "c128") {
        throw ValidationError("read_cfd: unsupported dtype '" + header["dtype"].dump() + "'");
    }
    Grid g;
    try {
        g = make_grid(header["dim"].get<int>(), header["points_per_axis"].get<int>(),
                      header["box_length"].get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("read_cfd: malformed header in '" + path + "': " + e.what());
    }
    ComplexField u(g);
    in.read(reinterpret_cast<char*>(u.v.data()),
            static_cast<std::streamsize>(u.v.size() * sizeof(cplx)));
    if (in.gcount() != static_cast<std::streamsize>(u.v.size() * sizeof(cplx))) {
        throw ValidationError("read_cfd: payload shorter than header dimensions imply");
    }
    u.check_finite("read_cfd");
    return u;
}

} // namespace choquard
