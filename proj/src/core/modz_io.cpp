#include "moducom/core/modz_io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace moducom::core {

namespace {

constexpr char kMagic[4] = {'M', 'O', 'D', 'Z'};

std::uint64_t read_le(const unsigned char* p, unsigned bytes) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

void write_le(unsigned char* p, std::uint64_t v, unsigned bytes) {
    for (unsigned i = 0; i < bytes; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

} // namespace

SymbolSeq read_modz(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open noise file '" + path + "'");

    unsigned char header[16];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    require(in.gcount() == static_cast<std::streamsize>(sizeof(header)),
            "noise file '" + path + "' is truncated (incomplete header)");
    require(std::memcmp(header, kMagic, sizeof(kMagic)) == 0,
            "noise file '" + path + "' is not a MODZ file (bad magic)");

    const auto version = static_cast<std::uint16_t>(read_le(header + 4, 2));
    require(version == kModzVersion, "noise file '" + path + "' has unsupported version " +
                                         std::to_string(version));

    const auto q = static_cast<unsigned>(read_le(header + 6, 2));
    require(q >= 2 && q <= 256,
            "noise file '" + path + "' declares alphabet size " + std::to_string(q));
    const std::uint64_t n = read_le(header + 8, 8);

    std::vector<Symbol> data(n);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n));
    require(in.gcount() == static_cast<std::streamsize>(n),
            "noise file '" + path + "' is truncated (fewer symbols than declared)");
    for (std::uint64_t i = 0; i < n; ++i)
        require(data[i] < q, "noise file '" + path + "' has symbol " + std::to_string(data[i]) +
                                 " outside its alphabet at position " + std::to_string(i));

    return SymbolSeq(Alphabet(q), std::move(data));
}

void write_modz(const std::string& path, const SymbolSeq& seq) {
    unsigned char header[16];
    std::memcpy(header, kMagic, sizeof(kMagic));
    write_le(header + 4, kModzVersion, 2);
    write_le(header + 6, seq.alphabet().q(), 2);
    write_le(header + 8, seq.size(), 8);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot create file '" + tmp + "'");
        out.write(reinterpret_cast<const char*>(header), sizeof(header));
        out.write(reinterpret_cast<const char*>(seq.data().data()),
                  static_cast<std::streamsize>(seq.size()));
        out.flush();
        require(out.good(), "failed writing file '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw ValidationError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
    }
}

} // namespace moducom::core
