#include "ladm/config_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ladm {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

static_assert(std::endian::native == std::endian::little, "matrix I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'L', 'A', 'D', 'M'};

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& origin)
{
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    return parse(in, path);
}

const std::string& KeyValueConfig::get(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(origin_ + ": missing key " + key);
    return it->second;
}

long long KeyValueConfig::get_int(const std::string& key) const
{
    const std::string& v = get(key);
    try {
        std::size_t used = 0;
        const long long out = std::stoll(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key " + key + " is not an integer: " + v);
    }
}

double KeyValueConfig::get_double(const std::string& key) const
{
    const std::string& v = get(key);
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": key " + key + " is not a number: " + v);
    }
}

void apply_spectrum_keys(const KeyValueConfig& cfg, SpectrumSpec& spec)
{
    if (cfg.has("n"))
        spec.n = cfg.get_int("n");
    if (cfg.has("j"))
        spec.j = cfg.get_int("j");
    if (cfg.has("h"))
        spec.h = cfg.get_int("h");
    if (cfg.has("k"))
        spec.k = cfg.get_int("k");
    if (cfg.has("delta"))
        spec.delta = cfg.get_double("delta");
    if (cfg.has("center"))
        spec.center = cfg.get_double("center");
    if (cfg.has("gap")) {
        if (cfg.get("gap") == "none")
            spec.gap.reset();
        else
            spec.gap = cfg.get_double("gap");
    }
    if (cfg.has("seed")) {
        const long long s = cfg.get_int("seed");
        if (s < 0)
            throw ConfigError("seed must be nonnegative");
        spec.seed = static_cast<std::uint64_t>(s);
    }
    if (cfg.has("decay.kind")) {
        const std::string& kind = cfg.get("decay.kind");
        if (kind == "exponential")
            spec.decay.kind = Decay::Kind::Exponential;
        else if (kind == "linear")
            spec.decay.kind = Decay::Kind::Linear;
        else
            throw ConfigError("decay.kind must be exponential or linear, got " + kind);
    }
    if (cfg.has("decay.params")) {
        std::string v = cfg.get("decay.params");
        for (char& c : v)
            if (c == ',')
                c = ' ';
        std::istringstream in(v);
        double a = 0.0, b = 0.0;
        std::string rest;
        if (!(in >> a >> b) || (in >> rest))
            throw ConfigError("decay.params must hold two numbers, got " + cfg.get("decay.params"));
        spec.decay.p0 = a;
        spec.decay.p1 = b;
    }
}

void write_matrix(const std::string& path, const Mat& M)
{
    if (M.rows() > 0xffffffffLL || M.cols() > 0xffffffffLL)
        throw DimensionError("write_matrix: dimensions exceed the u32 header fields");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    const std::uint32_t rows = static_cast<std::uint32_t>(M.rows());
    const std::uint32_t cols = static_cast<std::uint32_t>(M.cols());
    const std::uint8_t kind = 0;
    out.write(kMagic.data(), kMagic.size());
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
    out.write(reinterpret_cast<const char*>(&kind), sizeof kind);
    out.write(reinterpret_cast<const char*>(M.data()), static_cast<std::streamsize>(sizeof(double) * M.size()));
    if (!out)
        throw Error("write failed: " + path);
}

Mat read_matrix(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::array<char, 4> magic{};
    std::uint32_t rows = 0, cols = 0;
    std::uint8_t kind = 0;
    in.read(magic.data(), magic.size());
    in.read(reinterpret_cast<char*>(&rows), sizeof rows);
    in.read(reinterpret_cast<char*>(&cols), sizeof cols);
    in.read(reinterpret_cast<char*>(&kind), sizeof kind);
    if (!in || magic != kMagic)
        throw Error(path + ": not a LADM matrix file");
    if (kind != 0)
        throw Error(path + ": unsupported scalar kind " + std::to_string(kind));
    Mat M(rows, cols);
    in.read(reinterpret_cast<char*>(M.data()), static_cast<std::streamsize>(sizeof(double) * M.size()));
    if (!in)
        throw Error(path + ": truncated matrix data");
    if (in.peek() != std::char_traits<char>::eof())
        throw Error(path + ": trailing bytes after matrix data");
    return M;
}

}  // namespace ladm
