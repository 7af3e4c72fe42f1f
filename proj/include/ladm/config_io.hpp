#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "ladm/spectral.hpp"

namespace ladm {

/// Flat `key = value` configuration; `#` starts a comment, blank lines are ignored.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in, const std::string& origin = "<config>");
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return values_; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    long long get_int(const std::string& key) const;
    double get_double(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

/// Overrides the fields of `spec` named in `cfg` (n, j, h, k, decay.kind, decay.params,
/// delta, center, gap, seed). Other keys are left for the caller.
void apply_spectrum_keys(const KeyValueConfig& cfg, SpectrumSpec& spec);

/// Dense matrix file: "LADM", u32 rows, u32 cols, u8 scalar kind (0 = float64),
/// then rows*cols little-endian doubles in column-major order.
void write_matrix(const std::string& path, const Mat& M);
Mat read_matrix(const std::string& path);

}  // namespace ladm
