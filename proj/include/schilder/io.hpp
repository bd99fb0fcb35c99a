// SPDX-License-Identifier: MIT
//
// File formats and report emission. Reports are bit-stable: object keys are
// emitted sorted, floats with 17 significant digits, infinities as the
// strings "inf"/"-inf".
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "schilder/ciesielski.hpp"
#include "schilder/types.hpp"

namespace schilder::io {

// Minimal JSON value tree for report emission (parsing of config files uses
// nlohmann/json; the split exists because dump() there cannot honour the
// 17-significant-digit float contract).
class Value {
public:
    enum class Kind { null, boolean, number, integer, string, array, object };

    Value() : kind_(Kind::null) {}
    Value(bool b) : kind_(Kind::boolean), bool_(b) {}
    Value(double d) : kind_(Kind::number), num_(d) {}
    Value(long long i) : kind_(Kind::integer), int_(i) {}
    Value(std::size_t i) : kind_(Kind::integer), int_(static_cast<long long>(i)) {}
    Value(int i) : kind_(Kind::integer), int_(i) {}
    Value(const char* s) : kind_(Kind::string), str_(s) {}
    Value(std::string s) : kind_(Kind::string), str_(std::move(s)) {}

    static Value array();
    static Value object();

    Value& operator[](const std::string& key);          // object access
    void push_back(Value v);                            // array append
    [[nodiscard]] Kind kind() const { return kind_; }

    // Serialize; keys sorted, deterministic float text.
    [[nodiscard]] std::string dump(int indent = 0) const;

private:
    void write(std::string& out, int indent, int depth) const;

    Kind kind_;
    bool bool_ = false;
    double num_ = 0.0;
    long long int_ = 0;
    std::string str_;
    std::vector<Value> items_;
    std::map<std::string, Value> fields_;
};

// "%.17g" with infinities as quoted strings when embedded in JSON.
std::string format_double(double v);

// Shared path CSV: header t,ch0,...,ch{K-1}, rows j = 0..2^J.
void save_path_csv(const DyadicPath& path, const std::string& file);
DyadicPath load_path_csv(const std::string& file);

// Coefficient CSV: header n,k_level,l_shift,channel,raw,scaled; the n = 0
// rows carry k_level = l_shift = -1 (no dyadic decomposition).
void save_coeff_csv(const CoeffMatrix& coeffs, const std::string& file);
CoeffMatrix load_coeff_csv(const std::string& file, HolderExponent alpha);

void write_text(const std::string& file, const std::string& content);
std::string read_text(const std::string& file);

}  // namespace schilder::io
