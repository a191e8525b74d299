// io.hpp
// File formats: circuit JSON, compiled-parameter JSON, dataset text files.
// Qubit labels in files are 0-based, complex numbers are [re, im] pairs,
// matrices row-major, angles in radians.

#pragma once

#include "uqcpac/compiler.hpp"
#include "uqcpac/core.hpp"
#include "uqcpac/learning.hpp"

#include <string>

namespace uqcpac {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Circuit parse_circuit(const std::string& json_text);
std::string serialize_circuit(const Circuit& circuit);

Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& circuit, const std::string& path);

CompiledAnsatz parse_params(const std::string& json_text);
std::string serialize_params(const CompiledAnsatz& compiled);
CompiledAnsatz load_params(const std::string& path);
void save_params(const CompiledAnsatz& compiled, const std::string& path);

// Header line "n,m", then one line per pair: 2*2^n doubles for x followed by
// 2*2^n doubles for y (interleaved re/im, round-trip-exact formatting).
void save_dataset(const Dataset& s, const std::string& path);
Dataset load_dataset(const std::string& path);

// %.17g, round-trip exact for doubles
std::string format_double(double v);

}  // namespace uqcpac
