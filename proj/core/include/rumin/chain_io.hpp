#pragma once

#include <string>

#include "rumin/current.hpp"

namespace rumin {

inline constexpr const char* kChainFormatVersion = "rumin-slice/1";

/// Chain file layout:
///   {"version": "rumin-slice/1", "n": 1, "degree": 1,
///    "vertices": [["0", "0", "0"], ["1", "0", "0"]],
///    "simplices": [{"vertices": [0, 1], "multiplicity": "1"}],
///    "quadrature_order": 5}
/// Rationals are "p/q" strings (JSON integers are accepted too). Throws
/// ChainFormatError on any violation.
SimplicialCurrent chain_from_json(const std::string& text);
SimplicialCurrent load_chain(const std::string& path);

std::string chain_to_json(const SimplicialCurrent& T);
void save_chain(const std::string& path, const SimplicialCurrent& T);

}  // namespace rumin
