#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "percolab/field.hpp"
#include "percolab/harmonic.hpp"

namespace percolab {

// Field export: header "x1,...,xd,value", deterministic vertex order;
// rationals serialized as "num/den".
std::string field_csv(const ScalarField<double>& u);
std::string field_csv(const ScalarField<Rational>& u);

std::string stats_csv(const CorrectorStats& st);  // "radius,osc,maxgrad"

// FNV-1a 64-bit digest of a byte string; used in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace percolab
