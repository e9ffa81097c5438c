// io.hpp — JSON serialization of the inter-stage artifacts (complex numbers
// encoded as [re, im] pairs) and CSV emission with a provenance header.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lossyrom/forward.hpp"
#include "lossyrom/grid.hpp"
#include "lossyrom/invert.hpp"
#include "lossyrom/media.hpp"
#include "lossyrom/ratfit.hpp"
#include "lossyrom/rom.hpp"
#include "lossyrom/spectral.hpp"
#include "lossyrom/types.hpp"

namespace lossyrom::io {

using json = nlohmann::json;

// ============================================================================
// JSON conversions
// ============================================================================

json to_json(const std::vector<cplx>& v);
std::vector<cplx> complex_vector_from_json(const json& j);

json to_json(const SampledFunction& f);
SampledFunction sampled_from_json(const json& j);

json to_json(const PiecewiseLinear& f);
PiecewiseLinear piecewise_linear_from_json(const json& j);

json to_json(const PiecewiseConstant& f);
PiecewiseConstant piecewise_constant_from_json(const json& j);

json to_json(const MediumProfile& m);
MediumProfile medium_from_json(const json& j);

json to_json(const FourierMedium& m);
FourierMedium fourier_from_json(const json& j);

json to_json(const TransferSamples& s);
TransferSamples transfer_from_json(const json& j);

json to_json(const SpectralData& d);
SpectralData spectral_from_json(const json& j);

json to_json(const TailModel& t);
TailModel tail_from_json(const json& j);

json to_json(const RomMatrix& r);
RomMatrix rom_matrix_from_json(const json& j);

json to_json(const RomCoefficients& c);
RomCoefficients rom_coefficients_from_json(const json& j);

json to_json(const StaggeredGrid& g);
StaggeredGrid grid_from_json(const json& j);

json to_json(const InversionResult& r);
InversionResult inversion_from_json(const json& j);

// ============================================================================
// Files
// ============================================================================

void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

// One named column of a CSV table; all columns must share a length.
struct CsvColumn {
    std::string name;
    std::vector<double> data;
};

// Writes "# produced-by=lossyrom stage=<stage> config=<hash>", a column
// name row, then the data with 17 significant digits ('.' decimal point,
// locale-independent).
void write_csv(const std::filesystem::path& path, const std::string& stage,
               const std::string& config_hash,
               const std::vector<CsvColumn>& columns);

// Formats a double with 17 significant digits, round-trip exact.
std::string format_double(double v);

// FNV-1a hash of a string, rendered as 16 hex digits (config fingerprint).
std::string fnv1a_hex(const std::string& text);

}  // namespace lossyrom::io
