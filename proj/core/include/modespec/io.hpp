#pragma once

#include <filesystem>
#include <string>

#include "modespec/beams.hpp"
#include "modespec/interferometer.hpp"
#include "modespec/modes.hpp"
#include "modespec/optical_train.hpp"
#include "modespec/reconstruction.hpp"

namespace modespec {
namespace io {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

// Mode coefficients: header nx,ny,re,im; rows in canonical (order, nx) order.
void write_spectrum_csv(const std::filesystem::path& path, const ModeSpectrum& s);
ModeSpectrum read_spectrum_csv(const std::filesystem::path& path,
                               const PhysicalFrame& frame);

// Weights: header nx,ny,weight; entries below -1e-6 are rejected as broken
// input, ones in [-1e-6, 0) clamped on read.
void write_weights_csv(const std::filesystem::path& path, const WeightSpectrum& w);
WeightSpectrum read_weights_csv(const std::filesystem::path& path);

// Binary field container: 64-byte header (magic "MSPC", version, samples_x,
// samples_y as 8-byte little-endian integers, then half_window, w0,
// lambdabar as 8-byte floats, zero padding), followed by row-major
// interleaved re/im doubles, x varying fastest within a row of constant y.
void write_field(const std::filesystem::path& path, const ComplexField& f);
ComplexField read_field(const std::filesystem::path& path);
bool is_field_container(const std::filesystem::path& path);

// Plain-text sampled field: header x,y,re,im; the grid is inferred and must
// be complete, uniform, and centered.
ComplexField read_field_csv(const std::filesystem::path& path,
                            const PhysicalFrame& frame);

// Element list: header kind,param1,param2,angle,offset_x,offset_y,position.
// param1 = radius or distance, param2 = refractive index, position is the
// cumulative axial position in units of z0 ("inf" marks a flat lens).
void write_train_csv(const std::filesystem::path& path, const OpticalTrain& t,
                     const PhysicalFrame& frame);

// Scan table: comment lines "# compensator=", "# engine=", "# K_plus=",
// "# K_minus=", then header phi_plus,phi_minus,delta_i, rows phi_plus-major.
void write_scan_csv(const std::filesystem::path& path, const IntensityScan& s);
IntensityScan read_scan_csv(const std::filesystem::path& path);

// key=value beam recipe (type=astigmatic|necklace|multiring|coefficients|field).
BeamRecipe read_recipe(const std::filesystem::path& path);

void write_report_json(const std::filesystem::path& path,
                       const ReconstructionReport& r);

// Gnuplot-style whitespace table mirroring a CSV (comments preserved).
void write_csv_as_table(const std::filesystem::path& csv,
                        const std::filesystem::path& table);

}  // namespace io
}  // namespace modespec
