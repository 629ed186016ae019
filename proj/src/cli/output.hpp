#pragma once

#include <string>
#include <utility>
#include <vector>

#include "onebit/sim.hpp"

namespace onebit::cli {

inline constexpr const char* kCsvSchemaVersion = "1";

/// `precoder,snr_db,bits_sent,bit_errors,ber,mean_solve_seconds`
void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records);

/// `precoder,k,bits_sent,bit_errors,ber,mean_solve_seconds`
void write_user_csv(const std::string& path,
                    const std::vector<std::pair<std::size_t, BerRecord>>& rows);

/// `precoder,k,nt,mean_solve_seconds,iters_mean`
void write_time_csv(const std::string& path, const std::vector<BenchRecord>& records);

/// Flat key=value manifest adjacent to the data files it references.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

/// Standalone SVG: BER (log scale) versus SNR, one polyline per precoder.
/// Zero-BER points are drawn on the bottom edge.
void write_ber_svg(const std::string& path, const std::vector<BerRecord>& records);

std::string format_double(double value);

}  // namespace onebit::cli
